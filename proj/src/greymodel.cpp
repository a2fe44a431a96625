#include "fgm/greymodel.hpp"

#include <array>
#include <cmath>
#include <string>

namespace fgm {

Series::Series(std::vector<std::int64_t> labels, Eigen::VectorXd values)
    : labels_(std::move(labels)), values_(std::move(values))
{
    if (values_.size() == 0) {
        throw DataError("series is empty");
    }
    if (static_cast<Eigen::Index>(labels_.size()) != values_.size()) {
        throw DataError("series labels and values differ in length");
    }
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_(i)) || values_(i) <= 0.0) {
            throw DataError("series value at position " + std::to_string(i + 1) +
                            " must be positive and finite");
        }
    }
    if (labels_.size() >= 2) {
        const std::int64_t step = labels_[1] - labels_[0];
        if (step <= 0) {
            throw DataError("series labels must be strictly increasing");
        }
        for (std::size_t i = 2; i < labels_.size(); ++i) {
            if (labels_[i] - labels_[i - 1] != step) {
                throw DataError("series labels must be equally spaced and strictly increasing");
            }
        }
    }
}

namespace {
std::vector<std::int64_t> default_labels(Eigen::Index n)
{
    std::vector<std::int64_t> labels(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        labels[i] = static_cast<std::int64_t>(i) + 1;
    }
    return labels;
}
} // namespace

Series::Series(const Eigen::VectorXd& values) : Series(default_labels(values.size()), values) {}

std::int64_t Series::label_step() const noexcept
{
    return labels_.size() >= 2 ? labels_[1] - labels_[0] : 1;
}

void GreyParams::validate() const
{
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw NumericalError("grey parameters must be finite");
    }
    if (std::abs(a) < kMinAbsA) {
        throw NumericalError("development coefficient a is degenerate (|a| < 1e-12)");
    }
}

Eigen::Vector2d lsm_solve(const Design& design)
{
    Eigen::ColPivHouseholderQR<Eigen::MatrixX2d> qr(design.B);
    // Relative threshold: columns are [-z, 1], so scale by the largest |z|.
    qr.setThreshold(1e-12);
    if (qr.rank() < 2) {
        throw NumericalError("least-squares design is rank deficient");
    }
    Eigen::Vector2d p = qr.solve(design.Y);
    if (!p.allFinite()) {
        throw NumericalError("least-squares solution is not finite");
    }
    return p;
}

GreyParams lsm_fit(const Series& series, FracOrder order)
{
    if (series.size() < Series::kMinFitLength) {
        throw DataError("lsm_fit: need at least " + std::to_string(Series::kMinFitLength) +
                        " observations");
    }
    const Eigen::Vector2d p = lsm_solve(build_design(series, order));
    return GreyParams{order, p(0), p(1)};
}

double time_response(const GreyParams& params, double x1, double k)
{
    params.validate();
    if (k < 0.0) {
        throw PreconditionError("time_response: k must be non-negative");
    }
    if (k == 0.0) {
        return x1;
    }
    const double eq = params.b / params.a;
    return (x1 - eq) * std::exp(-params.a * k) + eq;
}

Eigen::VectorXd restore(const GreyParams& params, double x1, Eigen::Index length)
{
    if (length < 1) {
        throw PreconditionError("restore: length must be at least 1");
    }
    Eigen::VectorXd acc(length);
    for (Eigen::Index k = 0; k < length; ++k) {
        acc(k) = time_response(params, x1, static_cast<double>(k));
    }
    Eigen::VectorXd out = frac_reduce(acc, params.order);
    out(0) = x1;
    if (!out.allFinite()) {
        throw NumericalError("model output overflowed");
    }
    return out;
}

double mape(const Eigen::Ref<const Eigen::VectorXd>& actual,
            const Eigen::Ref<const Eigen::VectorXd>& fitted)
{
    const Eigen::Index n = actual.size();
    if (n != fitted.size()) {
        throw PreconditionError("mape: length mismatch");
    }
    if (n < 2) {
        throw PreconditionError("mape: need at least 2 points");
    }
    if ((actual.tail(n - 1).array() == 0.0).any()) {
        throw DataError("mape: zero actual value");
    }
    const auto rel = ((fitted.tail(n - 1) - actual.tail(n - 1)).array() / actual.tail(n - 1).array()).abs();
    return 100.0 * rel.sum() / static_cast<double>(n - 1);
}

FitReport fit_series(const Series& series, const GreyParams& params)
{
    if (series.size() < 2) {
        throw DataError("fit_series: need at least 2 observations");
    }
    const Eigen::VectorXd& actual = series.values();
    const Eigen::Index n = series.size();

    FitReport report{params, restore(params, series.first(), n), {}, 0.0, {}};
    report.residuals = actual - report.fitted;
    report.per_point_error =
        100.0 * (report.residuals.tail(n - 1).array() / actual.tail(n - 1).array()).abs().matrix();
    report.mape = report.per_point_error.mean();
    return report;
}

Eigen::VectorXd forecast(const Series& series, const GreyParams& params, Eigen::Index horizon)
{
    if (horizon < 1) {
        throw PreconditionError("forecast: horizon must be at least 1");
    }
    const Eigen::Index n = series.size();
    return restore(params, series.first(), n + horizon).tail(horizon);
}

MapeEvaluator::MapeEvaluator(const Series& series, FracOrder order)
    : order_(order), actual_(series.values())
{
    if (series.size() < 2) {
        throw DataError("objective: need at least 2 observations");
    }
    inv_actual_ = actual_.cwiseInverse();
    reduce_w_ = iago_coeffs(order, series.size());
}

double MapeEvaluator::operator()(double a, double b) const
{
    GreyParams{order_, a, b}.validate();
    const Eigen::Index n = actual_.size();
    constexpr Eigen::Index kInline = 32;
    std::array<double, kInline> inline_buf{};
    std::vector<double> heap_buf;
    double* acc = inline_buf.data();
    if (n > kInline) {
        heap_buf.resize(static_cast<std::size_t>(n));
        acc = heap_buf.data();
    }

    const double x1 = actual_(0);
    const double eq = b / a;
    // e^{-a k} by repeated multiplication; agrees with time_response to a few ulps per step.
    const double decay = std::exp(-a);
    double growth = 1.0;
    acc[0] = x1;
    for (Eigen::Index k = 1; k < n; ++k) {
        growth *= decay;
        acc[k] = (x1 - eq) * growth + eq;
    }
    double total = 0.0;
    for (Eigen::Index k = 1; k < n; ++k) {
        double restored = 0.0;
        for (Eigen::Index i = 0; i <= k; ++i) {
            restored += reduce_w_(i) * acc[k - i];
        }
        total += std::abs(restored - actual_(k)) * inv_actual_(k);
    }
    const double value = 100.0 * total / static_cast<double>(n - 1);
    if (!std::isfinite(value)) {
        throw NumericalError("model output overflowed");
    }
    return value;
}

} // namespace fgm
