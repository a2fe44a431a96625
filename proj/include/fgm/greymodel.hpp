#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fgm/fracops.hpp"

namespace fgm {

/// Labelled, equally spaced, strictly positive observation sequence.
class Series {
public:
    /// Minimum length accepted by the estimators (two parameters plus scored points).
    static constexpr Eigen::Index kMinFitLength = 4;

    Series(std::vector<std::int64_t> labels, Eigen::VectorXd values);
    /// Labels default to 1..n.
    explicit Series(const Eigen::VectorXd& values);

    [[nodiscard]] const std::vector<std::int64_t>& labels() const noexcept { return labels_; }
    [[nodiscard]] const Eigen::VectorXd& values() const noexcept { return values_; }
    [[nodiscard]] Eigen::Index size() const noexcept { return values_.size(); }
    [[nodiscard]] double first() const { return values_(0); }
    [[nodiscard]] double max() const { return values_.maxCoeff(); }
    /// Spacing between consecutive labels (1 for a single-point series).
    [[nodiscard]] std::int64_t label_step() const noexcept;

    friend bool operator==(const Series& lhs, const Series& rhs)
    {
        return lhs.labels_ == rhs.labels_ && lhs.values_ == rhs.values_;
    }

private:
    std::vector<std::int64_t> labels_;
    Eigen::VectorXd values_;
};

/// Fractional order plus development coefficient a and grey input b.
struct GreyParams {
    static constexpr double kMinAbsA = 1e-12;

    FracOrder order;
    double a;
    double b;

    /// Throws NumericalError when a is too close to zero or anything is non-finite.
    void validate() const;
};

struct FitReport {
    GreyParams params;
    Eigen::VectorXd fitted;          ///< restored scale, fitted(0) == actual(0)
    Eigen::VectorXd residuals;       ///< actual - fitted
    double mape = 0.0;               ///< percent
    Eigen::VectorXd per_point_error; ///< percent, points 2..n
};

/// Linear least-squares form B [a b]^T = Y of the grey differential equation.
struct Design {
    Eigen::MatrixX2d B;
    Eigen::VectorXd Y;
};

template <typename Derived>
Design build_design(const Eigen::MatrixBase<Derived>& values, FracOrder order)
{
    const Eigen::Index n = values.size();
    if (n < 3) {
        throw DataError("build_design: need at least 3 observations");
    }
    const Eigen::VectorXd acc = frac_accumulate(values.template cast<double>(), order);
    Design d{Eigen::MatrixX2d(n - 1, 2), Eigen::VectorXd(n - 1)};
    d.B.col(0) = -mean_sequence(acc);
    d.B.col(1).setOnes();
    d.Y = acc.tail(n - 1) - acc.head(n - 1);
    return d;
}

inline Design build_design(const Series& series, FracOrder order)
{
    return build_design(series.values(), order);
}

/// Solves min ||B p - Y|| by column-pivoting QR; throws NumericalError if rank < 2.
Eigen::Vector2d lsm_solve(const Design& design);

GreyParams lsm_fit(const Series& series, FracOrder order);

/// (x1 - b/a) e^{-a k} + b/a, the accumulated-scale prediction k steps after the first point.
double time_response(const GreyParams& params, double x1, double k);

/// Restored-scale model output for points 1..length given the first observation.
Eigen::VectorXd restore(const GreyParams& params, double x1, Eigen::Index length);

FitReport fit_series(const Series& series, const GreyParams& params);

/// Restored-scale predictions for the `horizon` periods following the series.
Eigen::VectorXd forecast(const Series& series, const GreyParams& params, Eigen::Index horizon);

/// Mean absolute percentage error over points 2..n, in percent.
double mape(const Eigen::Ref<const Eigen::VectorXd>& actual,
            const Eigen::Ref<const Eigen::VectorXd>& fitted);

/// Evaluates the in-sample MAPE of (a, b) at a fixed order without building a FitReport.
/// Holds only immutable precomputed state; safe to share across threads.
class MapeEvaluator {
public:
    MapeEvaluator(const Series& series, FracOrder order);

    /// Throws NumericalError for degenerate a.
    [[nodiscard]] double operator()(double a, double b) const;

    [[nodiscard]] FracOrder order() const noexcept { return order_; }

private:
    FracOrder order_;
    Eigen::VectorXd inv_actual_;
    Eigen::VectorXd actual_;
    Eigen::VectorXd reduce_w_;
};

} // namespace fgm
