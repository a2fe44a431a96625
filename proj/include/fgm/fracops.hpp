#pragma once

// Fractional-order accumulation (AGO) and reduction (IAGO) operators.
//
// Weights come from the multiplicative recurrences
//   c_0 = 1, c_j = c_{j-1} (r + j - 1) / j          (accumulation)
//   d_0 = 1, d_i = -d_{i-1} (r - i + 1) / i         (reduction)
// which equal the Gamma-ratio forms Γ(r+j)/(Γ(j+1)Γ(r)) and
// (-1)^i Γ(r+1)/(Γ(i+1)Γ(r-i+1)) without ever forming large Gamma values.
// The reduction sum includes the i = 0 term, so reduce(accumulate(x)) == x.

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "fgm/errors.hpp"

namespace fgm {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Fractional order r of the accumulation operator, validated to 0 < r <= 2.
class FracOrder {
public:
    static constexpr double kMax = 2.0;

    explicit FracOrder(double r) : r_(r)
    {
        if (!std::isfinite(r) || r <= 0.0 || r > kMax) {
            throw PreconditionError("fractional order must satisfy 0 < r <= 2, got " +
                                    std::to_string(r));
        }
    }

    [[nodiscard]] double value() const noexcept { return r_; }
    friend bool operator==(FracOrder, FracOrder) = default;

private:
    double r_;
};

namespace detail {
inline void require_nonempty(Eigen::Index n, const char* what)
{
    if (n < 1) {
        throw DataError(std::string(what) + ": empty input");
    }
}
} // namespace detail

/// Accumulation weights c_0..c_{n-1}.
template <typename Scalar = double>
Vector<Scalar> ago_coeffs(FracOrder order, Eigen::Index n)
{
    detail::require_nonempty(n, "ago_coeffs");
    const Scalar r = static_cast<Scalar>(order.value());
    Vector<Scalar> c(n);
    c(0) = Scalar(1);
    for (Eigen::Index j = 1; j < n; ++j) {
        c(j) = c(j - 1) * (r + Scalar(j - 1)) / Scalar(j);
    }
    return c;
}

/// Reduction weights d_0..d_{n-1}. At integer r the tail is exactly zero.
template <typename Scalar = double>
Vector<Scalar> iago_coeffs(FracOrder order, Eigen::Index n)
{
    detail::require_nonempty(n, "iago_coeffs");
    const Scalar r = static_cast<Scalar>(order.value());
    Vector<Scalar> d(n);
    d(0) = Scalar(1);
    for (Eigen::Index i = 1; i < n; ++i) {
        d(i) = -d(i - 1) * (r - Scalar(i - 1)) / Scalar(i);
    }
    return d;
}

/// Lower-triangular Toeplitz product: out(k) = sum_{i<=k} w(k-i) x(i).
template <typename DerivedW, typename DerivedX>
Vector<typename DerivedX::Scalar> causal_convolve(const Eigen::MatrixBase<DerivedW>& w,
                                                  const Eigen::MatrixBase<DerivedX>& x)
{
    using Scalar = typename DerivedX::Scalar;
    const Eigen::Index n = x.size();
    Vector<Scalar> out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Scalar acc(0);
        for (Eigen::Index i = 0; i <= k; ++i) {
            acc += w(k - i) * x(i);
        }
        out(k) = acc;
    }
    return out;
}

/// r-order accumulated sequence; element 0 is always x(0).
template <typename Derived>
Vector<typename Derived::Scalar> frac_accumulate(const Eigen::MatrixBase<Derived>& x,
                                                 FracOrder order)
{
    using Scalar = typename Derived::Scalar;
    detail::require_nonempty(x.size(), "frac_accumulate");
    if (!x.allFinite()) {
        throw DataError("frac_accumulate: non-finite input");
    }
    return causal_convolve(ago_coeffs<Scalar>(order, x.size()), x);
}

/// Inverse of frac_accumulate.
template <typename Derived>
Vector<typename Derived::Scalar> frac_reduce(const Eigen::MatrixBase<Derived>& accumulated,
                                             FracOrder order)
{
    using Scalar = typename Derived::Scalar;
    detail::require_nonempty(accumulated.size(), "frac_reduce");
    return causal_convolve(iago_coeffs<Scalar>(order, accumulated.size()), accumulated);
}

/// Background values z(k) = (X(k) + X(k-1)) / 2, length n - 1.
template <typename Derived>
Vector<typename Derived::Scalar> mean_sequence(const Eigen::MatrixBase<Derived>& accumulated)
{
    const Eigen::Index n = accumulated.size();
    if (n < 2) {
        throw DataError("mean_sequence: need at least 2 points");
    }
    return (accumulated.tail(n - 1) + accumulated.head(n - 1)) / typename Derived::Scalar(2);
}

} // namespace fgm
