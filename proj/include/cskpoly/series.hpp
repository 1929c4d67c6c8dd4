#pragma once

#include "cskpoly/polynomial.hpp"
#include "cskpoly/rational.hpp"

#include <cstddef>
#include <vector>

namespace cskpoly {

/// Truncated formal power series over exact rationals. All instances carry
/// their truncation order; binary operations truncate to the shorter order.
class RationalSeries {
public:
    RationalSeries() = default;
    RationalSeries(std::vector<Rational> coeffs, std::size_t order);
    static RationalSeries zero(std::size_t order);

    std::size_t order() const { return order_; }
    Rational coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    void set_coeff(std::size_t k, Rational v);

    RationalSeries operator+(const RationalSeries& rhs) const;
    RationalSeries operator-(const RationalSeries& rhs) const;
    RationalSeries operator*(const RationalSeries& rhs) const;

    // Multiplicative inverse; requires a nonzero constant term.
    RationalSeries inverse() const;
    RationalSeries operator/(const RationalSeries& rhs) const;

    // Substitute `inner` (constant term must vanish) into this series.
    RationalSeries compose(const RationalSeries& inner) const;

    // Compositional inverse g with g(f(t)) = t; requires coeff(0) = 0 and
    // coeff(1) != 0.
    RationalSeries revert() const;

private:
    std::vector<Rational> coeffs_;
    std::size_t order_ = 0;
};

/// Divide two series in m whose coefficients are polynomials in x; the
/// denominator's m^0 coefficient must be a nonzero constant. Returns the
/// quotient coefficients c_0..c_order, i.e. num/den = sum_n c_n(x) m^n.
std::vector<Polynomial> bivariate_series_divide(const std::vector<Polynomial>& num,
                                                const std::vector<Polynomial>& den,
                                                std::size_t order);

} // namespace cskpoly
