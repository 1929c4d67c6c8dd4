#include "cskpoly/series.hpp"

#include "cskpoly/errors.hpp"

#include <algorithm>

namespace cskpoly {

RationalSeries::RationalSeries(std::vector<Rational> coeffs, std::size_t order)
    : coeffs_(std::move(coeffs)), order_(order) {
    coeffs_.resize(order_ + 1, Rational(0));
}

RationalSeries RationalSeries::zero(std::size_t order) {
    return RationalSeries(std::vector<Rational>(order + 1, Rational(0)), order);
}

void RationalSeries::set_coeff(std::size_t k, Rational v) {
    if (k <= order_) coeffs_[k] = std::move(v);
}

RationalSeries RationalSeries::operator+(const RationalSeries& rhs) const {
    const std::size_t n = std::min(order_, rhs.order_);
    RationalSeries out = zero(n);
    for (std::size_t k = 0; k <= n; ++k) out.coeffs_[k] = coeff(k) + rhs.coeff(k);
    return out;
}

RationalSeries RationalSeries::operator-(const RationalSeries& rhs) const {
    const std::size_t n = std::min(order_, rhs.order_);
    RationalSeries out = zero(n);
    for (std::size_t k = 0; k <= n; ++k) out.coeffs_[k] = coeff(k) - rhs.coeff(k);
    return out;
}

RationalSeries RationalSeries::operator*(const RationalSeries& rhs) const {
    const std::size_t n = std::min(order_, rhs.order_);
    RationalSeries out = zero(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j)
            out.coeffs_[i + j] += coeffs_[i] * rhs.coeff(j);
    }
    return out;
}

RationalSeries RationalSeries::inverse() const {
    if (coeff(0) == 0)
        throw DegenerateDenominator("series inverse requires a unit constant term");
    RationalSeries out = zero(order_);
    const Rational c0 = coeff(0);
    out.coeffs_[0] = 1 / c0;
    for (std::size_t k = 1; k <= order_; ++k) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= k; ++j) acc += coeff(j) * out.coeffs_[k - j];
        out.coeffs_[k] = -acc / c0;
    }
    return out;
}

RationalSeries RationalSeries::operator/(const RationalSeries& rhs) const {
    return *this * rhs.inverse();
}

RationalSeries RationalSeries::compose(const RationalSeries& inner) const {
    if (inner.coeff(0) != 0)
        throw Error("SeriesCompose", "inner series must have zero constant term");
    const std::size_t n = std::min(order_, inner.order_);
    RationalSeries out = zero(n);
    out.coeffs_[0] = coeff(0);
    RationalSeries power = zero(n);
    power.coeffs_[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        power = power * inner;
        if (coeff(i) == 0) continue;
        for (std::size_t k = 0; k <= n; ++k) out.coeffs_[k] += coeff(i) * power.coeff(k);
    }
    return out;
}

RationalSeries RationalSeries::revert() const {
    if (coeff(0) != 0 || coeff(1) == 0)
        throw Error("SeriesRevert", "reversion requires f(0)=0 and f'(0)!=0");
    // Solve coefficient-by-coefficient: the k-th coefficient of f(g) is
    // linear in g_k with slope f_1.
    RationalSeries g = zero(order_);
    const Rational f1 = coeff(1);
    g.coeffs_[1] = 1 / f1;
    for (std::size_t k = 2; k <= order_; ++k) {
        RationalSeries trial = compose(g); // g_k..g_order still zero
        g.coeffs_[k] = -trial.coeff(k) / f1;
    }
    return g;
}

std::vector<Polynomial> bivariate_series_divide(const std::vector<Polynomial>& num,
                                                const std::vector<Polynomial>& den,
                                                std::size_t order) {
    if (den.empty() || den[0].degree() != 0)
        throw DegenerateDenominator("bivariate division needs a nonzero constant den[0]");
    const Rational d0 = den[0].coeff(0);
    std::vector<Polynomial> out(order + 1);
    auto num_at = [&](std::size_t k) { return k < num.size() ? num[k] : Polynomial(); };
    auto den_at = [&](std::size_t k) { return k < den.size() ? den[k] : Polynomial(); };
    for (std::size_t n = 0; n <= order; ++n) {
        Polynomial acc = num_at(n);
        for (std::size_t j = 1; j <= n; ++j) acc -= den_at(j) * out[n - j];
        out[n] = acc / d0;
    }
    return out;
}

} // namespace cskpoly
