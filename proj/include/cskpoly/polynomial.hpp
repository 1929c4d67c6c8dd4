#pragma once

#include "cskpoly/rational.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace cskpoly {

/// Dense univariate polynomial over exact rationals.
/// coeff(k) is the coefficient of x^k; trailing zeros are trimmed so the
/// representation (and operator==) is canonical. The zero polynomial has
/// degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Rational constant);
    explicit Polynomial(std::vector<Rational> coeffs);

    static Polynomial x();

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    Rational coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& s);
    Polynomial& operator/=(const Rational& s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator/(Polynomial a, const Rational& s) { return a /= s; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

    bool operator==(const Polynomial&) const = default;

    // Multiplication by x^k.
    Polynomial shifted(std::size_t k) const;

    Rational eval(const Rational& x) const;
    double eval(double x) const;
    std::complex<double> eval(std::complex<double> x) const;

    // Human-readable form for witnesses, e.g. "x^2 - 3*x - 1".
    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

} // namespace cskpoly
