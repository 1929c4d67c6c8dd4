#include "cskpoly/polynomials.hpp"

#include "cskpoly/errors.hpp"
#include "cskpoly/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cskpoly {

namespace {

std::optional<std::size_t> quadratic_termination(const VarianceSpec& spec) {
    if (spec.a2 == -1) return 2; // beta_n = a0(1+a2) = 0 from n = 2 on
    return std::nullopt;
}

} // namespace

PolySequence assoc_from_recurrence(const VarianceSpec& spec, std::size_t n_max) {
    PolySequence out{PolyKind::AssocP, {}, quadratic_termination(spec), spec};
    const std::size_t last = out.terminated_at ? std::min(n_max, *out.terminated_at) : n_max;
    if (out.terminated_at && n_max < *out.terminated_at) out.terminated_at.reset();

    out.rows.reserve(last + 1);
    out.rows.push_back(Polynomial(Rational(1)));
    if (last >= 1) out.rows.push_back(Polynomial::x() / spec.a0);
    if (last >= 2) {
        // x P_1 = a1 P_1 + a0 P_2 + P_0
        const Polynomial p2 =
            (out.rows[1].shifted(1) - spec.a1 * out.rows[1] - out.rows[0]) / spec.a0;
        out.rows.push_back(p2);
    }
    for (std::size_t n = 2; n < last; ++n) {
        // x P_n = (1 + a2) P_{n-1} + a1 P_n + a0 P_{n+1}
        Polynomial next = (out.rows[n].shifted(1) - spec.a1 * out.rows[n] -
                           (1 + spec.a2) * out.rows[n - 1]) /
                          spec.a0;
        out.rows.push_back(std::move(next));
    }
    return out;
}

PolySequence assoc_from_variance_series(const RationalSeries& v, std::size_t n_max) {
    if (v.coeff(0) <= 0)
        throw InvalidVariance("pseudo-variance series must have a positive constant term");
    if (v.order() < n_max)
        throw Error("InvalidArgument", "variance series truncated below the requested degree");

    // f(x, m) = V(m) / (V(m) + m(m - x)), expanded as a series in m with
    // polynomial coefficients; P_n is the coefficient of m^n.
    std::vector<Polynomial> num(n_max + 1), den(n_max + 1);
    for (std::size_t k = 0; k <= n_max; ++k) {
        num[k] = Polynomial(v.coeff(k));
        den[k] = num[k];
    }
    if (n_max >= 1) den[1] -= Polynomial::x();
    if (n_max >= 2) den[2] += Polynomial(Rational(1));

    PolySequence out{PolyKind::AssocP, bivariate_series_divide(num, den, n_max), std::nullopt,
                     std::nullopt};
    return out;
}

PolySequence assoc_from_density(const VarianceSpec& spec, std::size_t n_max) {
    const auto term = quadratic_termination(spec);
    const std::size_t last = term ? std::min(n_max, *term) : n_max;

    RationalSeries v = RationalSeries::zero(std::max<std::size_t>(last, 2));
    v.set_coeff(0, spec.a0);
    v.set_coeff(1, spec.a1);
    v.set_coeff(2, spec.a2);

    PolySequence out = assoc_from_variance_series(v, last);
    out.spec = spec;
    if (term && n_max >= *term) out.terminated_at = term;
    return out;
}

PolySequence monic_sequence(const JacobiParams& j, std::size_t n_max) {
    const auto term = j.terminates_at();
    const std::size_t last = term ? std::min(n_max, *term) : n_max;

    PolySequence out{PolyKind::MonicT, {}, std::nullopt, std::nullopt};
    if (term && n_max >= *term) out.terminated_at = term;

    out.rows.reserve(last + 1);
    out.rows.push_back(Polynomial(Rational(1)));
    if (last >= 1) out.rows.push_back(Polynomial::x() - Polynomial(j.alpha(0)));
    for (std::size_t n = 1; n < last; ++n) {
        Polynomial next = out.rows[n].shifted(1) - j.alpha(n) * out.rows[n] -
                          j.beta(n) * out.rows[n - 1];
        out.rows.push_back(std::move(next));
    }
    return out;
}

double generating_partial_sum(const PolySequence& p, double x, double m, std::size_t n_max) {
    const std::size_t last = std::min(n_max, p.count() == 0 ? 0 : p.count() - 1);
    double acc = 0.0;
    for (std::size_t n = last + 1; n-- > 0;) acc = acc * m + p.rows[n].eval(x);
    return acc;
}

double radius_guard(const VarianceSpec& spec) {
    const double a0 = to_double(spec.a0);
    const double a1 = to_double(spec.a1);
    const double a2 = std::max(to_double(spec.a2), 0.0);
    return 1.0 / (2.0 * (std::abs(a1) + 2.0 * std::sqrt(a0 * (1.0 + a2)) + 1.0));
}

Rational assoc_square_norm(const VarianceSpec& spec, std::size_t n) {
    if (n == 0) return Rational(1);
    return rational_pow(1 + spec.a2, static_cast<unsigned long>(n - 1)) /
           rational_pow(spec.a0, static_cast<unsigned long>(n));
}

double g_kernel_series(const VarianceSpec& spec, double m, double mt, std::size_t n_max) {
    const double u = m * mt;
    double acc = 0.0;
    for (std::size_t n = n_max + 1; n-- > 0;)
        acc = acc * u + to_double(assoc_square_norm(spec, n));
    return acc;
}

double g_kernel(const VarianceSpec& spec, double m, double mt) {
    const MeansDomain d = domain_of_means(jacobi_from_quadratic(spec));
    if (!(m > d.m_minus && m < d.m_plus) || !(mt > d.m_minus && mt < d.m_plus))
        throw OutOfDomain("g-kernel arguments must lie in the open domain of means");

    const double num = mt * spec(m) - m * spec(mt);
    const double den = mt * m * m - m * mt * mt + num;
    if (den == 0.0) {
        if (num == 0.0) return g_kernel_series(spec, m, mt, 200); // removable (m = mt)
        throw DegenerateDenominator("g-kernel denominator vanishes at (m, mt) = (" +
                                    std::to_string(m) + ", " + std::to_string(mt) + ")");
    }
    return num / den;
}

} // namespace cskpoly
