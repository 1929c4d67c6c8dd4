#include "cskpoly/transforms.hpp"

#include "cskpoly/errors.hpp"
#include "cskpoly/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cskpoly {

namespace {

// Nevanlinna branch of the constant-tail continued fraction: the root of
// beta_t W^2 - (z - alpha_t) W + 1 = 0 with W ~ 1/z at infinity. Written as
// 2/(q + s) rather than (q - s)/(2 beta_t): with s aligned to q the sum is
// large, so the decaying root never cancels.
Complex tail_root(Complex z, double alpha_t, double beta_t) {
    const Complex q = z - alpha_t;
    Complex s = std::sqrt(q * q - 4.0 * beta_t);
    if (q.real() * s.real() + q.imag() * s.imag() < 0.0) s = -s;
    return 2.0 / (q + s);
}

double tail_root_real(double x, double alpha_t, double beta_t) {
    const double q = x - alpha_t;
    const double disc = q * q - 4.0 * beta_t;
    // Callers keep x outside the open a.c. interval; clamp edge roundoff.
    const double s = std::copysign(std::sqrt(std::max(disc, 0.0)), q);
    return 2.0 / (q + s);
}

// G as a ratio num/den, folded from the tail without intermediate
// divisions so atoms show up as zeros of den.
template <typename Scalar, typename TailFn>
std::pair<Scalar, Scalar> fold_fraction(const JacobiParams& j, Scalar z, TailFn tail) {
    Scalar num, den;
    std::size_t level;
    if (j.terminates_at()) {
        // Finite fraction: W_{t-1} = 1/(z - alpha_{t-1}).
        level = *j.terminates_at() - 1;
        num = Scalar(1.0);
        den = z - Scalar(to_double(j.alpha(level)));
    } else {
        level = j.fold_depth();
        num = tail(z);
        den = Scalar(1.0);
    }
    while (level > 0) {
        --level;
        const Scalar prev_num = num;
        num = den;
        den = (z - Scalar(to_double(j.alpha(level)))) * den -
              Scalar(to_double(j.beta(level + 1))) * prev_num;
    }
    return {num, den};
}

std::pair<Complex, Complex> fold_complex(const JacobiParams& j, Complex z) {
    const double at = to_double(j.alpha_tail());
    const double bt = to_double(j.beta_tail());
    return fold_fraction<Complex>(j, z, [&](Complex w) { return tail_root(w, at, bt); });
}

std::pair<double, double> fold_real(const JacobiParams& j, double x) {
    const double at = to_double(j.alpha_tail());
    const double bt = to_double(j.beta_tail());
    return fold_fraction<double>(j, x, [&](double w) { return tail_root_real(w, at, bt); });
}

// Real-axis evaluation outside the a.c. support; empty when G diverges.
std::optional<double> real_g(const JacobiParams& j, double x) {
    const auto [num, den] = fold_real(j, x);
    if (std::abs(den) <= 1e-13 * std::max(1.0, std::abs(num))) return std::nullopt;
    return num / den;
}

// Series w~ with W = u w~(u), u = 1/z, for a constant (alpha, beta) tail:
// w~ = 1 + alpha u w~ + beta u^2 w~^2.
RationalSeries tail_series(const Rational& alpha, const Rational& beta, std::size_t order) {
    RationalSeries w = RationalSeries::zero(order);
    w.set_coeff(0, Rational(1));
    for (std::size_t k = 1; k <= order; ++k) {
        Rational acc = alpha * w.coeff(k - 1);
        if (beta != 0 && k >= 2) {
            Rational conv = 0;
            for (std::size_t i = 0; i + 2 <= k; ++i) conv += w.coeff(i) * w.coeff(k - 2 - i);
            acc += beta * conv;
        }
        w.set_coeff(k, acc);
    }
    return w;
}

double theta_edge_pos(double B) {
    return B > 0 ? 1.0 / B : std::numeric_limits<double>::infinity();
}

double theta_edge_neg(double A) {
    return A < 0 ? 1.0 / A : -std::numeric_limits<double>::infinity();
}

} // namespace

Complex cauchy_transform(const JacobiParams& j, Complex z) {
    const auto [num, den] = fold_complex(j, z);
    if (std::abs(den) <= 1e-12 * std::max(1.0, std::abs(num)))
        throw PoleHit(z.real(), "Cauchy transform pole (atom) near z = " + std::to_string(z.real()));
    return num / den;
}

std::vector<Rational> cauchy_laurent_moments(const JacobiParams& j, std::size_t upto) {
    // Work in u = 1/z with W_k = u w~_k(u); fold the head through exact
    // series inverses: w~_k = 1 / (1 - alpha_k u - beta_{k+1} u^2 w~_{k+1}).
    std::size_t level;
    RationalSeries w = RationalSeries::zero(upto);
    if (j.terminates_at()) {
        level = *j.terminates_at() - 1;
        w = tail_series(j.alpha(level), Rational(0), upto);
    } else {
        level = j.fold_depth();
        w = tail_series(j.alpha_tail(), j.beta_tail(), upto);
    }
    while (level > 0) {
        --level;
        RationalSeries den = RationalSeries::zero(upto);
        den.set_coeff(0, Rational(1));
        den.set_coeff(1, den.coeff(1) - j.alpha(level));
        const Rational b = j.beta(level + 1);
        RationalSeries shifted = RationalSeries::zero(upto);
        for (std::size_t k = 2; k <= upto; ++k) shifted.set_coeff(k, -b * w.coeff(k - 2));
        den = den + shifted;
        w = den.inverse();
    }
    return std::vector<Rational>(w.coeffs().begin(), w.coeffs().end());
}

std::vector<Atom> locate_atoms(const JacobiParams& j, double ac_lo, double ac_hi) {
    std::vector<Atom> atoms;

    // Gershgorin-style hull of the Jacobi operator spectrum, padded.
    double alpha_min = to_double(j.alpha_tail());
    double alpha_max = alpha_min;
    double beta_max = to_double(j.beta_tail());
    for (const auto& a : j.alpha_head()) {
        alpha_min = std::min(alpha_min, to_double(a));
        alpha_max = std::max(alpha_max, to_double(a));
    }
    for (const auto& b : j.beta_head()) beta_max = std::max(beta_max, to_double(b));
    const double radius = 2.0 * std::sqrt(beta_max);
    const double lo_bound = alpha_min - radius - 1.0;
    const double hi_bound = alpha_max + radius + 1.0;

    const auto den_at = [&](double x) { return fold_real(j, x).second; };

    auto scan = [&](double from, double to) {
        if (!(from < to)) return;
        const int cells = 4000;
        const double h = (to - from) / cells;
        double x_prev = from;
        double d_prev = den_at(x_prev);
        for (int i = 1; i <= cells; ++i) {
            const double x = from + i * h;
            const double d = den_at(x);
            if (d_prev == 0.0 || (d_prev < 0.0) != (d < 0.0)) {
                double a = x_prev, b = x, da = d_prev;
                for (int it = 0; it < 200 && b - a > 0.0; ++it) {
                    const double mid = 0.5 * (a + b);
                    if (mid == a || mid == b) break;
                    const double dm = den_at(mid);
                    if (dm == 0.0) { a = b = mid; break; }
                    if ((dm < 0.0) == (da < 0.0)) { a = mid; da = dm; } else { b = mid; }
                }
                const double root = 0.5 * (a + b);
                const double num = fold_real(j, root).first;
                const double step = 1e-7 * (1.0 + std::abs(root));
                const double dden = (den_at(root + step) - den_at(root - step)) / (2.0 * step);
                if (std::abs(num) > 1e-9 && std::abs(dden) > 0.0) {
                    const double weight = num / dden;
                    if (weight > 1e-12 && weight <= 1.0 + 1e-9)
                        atoms.push_back({root, weight});
                }
            }
            x_prev = x;
            d_prev = d;
        }
    };

    // Stay strictly off the closed a.c. interval; the denominator may reach
    // zero at an edge without a point mass beyond it.
    const double margin = 1e-9 * (1.0 + std::abs(ac_hi - ac_lo));
    scan(lo_bound, ac_lo - margin);
    scan(ac_hi + margin, hi_bound);
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    return atoms;
}

MeansDomain domain_of_means(const JacobiParams& j) {
    const SupportInfo info = validate_measure(j, 6);
    const double A = std::min(0.0, info.lo);
    const double B = std::max(0.0, info.hi);
    if (!(A < 0.0) || !(B > 0.0))
        throw OutOfDomain("support does not straddle 0; not a mean-zero family");

    MeansDomain d{};
    d.A = A;
    d.B = B;
    const auto gb = real_g(j, B);
    d.m_plus = gb ? B - 1.0 / *gb : B;
    const auto ga = real_g(j, A);
    d.m_minus = ga ? A - 1.0 / *ga : A;
    d.theta_plus = theta_edge_pos(B);
    d.theta_minus = theta_edge_neg(A);
    if (!(d.m_minus < 0.0 && 0.0 < d.m_plus))
        throw OutOfDomain("degenerate domain of means");
    return d;
}

double m_transform(const JacobiParams& j, double theta) {
    if (theta == 0.0) return 1.0;
    const MeansDomain d = domain_of_means(j);
    if (theta < d.theta_minus || theta > d.theta_plus)
        throw OutOfDomain("theta = " + std::to_string(theta) + " outside [" +
                          std::to_string(d.theta_minus) + ", " + std::to_string(d.theta_plus) + "]");
    const auto g = real_g(j, 1.0 / theta);
    if (!g) throw PoleHit(1.0 / theta, "M-transform hit an atom at 1/theta");
    return *g / theta;
}

double mean_map(const JacobiParams& j, double theta) {
    if (theta == 0.0) return 0.0;
    const MeansDomain d = domain_of_means(j);
    if (theta < d.theta_minus || theta > d.theta_plus)
        throw OutOfDomain("theta = " + std::to_string(theta) + " outside [" +
                          std::to_string(d.theta_minus) + ", " + std::to_string(d.theta_plus) + "]");
    const double z = 1.0 / theta;
    const auto g = real_g(j, z);
    if (!g) return z; // G diverges: k(theta) -> 1/theta
    return z - 1.0 / *g;
}

double invert_mean_map(const JacobiParams& j, double m) {
    const MeansDomain d = domain_of_means(j);
    if (m == 0.0) return 0.0;
    if (m < d.m_minus || m > d.m_plus)
        throw OutOfDomain("mean " + std::to_string(m) + " outside the domain of means");

    double lo, hi; // k is strictly increasing with k(0) = 0
    if (m > 0.0) {
        lo = 0.0;
        hi = d.theta_plus;
    } else {
        lo = d.theta_minus;
        hi = 0.0;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double k = mean_map(j, mid);
        if (k < m) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double psi(const VarianceSpec& spec, double m) {
    const MeansDomain d = domain_of_means(jacobi_from_quadratic(spec));
    if (m < d.m_minus || m > d.m_plus)
        throw OutOfDomain("mean " + std::to_string(m) + " outside [" + std::to_string(d.m_minus) +
                          ", " + std::to_string(d.m_plus) + "]");
    if (m == 0.0) return 0.0;
    const double den = m * m + spec(m);
    if (den == 0.0)
        throw OutOfDomain("m^2 + V(m) vanishes at m = " + std::to_string(m));
    return m / den;
}

double pseudo_variance(const VarianceSpec& spec, double m) {
    const MeansDomain d = domain_of_means(jacobi_from_quadratic(spec));
    if (m < d.m_minus || m > d.m_plus)
        throw OutOfDomain("mean " + std::to_string(m) + " outside the domain of means");
    const double v = spec(m);
    if (m != 0.0) {
        // Cross-check against the defining identity m (1/psi - m).
        const double p = m / (m * m + v);
        const double v2 = m * (1.0 / p - m);
        if (std::abs(v2 - v) > 1e-9 * std::max(1.0, std::abs(v)))
            throw Error("InternalCheck", "pseudo-variance identity violated");
    }
    return v;
}

double variance(const VarianceSpec& spec, double m) {
    return pseudo_variance(spec, m); // m_0 = 0 throughout
}

double qm_density(const VarianceSpec& spec, double m, double x) {
    const MeansDomain d = domain_of_means(jacobi_from_quadratic(spec));
    if (!(m > d.m_minus && m < d.m_plus))
        throw OutOfDomain("mean " + std::to_string(m) + " outside the open domain of means");
    const double v = spec(m);
    return v / (v + m * (m - x));
}

Complex qm_cauchy_transform(const JacobiParams& j, const VarianceSpec& spec, double m, Complex z) {
    if (m == 0.0) return cauchy_transform(j, z);
    const MeansDomain d = domain_of_means(j);
    if (!(m > d.m_minus && m < d.m_plus))
        throw OutOfDomain("mean " + std::to_string(m) + " outside the open domain of means");
    const double v = spec(m);
    const double z0 = m + v / m;
    if (std::abs(z - Complex(z0)) <= 1e-12 * (1.0 + std::abs(z0)))
        throw ExcludedPoint("z coincides with m + V(m)/m = " + std::to_string(z0));
    const Complex g = cauchy_transform(j, z);
    return ((v / m) * g - 1.0) / (z0 - z);
}

double stieltjes_density(const JacobiParams& j, double x, double epsilon) {
    if (!(epsilon > 0.0)) throw Error("InvalidArgument", "epsilon must be positive");
    const auto density = [&](double e) {
        return -cauchy_transform(j, Complex(x, e)).imag() / std::numbers::pi;
    };
    // The boundary bias is first order in epsilon; one Richardson step.
    return 2.0 * density(epsilon / 2.0) - density(epsilon);
}

} // namespace cskpoly
