#pragma once

#include "cskpoly/measures.hpp"
#include "cskpoly/polynomial.hpp"
#include "cskpoly/series.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace cskpoly {

enum class PolyKind { AssocP, MonicT };

/// Rows 0..n of an associated (P_n) or monic orthogonal (T_n) sequence.
/// When the underlying measure terminates the rows stop at the termination
/// index and `terminated_at` marks it.
struct PolySequence {
    PolyKind kind;
    std::vector<Polynomial> rows;
    std::optional<std::size_t> terminated_at;
    std::optional<VarianceSpec> spec;

    std::size_t count() const { return rows.size(); }
    const Polynomial& operator[](std::size_t n) const { return rows[n]; }
};

// P_n from the constant-coefficient three-term recurrence with corrected
// low indices: x P_0 = a0 P_1, x P_1 = a1 P_1 + a0 P_2 + P_0, and
// x P_n = (1 + a2) P_{n-1} + a1 P_n + a0 P_{n+1} for n >= 2.
PolySequence assoc_from_recurrence(const VarianceSpec& spec, std::size_t n_max);

// P_n as the coefficient of m^n in the expansion of the Q_m density
// V(m) / (V(m) + m(m - x)) — the recurrence-independent construction.
PolySequence assoc_from_density(const VarianceSpec& spec, std::size_t n_max);

// Same construction driven by an arbitrary truncated pseudo-variance series
// (used for non-quadratic measures, e.g. the verification counterexample).
// v.coeff(0) must be positive.
PolySequence assoc_from_variance_series(const RationalSeries& v, std::size_t n_max);

// Monic orthogonal polynomials T_{n+1} = (x - alpha_n) T_n - beta_n T_{n-1}.
PolySequence monic_sequence(const JacobiParams& j, std::size_t n_max);

// Partial sum of the generating function, sum_{n<=N} m^n P_n(x).
double generating_partial_sum(const PolySequence& p, double x, double m, std::size_t n_max);

// Conservative radius within which the generating series is summed:
// 1 / (2 (|a1| + 2 sqrt(a0 (1 + max(a2, 0))) + 1)).
double radius_guard(const VarianceSpec& spec);

// g(m, mt) = (mt V(m) - m V(mt)) / (mt m^2 - m mt^2 + mt V(m) - m V(mt)),
// the Q_m/Q_mt overlap kernel; at the removable point m = mt the truncated
// series sum_{n} (m mt)^n \int P_n^2 d(nu) is used instead.
double g_kernel(const VarianceSpec& spec, double m, double mt);

// Truncated series form of the kernel, sum_{n<=N} (m mt)^n beta_n.
double g_kernel_series(const VarianceSpec& spec, double m, double mt, std::size_t n_max);

// beta_n = integral of P_n^2 d(nu) in closed form: (1+a2)^{n-1} / a0^n for
// n >= 1, and 1 for n = 0.
Rational assoc_square_norm(const VarianceSpec& spec, std::size_t n);

} // namespace cskpoly
