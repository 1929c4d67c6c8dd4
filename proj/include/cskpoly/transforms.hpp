#pragma once

#include "cskpoly/measures.hpp"
#include "cskpoly/rational.hpp"

#include <complex>
#include <vector>

namespace cskpoly {

using Complex = std::complex<double>;

/// Two-sided domain of means together with the theta-domain and the support
/// hull endpoints A = min{0, inf supp}, B = max{0, sup supp}.
struct MeansDomain {
    double m_minus;
    double m_plus;
    double theta_minus;
    double theta_plus;
    double A;
    double B;
};

// G(z) = integral of 1/(z - x) d(nu), evaluated by folding the continued
// fraction with the constant tail solved in closed form on the Nevanlinna
// branch (W ~ 1/z at infinity). Throws PoleHit at atoms.
Complex cauchy_transform(const JacobiParams& j, Complex z);

// Coefficients gamma_0..gamma_upto of the Laurent expansion
// G(z) = sum gamma_n z^{-(n+1)}, computed by exact series algebra on the
// continued fraction. Independent route to the moments.
std::vector<Rational> cauchy_laurent_moments(const JacobiParams& j, std::size_t upto);

// Poles of G on the real line outside the closed a.c. support interval,
// with their residues (masses).
std::vector<Atom> locate_atoms(const JacobiParams& j, double ac_lo, double ac_hi);

MeansDomain domain_of_means(const JacobiParams& j);

// M(theta) = integral of 1/(1 - theta x) d(nu) = G(1/theta)/theta.
double m_transform(const JacobiParams& j, double theta);

// Mean of the tilted measure, k(theta) = 1/theta - 1/G(1/theta); strictly
// increasing on (theta_minus, theta_plus), k(0) = 0.
double mean_map(const JacobiParams& j, double theta);

// Bracketed-bisection inverse of mean_map; retained as the cross-check
// oracle for psi.
double invert_mean_map(const JacobiParams& j, double m);

// psi(m) = m / (m^2 + V(m)), inverse of the mean map in closed form.
double psi(const VarianceSpec& spec, double m);

double pseudo_variance(const VarianceSpec& spec, double m);
double variance(const VarianceSpec& spec, double m); // equal: m_0 = 0 throughout

// Density of Q_m with respect to nu: V(m) / (V(m) + m(m - x)).
double qm_density(const VarianceSpec& spec, double m, double x);

// Cauchy transform of Q_m via the closed form
// (V/m * G(z) - 1) / (m + V/m - z); reduces to G at m = 0.
Complex qm_cauchy_transform(const JacobiParams& j, const VarianceSpec& spec, double m, Complex z);

// -Im G(x + i eps)/pi, Richardson-extrapolated between eps and eps/2.
double stieltjes_density(const JacobiParams& j, double x, double epsilon);

} // namespace cskpoly
