#pragma once

#include "cskpoly/measures.hpp"
#include "cskpoly/polynomial.hpp"
#include "cskpoly/polynomials.hpp"
#include "cskpoly/rational.hpp"

#include <cstddef>
#include <vector>

namespace cskpoly {

/// Exact pairwise integrals entries[i][j] = integral of P_i P_j d(nu).
struct GramMatrix {
    std::vector<std::vector<Rational>> entries;

    std::size_t size() const { return entries.size(); }
    const Rational& at(std::size_t i, std::size_t j) const { return entries[i][j]; }

    // First off-diagonal (i, j), i < j, with a nonzero entry, if any.
    struct OffDiagonal {
        std::size_t i, j;
        Rational value;
    };
    std::vector<OffDiagonal> nonzero_off_diagonals() const;
};

// Linear functional: integral of p d(nu) = sum_k c_k gamma_k.
Rational integrate_poly(const Polynomial& p, const MomentSequence& moments);

GramMatrix gram_matrix(const PolySequence& p, const MomentSequence& moments);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Golub-Welsch: nodes are eigenvalues of the n-point truncated symmetric
// Jacobi matrix, weights the squared first eigenvector components. Exact on
// polynomials of degree <= 2n-1.
GaussRule gauss_rule(const JacobiParams& j, std::size_t n_points);

// Leading principal minors of [gamma_{i+j}] up to order `depth`, evaluated
// exactly (Bareiss elimination).
HankelVerdict hankel_positivity(const MomentSequence& moments, std::size_t depth);

Rational hankel_determinant(const MomentSequence& moments, std::size_t order);

} // namespace cskpoly
