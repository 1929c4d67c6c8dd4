#include "cskpoly/oracle.hpp"

#include "cskpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace cskpoly {

std::vector<GramMatrix::OffDiagonal> GramMatrix::nonzero_off_diagonals() const {
    std::vector<OffDiagonal> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (entries[i][j] != 0) out.push_back({i, j, entries[i][j]});
    return out;
}

Rational integrate_poly(const Polynomial& p, const MomentSequence& moments) {
    if (p.is_zero()) return Rational(0);
    if (static_cast<std::size_t>(p.degree()) >= moments.gamma.size())
        throw InsufficientMoments("need moments to degree " + std::to_string(p.degree()) +
                                  ", have " + std::to_string(moments.gamma.size()) + " entries");
    Rational acc = 0;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) acc += p.coeffs()[k] * moments.gamma[k];
    return acc;
}

GramMatrix gram_matrix(const PolySequence& p, const MomentSequence& moments) {
    GramMatrix g;
    const std::size_t n = p.count();
    g.entries.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Rational v = integrate_poly(p.rows[i] * p.rows[j], moments);
            g.entries[i][j] = v;
            g.entries[j][i] = std::move(v);
        }
    }
    return g;
}

namespace {

// QL with implicit shifts on a symmetric tridiagonal matrix, accumulating
// only the first row of the orthogonal transform (all Golub-Welsch needs).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& q) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e.push_back(0.0);
    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (iterations++ == 60)
                    throw Error("EigenFailure", "tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = q[i + 1];
                    q[i + 1] = s * q[i] + c * f;
                    q[i] = c * q[i] - s * f;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace

GaussRule gauss_rule(const JacobiParams& j, std::size_t n_points) {
    if (n_points < 1) throw Error("InvalidArgument", "gauss_rule needs at least one node");
    if (j.terminates_at() && n_points > *j.terminates_at())
        throw TerminatedSequence("measure has only " + std::to_string(*j.terminates_at()) +
                                 " atoms; cannot build a " + std::to_string(n_points) +
                                 "-point rule");

    std::vector<double> d(n_points), e(n_points > 1 ? n_points - 1 : 0), q(n_points, 0.0);
    for (std::size_t i = 0; i < n_points; ++i) d[i] = to_double(j.alpha(i));
    for (std::size_t i = 0; i + 1 < n_points; ++i) e[i] = std::sqrt(to_double(j.beta(i + 1)));
    q[0] = 1.0;

    tridiagonal_ql(d, e, q);

    std::vector<std::size_t> idx(n_points);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    GaussRule rule;
    rule.nodes.reserve(n_points);
    rule.weights.reserve(n_points);
    for (std::size_t i : idx) {
        rule.nodes.push_back(d[i]);
        rule.weights.push_back(q[i] * q[i]);
    }
    return rule;
}

Rational hankel_determinant(const MomentSequence& moments, std::size_t order) {
    if (order == 0) return Rational(1);
    if (moments.gamma.size() < 2 * order - 1)
        throw InsufficientMoments("Hankel minor of order " + std::to_string(order) +
                                  " needs moments to degree " + std::to_string(2 * order - 2));
    std::vector<std::vector<Rational>> a(order, std::vector<Rational>(order));
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t jj = 0; jj < order; ++jj) a[i][jj] = moments.gamma[i + jj];

    // Bareiss fraction-free elimination; exact in any integral domain.
    int det_sign = 1;
    Rational prev = 1;
    for (std::size_t k = 0; k + 1 < order; ++k) {
        if (a[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < order && a[pivot][k] == 0) ++pivot;
            if (pivot == order) return Rational(0);
            std::swap(a[k], a[pivot]);
            det_sign = -det_sign;
        }
        for (std::size_t i = k + 1; i < order; ++i) {
            for (std::size_t jj = k + 1; jj < order; ++jj)
                a[i][jj] = (a[k][k] * a[i][jj] - a[i][k] * a[k][jj]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return det_sign * a[order - 1][order - 1];
}

HankelVerdict hankel_positivity(const MomentSequence& moments, std::size_t depth) {
    if (moments.gamma.size() < 2 * depth - 1)
        throw InsufficientMoments("positivity to depth " + std::to_string(depth) +
                                  " needs moments to degree " + std::to_string(2 * depth - 2));
    HankelVerdict v;
    v.checked_depth = depth;
    v.positive = true;
    bool seen_zero = false;
    for (std::size_t k = 1; k <= depth; ++k) {
        Rational det = hankel_determinant(moments, k);
        if (det < 0) {
            v.positive = false;
            if (!v.first_zero) v.first_zero = k;
        } else if (det == 0) {
            if (!seen_zero) {
                seen_zero = true;
                v.first_zero = k;
            }
        } else if (seen_zero) {
            // Rank recovered after a drop: not a moment sequence.
            v.positive = false;
        }
        v.determinants.push_back(std::move(det));
    }
    return v;
}

} // namespace cskpoly
