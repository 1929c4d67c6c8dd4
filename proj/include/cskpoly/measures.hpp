#pragma once

#include "cskpoly/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cskpoly {

/// Quadratic pseudo-variance a0 + a1*m + a2*m^2; the analytic identity of a
/// quadratic CSK family. Construction enforces a0 > 0 and a2 >= -1.
struct VarianceSpec {
    VarianceSpec(Rational a0_, Rational a1_, Rational a2_);

    Rational a0, a1, a2;

    Rational operator()(const Rational& m) const { return a0 + a1 * m + a2 * m * m; }
    double operator()(double m) const;

    // Canonical display/sort key, e.g. "a0=1,a1=1,a2=-1/2".
    std::string label() const;

    bool operator==(const VarianceSpec&) const = default;
};

enum class FamilyType {
    SemiCircle,
    MarchenkoPastur,
    FreePascal,
    FreeGamma,
    FreeHyperbolic,
    FreeBinomial,
};

const char* family_name(FamilyType t);

// Classification is done on (a, b) = (a1/sqrt(a0), a2) after normalizing
// a0 to 1 by dilation; a^2 vs 4b is compared as a1^2 vs 4*a0*a2 so no roots
// are ever taken.
FamilyType classify_family(const VarianceSpec& spec);

/// Monic three-term recurrence coefficients of the generating measure,
/// T_{n+1} = (x - alpha_n) T_n - beta_n T_{n-1}, stored as an explicit head
/// followed by constant tails. beta is indexed from 1. A zero beta
/// terminates the sequence: the measure is purely atomic with
/// `terminates_at` atoms.
class JacobiParams {
public:
    JacobiParams(std::vector<Rational> alpha_head, Rational alpha_tail,
                 std::vector<Rational> beta_head, Rational beta_tail);

    Rational alpha(std::size_t n) const;
    Rational beta(std::size_t n) const; // n >= 1

    const std::vector<Rational>& alpha_head() const { return alpha_head_; }
    const Rational& alpha_tail() const { return alpha_tail_; }
    const std::vector<Rational>& beta_head() const { return beta_head_; }
    const Rational& beta_tail() const { return beta_tail_; }

    std::optional<std::size_t> terminates_at() const { return terminates_at_; }

    // First level k such that (alpha(j), beta(j+1)) equal the constant tail
    // for every j >= k. Meaningless for terminating sequences.
    std::size_t fold_depth() const;

private:
    std::vector<Rational> alpha_head_;
    Rational alpha_tail_;
    std::vector<Rational> beta_head_;
    Rational beta_tail_;
    std::optional<std::size_t> terminates_at_;
};

JacobiParams jacobi_from_quadratic(const VarianceSpec& spec);

/// Exact moments gamma_k = integral of x^k d(nu), k = 0..N.
struct MomentSequence {
    std::vector<Rational> gamma;

    std::size_t max_degree() const { return gamma.empty() ? 0 : gamma.size() - 1; }
    const Rational& operator[](std::size_t k) const { return gamma[k]; }
};

MomentSequence moments_from_jacobi(const JacobiParams& j, std::size_t upto);

struct HankelVerdict {
    bool positive = false;                        // all dets > 0 (or 0 past termination)
    std::size_t checked_depth = 0;                // number of leading minors examined
    std::optional<std::size_t> first_zero;        // rank drop (termination), if any
    std::vector<Rational> determinants;           // det of the k x k leading minors
};

struct Atom {
    double position;
    double weight;
};

struct SupportInfo {
    HankelVerdict hankel;
    bool has_ac = false;    // absolutely continuous part present
    double ac_lo = 0.0;     // endpoints of the a.c. support, valid when has_ac
    double ac_hi = 0.0;
    std::vector<Atom> atoms;
    double lo = 0.0;        // inf/sup of the full support, atoms included
    double hi = 0.0;
};

// Hankel positivity to `depth`, support endpoints from the constant Jacobi
// tail, plus atom locations (poles of the Cauchy transform off the a.c.
// support). Throws NotPositiveDefinite if a Hankel determinant is negative.
SupportInfo validate_measure(const JacobiParams& j, std::size_t depth);

} // namespace cskpoly
