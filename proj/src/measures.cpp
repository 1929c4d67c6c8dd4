#include "cskpoly/measures.hpp"

#include "cskpoly/errors.hpp"
#include "cskpoly/oracle.hpp"
#include "cskpoly/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace cskpoly {

VarianceSpec::VarianceSpec(Rational a0_, Rational a1_, Rational a2_)
    : a0(std::move(a0_)), a1(std::move(a1_)), a2(std::move(a2_)) {
    if (a0 <= 0)
        throw InvalidVariance("pseudo-variance at m=0 must be positive, got a0 = " +
                              to_fraction_string(a0));
    if (a2 < -1)
        throw InvalidVariance("no generating probability measure exists for a2 < -1, got a2 = " +
                              to_fraction_string(a2));
}

double VarianceSpec::operator()(double m) const {
    return to_double(a0) + to_double(a1) * m + to_double(a2) * m * m;
}

std::string VarianceSpec::label() const {
    return "a0=" + to_fraction_string(a0) + ",a1=" + to_fraction_string(a1) +
           ",a2=" + to_fraction_string(a2);
}

const char* family_name(FamilyType t) {
    switch (t) {
        case FamilyType::SemiCircle: return "SemiCircle";
        case FamilyType::MarchenkoPastur: return "MarchenkoPastur";
        case FamilyType::FreePascal: return "FreePascal";
        case FamilyType::FreeGamma: return "FreeGamma";
        case FamilyType::FreeHyperbolic: return "FreeHyperbolic";
        case FamilyType::FreeBinomial: return "FreeBinomial";
    }
    return "?";
}

FamilyType classify_family(const VarianceSpec& spec) {
    // After x -> x/sqrt(a0) the coefficients become (1, a1/sqrt(a0), a2),
    // so b = a2 and a^2 <> 4b is decided by a1^2 <> 4*a0*a2.
    const Rational& b = spec.a2;
    const Rational a_sq_minus_4b = spec.a1 * spec.a1 - 4 * spec.a0 * spec.a2;
    if (b == 0) return spec.a1 == 0 ? FamilyType::SemiCircle : FamilyType::MarchenkoPastur;
    if (b > 0) {
        if (a_sq_minus_4b > 0) return FamilyType::FreePascal;
        if (a_sq_minus_4b == 0) return FamilyType::FreeGamma;
        return FamilyType::FreeHyperbolic;
    }
    return FamilyType::FreeBinomial; // -1 <= b < 0, enforced at construction
}

JacobiParams::JacobiParams(std::vector<Rational> alpha_head, Rational alpha_tail,
                           std::vector<Rational> beta_head, Rational beta_tail)
    : alpha_head_(std::move(alpha_head)),
      alpha_tail_(std::move(alpha_tail)),
      beta_head_(std::move(beta_head)),
      beta_tail_(std::move(beta_tail)) {
    for (std::size_t i = 0; i < beta_head_.size(); ++i) {
        if (beta_head_[i] < 0)
            throw Error("InvalidJacobi", "negative off-diagonal coefficient beta_" +
                                             std::to_string(i + 1));
        if (beta_head_[i] == 0) {
            terminates_at_ = i + 1;
            return;
        }
    }
    if (beta_tail_ < 0) throw Error("InvalidJacobi", "negative tail coefficient");
    if (beta_tail_ == 0) terminates_at_ = beta_head_.size() + 1;
}

Rational JacobiParams::alpha(std::size_t n) const {
    return n < alpha_head_.size() ? alpha_head_[n] : alpha_tail_;
}

Rational JacobiParams::beta(std::size_t n) const {
    if (n == 0) throw Error("InvalidJacobi", "beta is indexed from 1");
    return n - 1 < beta_head_.size() ? beta_head_[n - 1] : beta_tail_;
}

std::size_t JacobiParams::fold_depth() const {
    std::size_t depth = std::max(alpha_head_.size(), beta_head_.size());
    // Heads may redundantly repeat the tail value; shrink to the true depth.
    while (depth > 0 && alpha(depth - 1) == alpha_tail_ && beta(depth) == beta_tail_) --depth;
    return depth;
}

JacobiParams jacobi_from_quadratic(const VarianceSpec& spec) {
    // alpha_0 = 0, alpha_n = a1 (n >= 1); beta_1 = a0, beta_n = a0(1 + a2)
    // (n >= 2). At a2 = -1 the tail vanishes and the measure is two atoms.
    return JacobiParams({Rational(0)}, spec.a1, {spec.a0}, spec.a0 * (1 + spec.a2));
}

MomentSequence moments_from_jacobi(const JacobiParams& j, std::size_t upto) {
    // Expand x^k in the monic orthogonal basis; the T_0 component is gamma_k.
    // This is the weighted Motzkin-path count: a level step at height h
    // weighs alpha_h, a down step from height h weighs beta_h.
    MomentSequence out;
    out.gamma.reserve(upto + 1);
    std::vector<Rational> c{Rational(1)};
    out.gamma.push_back(c[0]);
    for (std::size_t k = 1; k <= upto; ++k) {
        std::vector<Rational> next(c.size() + 1, Rational(0));
        for (std::size_t n = 0; n < c.size(); ++n) {
            if (c[n] == 0) continue;
            next[n + 1] += c[n];
            next[n] += j.alpha(n) * c[n];
            if (n > 0) next[n - 1] += j.beta(n) * c[n];
        }
        c = std::move(next);
        out.gamma.push_back(c[0]);
    }
    return out;
}

SupportInfo validate_measure(const JacobiParams& j, std::size_t depth) {
    if (depth < 1) throw Error("InvalidArgument", "validate_measure needs depth >= 1");
    SupportInfo info;

    const MomentSequence moments = moments_from_jacobi(j, 2 * depth);
    info.hankel = hankel_positivity(moments, depth);
    if (!info.hankel.positive) {
        throw NotPositiveDefinite(
            "Hankel minor of order " +
            std::to_string(info.hankel.first_zero ? *info.hankel.first_zero : depth) +
            " is negative: inconsistent Jacobi parameters");
    }

    if (j.terminates_at()) {
        // Purely atomic: the full-size Gauss rule is the measure itself.
        const GaussRule rule = gauss_rule(j, *j.terminates_at());
        info.has_ac = false;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            info.atoms.push_back({rule.nodes[i], rule.weights[i]});
        info.lo = rule.nodes.front();
        info.hi = rule.nodes.back();
        return info;
    }

    const double at = to_double(j.alpha_tail());
    const double bt = to_double(j.beta_tail());
    info.has_ac = true;
    info.ac_lo = at - 2.0 * std::sqrt(bt);
    info.ac_hi = at + 2.0 * std::sqrt(bt);
    info.atoms = locate_atoms(j, info.ac_lo, info.ac_hi);

    info.lo = info.ac_lo;
    info.hi = info.ac_hi;
    for (const Atom& a : info.atoms) {
        info.lo = std::min(info.lo, a.position);
        info.hi = std::max(info.hi, a.position);
    }
    return info;
}

} // namespace cskpoly
