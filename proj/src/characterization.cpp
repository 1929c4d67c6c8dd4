#include "cskpoly/characterization.hpp"

#include "cskpoly/errors.hpp"
#include "cskpoly/oracle.hpp"
#include "cskpoly/polynomials.hpp"
#include "cskpoly/transforms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <thread>

namespace cskpoly {

namespace {

using json = nlohmann::ordered_json;

std::string check_id(const char* name, const VarianceSpec& spec) {
    return std::string(name) + "/" + spec.label();
}

VerifyReport exact_report(std::string id, bool passed, double violation, json witness) {
    VerifyReport r;
    r.check_id = std::move(id);
    r.passed = passed;
    r.exact = true;
    r.residual = passed ? 0.0 : violation;
    r.tolerance = 0.0;
    r.witness = std::move(witness);
    return r;
}

VerifyReport float_report(std::string id, double residual, double tol, json witness) {
    VerifyReport r;
    r.check_id = std::move(id);
    r.exact = false;
    r.residual = residual;
    r.tolerance = tol;
    r.passed = residual <= tol;
    r.witness = std::move(witness);
    return r;
}

double magnitude(const Rational& q) { return std::abs(to_double(q)); }

// Witness floats are serialized as fixed 17-significant-digit strings so
// documents are byte-stable.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

MomentSequence moments_for(const VarianceSpec& spec, std::size_t degree) {
    return moments_from_jacobi(jacobi_from_quadratic(spec), degree);
}

} // namespace

VerifyReport check_orthogonality(const VarianceSpec& spec, std::size_t n_max) {
    const PolySequence p = assoc_from_density(spec, n_max);
    const std::size_t top = p.count() - 1;
    const MomentSequence mom = moments_for(spec, 2 * top);
    const GramMatrix gram = gram_matrix(p, mom);

    json witness;
    bool ok = true;
    double violation = 0.0;

    const auto offdiag = gram.nonzero_off_diagonals();
    if (!offdiag.empty()) {
        ok = false;
        violation = magnitude(offdiag.front().value);
        witness["first_offdiagonal"] = {{"i", offdiag.front().i},
                                        {"j", offdiag.front().j},
                                        {"value", to_fraction_string(offdiag.front().value)}};
    }

    json diagonal = json::array();
    for (std::size_t n = 0; n <= top; ++n) {
        const Rational& d = gram.at(n, n);
        diagonal.push_back(to_fraction_string(d));
        const bool past_termination = p.terminated_at && n >= *p.terminated_at;
        if (past_termination ? d != 0 : d <= 0) {
            ok = false;
            violation = std::max(violation, magnitude(d));
            witness["bad_diagonal_index"] = n;
        }
    }
    witness["diagonal"] = std::move(diagonal);

    if (top >= 1) {
        const Rational beta1 = gram.at(1, 1);
        witness["beta_1"] = to_fraction_string(beta1);
        if (beta1 * spec.a0 != 1) {
            ok = false;
            violation = std::max(violation, magnitude(beta1 - 1 / spec.a0));
            witness["beta_1_expected"] = to_fraction_string(1 / spec.a0);
        }
    }
    return exact_report(check_id("orthogonality", spec), ok, violation, std::move(witness));
}

VerifyReport check_recurrence(const VarianceSpec& spec, std::size_t n_max) {
    const PolySequence p = assoc_from_density(spec, n_max);
    const std::size_t top = p.count() - 1;

    json witness;
    bool ok = true;
    double violation = 0.0;

    auto expect_equal = [&](const Polynomial& lhs, const Polynomial& rhs, std::size_t n) {
        if (lhs == rhs) return;
        ok = false;
        const Polynomial diff = lhs - rhs;
        violation = std::max(violation, magnitude(diff.leading()));
        if (!witness.contains("first_violation"))
            witness["first_violation"] = {{"n", n}, {"difference", diff.to_string()}};
    };

    // Corrected low-index relations, then the constant-coefficient relation
    // from n = 2 on.
    if (top >= 1) expect_equal(p.rows[0].shifted(1), spec.a0 * p.rows[1], 0);
    if (top >= 2)
        expect_equal(p.rows[1].shifted(1),
                     spec.a1 * p.rows[1] + spec.a0 * p.rows[2] + p.rows[0], 1);
    for (std::size_t n = 2; n + 1 <= top; ++n)
        expect_equal(p.rows[n].shifted(1),
                     (1 + spec.a2) * p.rows[n - 1] + spec.a1 * p.rows[n] + spec.a0 * p.rows[n + 1],
                     n);

    // Paper-verbatim sub-check: the table applies the same relation already
    // at n = 1, which forces P_2 = ((x - a1) P_1 - (1 + a2) P_0)/a0. That
    // disagrees with the density construction whenever a2 != 0.
    if (top >= 2) {
        const Polynomial table_p2 =
            (p.rows[1].shifted(1) - spec.a1 * p.rows[1] - (1 + spec.a2) * p.rows[0]) / spec.a0;
        const bool verbatim_ok = table_p2 == p.rows[2];
        json sub;
        sub["passed"] = verbatim_ok;
        if (!verbatim_ok) {
            sub["table_P2"] = table_p2.to_string();
            sub["density_P2"] = p.rows[2].to_string();
            sub["constant_term_difference"] =
                to_fraction_string(table_p2.coeff(0) - p.rows[2].coeff(0));
        }
        witness["paper_verbatim_n1"] = std::move(sub);
    }

    return exact_report(check_id("recurrence", spec), ok, violation, std::move(witness));
}

VerifyReport check_th2_scaling(const VarianceSpec& spec, std::size_t n_max) {
    const PolySequence t = monic_sequence(jacobi_from_quadratic(spec), n_max);
    const PolySequence p = assoc_from_density(spec, n_max);

    json witness;
    witness["t"] = to_fraction_string(spec.a0);
    bool ok = t.count() == p.count();
    double violation = ok ? 0.0 : 1.0;

    Rational scale = 1;
    for (std::size_t n = 0; ok && n < t.count(); ++n) {
        if (t.rows[n] != scale * p.rows[n]) {
            ok = false;
            violation = 1.0;
            witness["first_violation_n"] = n;
        }
        scale *= spec.a0;
    }
    return exact_report(check_id("th2-scaling", spec), ok, violation, std::move(witness));
}

VerifyReport check_gf_kernel(const VarianceSpec& spec, std::size_t n_max, double tol) {
    const JacobiParams j = jacobi_from_quadratic(spec);
    const SupportInfo info = validate_measure(j, 6);
    if (!info.has_ac)
        throw Error("InvalidArgument", "gf-kernel grid needs an absolutely continuous part");
    const PolySequence t = monic_sequence(j, n_max);

    const double t_scale = to_double(spec.a0);
    const double guard_z = radius_guard(spec) / t_scale;

    const auto f_of = [&](double z) {
        const double m = t_scale * z;
        return (m * m + spec(m)) / m; // 1/psi(tz) in closed form
    };

    double residual = 0.0;
    json worst;
    for (const double frac : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) {
        const double z = frac * guard_z;
        const double fz = f_of(z);
        const double uz = cauchy_transform(j, Complex(fz)).real();
        for (int i = 0; i <= 10; ++i) {
            const double x = info.ac_lo + (info.ac_hi - info.ac_lo) * i / 10.0;
            const double lhs = generating_partial_sum(t, x, z, n_max);
            const double rhs = 1.0 / (uz * (fz - x));
            const double err = std::abs(lhs - rhs);
            if (err > residual) {
                residual = err;
                worst = {{"x", fmt(x)}, {"z", fmt(z)}, {"lhs", fmt(lhs)}, {"rhs", fmt(rhs)}};
            }
        }
    }

    // Normalization limits u(z)/z -> 1 and z f(z) -> 1; the leading
    // deviation of both is a1 z.
    const double z0 = 1e-3;
    const double f0 = f_of(z0);
    const double u0 = cauchy_transform(j, Complex(f0)).real();
    const double norm_tol = 2e-3 + 2.0 * std::abs(to_double(spec.a1)) * z0;
    const double u_dev = std::abs(u0 / z0 - 1.0);
    const double f_dev = std::abs(z0 * f0 - 1.0);

    json witness;
    witness["worst_grid_point"] = std::move(worst);
    witness["u_over_z_minus_1"] = fmt(u_dev);
    witness["z_f_minus_1"] = fmt(f_dev);
    witness["normalization_tolerance"] = fmt(norm_tol);

    VerifyReport r = float_report(check_id("gf-kernel", spec), residual, tol, std::move(witness));
    if (u_dev > norm_tol || f_dev > norm_tol) r.passed = false;
    return r;
}

VerifyReport radius_bound_check(const VarianceSpec& spec, std::size_t n_max) {
    const JacobiParams j = jacobi_from_quadratic(spec);
    const PolySequence t = monic_sequence(j, n_max);
    const std::size_t top = t.count() - 1;
    const MomentSequence mom = moments_from_jacobi(j, 2 * top);
    const GramMatrix gram = gram_matrix(t, mom);

    json witness;
    bool ok = true;
    double violation = 0.0;

    json pairs = json::array();
    for (std::size_t n = 0; n <= top; ++n) {
        const Rational& b_n = gram.at(n, n);
        const Rational& g_2n = mom[2 * n];
        pairs.push_back({{"n", n},
                         {"b_n", to_fraction_string(b_n)},
                         {"gamma_2n", to_fraction_string(g_2n)}});
        if (b_n > g_2n) {
            ok = false;
            violation = std::max(violation, magnitude(b_n - g_2n));
            witness["first_violation_n"] = n;
        }
    }
    witness["moment_domination"] = std::move(pairs);

    const MeansDomain dom = domain_of_means(j);
    const double r = std::min(std::abs(dom.theta_minus), dom.theta_plus);
    const double z = r / 2.0;
    double sum_b = 0.0, sum_g = 0.0;
    for (std::size_t n = 0; n <= top; ++n) {
        const double z2n = std::pow(z, 2.0 * static_cast<double>(n));
        sum_b += z2n * to_double(gram.at(n, n));
        sum_g += z2n * to_double(mom[2 * n]);
    }
    witness["r"] = fmt(r);
    witness["partial_sum_b"] = fmt(sum_b);
    witness["partial_sum_gamma"] = fmt(sum_g);
    if (sum_b > sum_g + 1e-12 * std::max(1.0, sum_g)) ok = false;

    return exact_report(check_id("radius-bound", spec), ok, violation, std::move(witness));
}

VerifyReport check_mean_annihilation(const VarianceSpec& spec, std::size_t n_max) {
    const PolySequence p = assoc_from_density(spec, n_max);
    const std::size_t top = p.count() - 1;
    const MomentSequence mom = moments_for(spec, top);

    bool ok = true;
    double violation = 0.0;
    json witness;
    for (std::size_t n = 1; n <= top; ++n) {
        const Rational v = integrate_poly(p.rows[n], mom);
        if (v != 0) {
            ok = false;
            violation = std::max(violation, magnitude(v));
            if (!witness.contains("first_violation"))
                witness["first_violation"] = {{"n", n}, {"integral", to_fraction_string(v)}};
        }
    }
    return exact_report(check_id("mean-annihilation", spec), ok, violation, std::move(witness));
}

VerifyReport check_gkernel_gram_consistency(const VarianceSpec& spec, std::size_t n_max,
                                            double tol) {
    const PolySequence p = assoc_from_density(spec, n_max);
    const std::size_t top = p.count() - 1;
    const MomentSequence mom = moments_for(spec, 2 * top);
    const GramMatrix gram = gram_matrix(p, mom);

    double residual = 0.0;
    json worst;
    for (const double m : {-0.2, -0.1, 0.05, 0.15, 0.2}) {
        for (const double mt : {-0.2, -0.05, 0.1, 0.2}) {
            const double closed = g_kernel(spec, m, mt);
            const double u = m * mt;
            double series = 0.0;
            for (std::size_t n = top + 1; n-- > 0;)
                series = series * u + to_double(gram.at(n, n));
            const double err = std::abs(closed - series);
            if (err > residual) {
                residual = err;
                worst = {{"m", fmt(m)}, {"mt", fmt(mt)}, {"closed", fmt(closed)}, {"series", fmt(series)}};
            }
        }
    }
    json witness;
    witness["worst_pair"] = std::move(worst);
    return float_report(check_id("gkernel-gram", spec), residual, tol, std::move(witness));
}

JacobiParams counterexample_jacobi() {
    return JacobiParams({}, Rational(0), {Rational(1), Rational(2)}, Rational(1));
}

RationalSeries variance_series_from_jacobi(const JacobiParams& j, std::size_t order) {
    // moments -> M(theta) -> k(theta) = (M-1)/(theta M) -> psi by reversion
    // -> V(m) = m (1/psi(m) - m), entirely in exact rationals.
    const MomentSequence mom = moments_from_jacobi(j, order + 2);
    RationalSeries m_series = RationalSeries::zero(order + 1);
    RationalSeries k_num = RationalSeries::zero(order + 1); // (M-1)/theta
    for (std::size_t n = 0; n <= order + 1; ++n) {
        m_series.set_coeff(n, mom[n]);
        k_num.set_coeff(n, mom[n + 1]);
    }
    const RationalSeries k = k_num / m_series; // coefficient n is that of theta^n in k
    if (k.coeff(0) != 0)
        throw Error("InternalCheck", "mean map must vanish at 0 for a mean-zero measure");
    const RationalSeries psi_series = k.revert();

    // 1/psi = (1/m) * (psi/m)^{-1}; V = m/psi - m^2 = (psi/m)^{-1} - m^2.
    RationalSeries psi_over_m = RationalSeries::zero(order);
    for (std::size_t n = 0; n <= order; ++n) psi_over_m.set_coeff(n, psi_series.coeff(n + 1));
    RationalSeries v = psi_over_m.inverse();
    if (order >= 2) v.set_coeff(2, v.coeff(2) - 1);
    return v;
}

RationalSeries counterexample_variance_series(std::size_t order) {
    return variance_series_from_jacobi(counterexample_jacobi(), order);
}

std::vector<VerifyReport> counterexample_suite(std::size_t n_max) {
    std::vector<VerifyReport> out;
    const JacobiParams j = counterexample_jacobi();
    const std::size_t order = std::max<std::size_t>(12, 2 * n_max);
    const RationalSeries v = counterexample_variance_series(order);
    const RationalSeries v_refined = counterexample_variance_series(order + 4);

    // Sub-check 1: V(0) > 0 and some coefficient past degree 2 is nonzero,
    // stable under deepening the truncation.
    {
        json witness;
        bool ok = v.coeff(0) > 0;
        witness["V0"] = to_fraction_string(v.coeff(0));
        std::optional<std::size_t> first_high;
        for (std::size_t k = 3; k <= order; ++k) {
            if (v.coeff(k) != 0) {
                first_high = k;
                break;
            }
        }
        ok = ok && first_high.has_value();
        if (first_high) {
            witness["first_nonquadratic_degree"] = *first_high;
            witness["coefficient"] = to_fraction_string(v.coeff(*first_high));
        }
        bool stable = true;
        for (std::size_t k = 0; k <= order; ++k)
            if (v.coeff(k) != v_refined.coeff(k)) stable = false;
        witness["truncation_stable"] = stable;
        ok = ok && stable;
        out.push_back(exact_report("counterexample/variance-nonquadratic", ok, ok ? 0.0 : 1.0,
                                   std::move(witness)));
    }

    const PolySequence p = assoc_from_variance_series(v, n_max);
    const MomentSequence mom = moments_from_jacobi(j, 2 * n_max);

    // Sub-check 2: the Gram matrix is NOT diagonal (Theorem: orthogonality
    // would force a quadratic pseudo-variance).
    {
        const GramMatrix gram = gram_matrix(p, mom);
        const auto offdiag = gram.nonzero_off_diagonals();
        json witness;
        const bool ok = !offdiag.empty();
        if (ok) {
            witness["witness"] = {{"i", offdiag.front().i},
                                  {"j", offdiag.front().j},
                                  {"value", to_fraction_string(offdiag.front().value)}};
        }
        out.push_back(exact_report("counterexample/gram-nondiagonal", ok, ok ? 0.0 : 1.0,
                                   std::move(witness)));
    }

    // Sub-check 3: property (a) holds regardless of quadraticity.
    {
        bool ok = true;
        double violation = 0.0;
        json witness;
        for (std::size_t n = 1; n < p.count(); ++n) {
            const Rational val = integrate_poly(p.rows[n], mom);
            if (val != 0) {
                ok = false;
                violation = std::max(violation, magnitude(val));
                if (!witness.contains("first_violation"))
                    witness["first_violation"] = {{"n", n}, {"integral", to_fraction_string(val)}};
            }
        }
        out.push_back(exact_report("counterexample/mean-annihilation", ok, violation,
                                   std::move(witness)));
    }
    return out;
}

const std::vector<VarianceSpec>& six_table_specs() {
    static const std::vector<VarianceSpec> specs = {
        VarianceSpec(1, 0, 0),                           // semi-circle
        VarianceSpec(1, 1, 0),                           // Marchenko-Pastur
        VarianceSpec(1, 3, 1),                           // free Pascal (a^2 > 4b)
        VarianceSpec(1, 2, 1),                           // free Gamma (a^2 = 4b)
        VarianceSpec(1, 1, 1),                           // free hyperbolic (a^2 < 4b)
        VarianceSpec(1, 1, Rational(-1) / Rational(2)),  // free binomial (-1 <= b < 0)
    };
    return specs;
}

std::vector<VerifyReport> run_suite(const std::string& suite, std::size_t n_max, double tol) {
    std::vector<std::function<VerifyReport()>> tasks;
    std::vector<VerifyReport> reports;

    const bool all = suite == "all";
    const auto& specs = six_table_specs();

    if (all || suite == "orthogonality") {
        for (const auto& s : specs) {
            tasks.emplace_back([s, n_max] { return check_orthogonality(s, n_max); });
            tasks.emplace_back([s, n_max] { return check_mean_annihilation(s, n_max); });
            tasks.emplace_back([s] { return check_gkernel_gram_consistency(s); });
        }
    }
    if (all || suite == "recurrence") {
        for (const auto& s : specs)
            tasks.emplace_back([s, n_max] { return check_recurrence(s, n_max); });
    }
    if (all || suite == "th2") {
        for (const auto& s : specs)
            tasks.emplace_back([s, n_max] { return check_th2_scaling(s, n_max); });
        tasks.emplace_back([n_max] {
            return check_th2_scaling(VarianceSpec(4, 0, 0), n_max); // dilated semi-circle
        });
    }
    if (all || suite == "gfkernel") {
        for (const auto& s : specs)
            tasks.emplace_back([s, tol] { return check_gf_kernel(s, 30, tol); });
    }
    if (all || suite == "radius") {
        for (const auto& s : specs)
            tasks.emplace_back([s, n_max] { return radius_bound_check(s, n_max); });
    }
    if (!all && suite != "orthogonality" && suite != "recurrence" && suite != "th2" &&
        suite != "gfkernel" && suite != "radius" && suite != "counterexample") {
        throw Error("UnknownSuite", "unknown verification suite: " + suite);
    }

    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CSKPOLY_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) threads = static_cast<std::size_t>(parsed);
    }
    threads = std::min(threads, std::max<std::size_t>(tasks.size(), 1));

    reports.resize(tasks.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) reports[i] = tasks[i]();
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                    reports[i] = tasks[i]();
            });
        }
        for (auto& th : pool) th.join();
    }

    if (all || suite == "counterexample") {
        auto extra = counterexample_suite(6);
        reports.insert(reports.end(), std::make_move_iterator(extra.begin()),
                       std::make_move_iterator(extra.end()));
    }

    std::sort(reports.begin(), reports.end(),
              [](const VerifyReport& a, const VerifyReport& b) { return a.check_id < b.check_id; });
    return reports;
}

} // namespace cskpoly
