#include "cskpoly/characterization.hpp"
#include "cskpoly/errors.hpp"
#include "cskpoly/measures.hpp"
#include "cskpoly/oracle.hpp"
#include "cskpoly/polynomials.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>

using namespace cskpoly;

TEST_CASE("six frozen table specs classify as their rows") {
    const auto& specs = six_table_specs();
    REQUIRE(specs.size() == 6);
    CHECK(classify_family(specs[0]) == FamilyType::SemiCircle);
    CHECK(classify_family(specs[1]) == FamilyType::MarchenkoPastur);
    CHECK(classify_family(specs[2]) == FamilyType::FreePascal);
    CHECK(classify_family(specs[3]) == FamilyType::FreeGamma);
    CHECK(classify_family(specs[4]) == FamilyType::FreeHyperbolic);
    CHECK(classify_family(specs[5]) == FamilyType::FreeBinomial);
}

TEST_CASE("orthogonality check passes exactly on all six specs") {
    for (const auto& spec : six_table_specs()) {
        const VerifyReport r = check_orthogonality(spec, 10);
        CHECK(r.passed);
        CHECK(r.exact);
        CHECK(r.residual == 0.0);
        CHECK(r.witness["beta_1"] == to_fraction_string(1 / spec.a0));
    }
}

TEST_CASE("orthogonality check on the terminating free binomial point") {
    const VerifyReport r = check_orthogonality(VarianceSpec(1, 0, -1), 10);
    CHECK(r.passed);
    CHECK(r.witness["diagonal"].size() == 3); // capped at termination
}

TEST_CASE("recurrence check: corrected form passes, table n=1 form fails for b != 0") {
    for (const auto& spec : six_table_specs()) {
        const VerifyReport r = check_recurrence(spec, 10);
        CHECK(r.passed);
        CHECK(r.exact);
        const auto& sub = r.witness["paper_verbatim_n1"];
        if (spec.a2 == 0) {
            CHECK(sub["passed"] == true);
        } else {
            CHECK(sub["passed"] == false);
            // Witness pins the P_2 discrepancy: -(1+b) vs -1 constant term.
            CHECK(sub["constant_term_difference"] == to_fraction_string(-spec.a2));
        }
    }
}

TEST_CASE("theorem-2 scaling holds, including the dilated spec") {
    for (const auto& spec : six_table_specs()) CHECK(check_th2_scaling(spec, 10).passed);
    const VerifyReport r = check_th2_scaling(VarianceSpec(4, 0, 0), 6);
    CHECK(r.passed);
    CHECK(r.witness["t"] == "4");
}

TEST_CASE("generating-function kernel identity within 1e-8") {
    for (const auto& spec : six_table_specs()) {
        const VerifyReport r = check_gf_kernel(spec, 30, 1e-8);
        CHECK(r.passed);
        CHECK_FALSE(r.exact);
        CHECK(r.residual <= 1e-8);
    }
}

TEST_CASE("radius bound: b_n dominated by gamma_2n") {
    for (const auto& spec : six_table_specs()) {
        const VerifyReport r = radius_bound_check(spec, 8);
        CHECK(r.passed);
        CHECK(r.exact);
    }
    // Semicircle instance: b_n = 1 vs Catalan moments.
    const VerifyReport sc = radius_bound_check(VarianceSpec(1, 0, 0), 8);
    const auto& pairs = sc.witness["moment_domination"];
    const char* catalan[] = {"1", "1", "2", "5", "14", "42", "132", "429", "1430"};
    REQUIRE(pairs.size() == 9);
    for (std::size_t n = 0; n < 9; ++n) {
        CHECK(pairs[n]["b_n"] == "1");
        CHECK(pairs[n]["gamma_2n"] == catalan[n]);
    }
}

TEST_CASE("mean annihilation on all six specs") {
    for (const auto& spec : six_table_specs()) {
        const VerifyReport r = check_mean_annihilation(spec, 10);
        CHECK(r.passed);
        CHECK(r.exact);
    }
}

TEST_CASE("g-kernel closed form matches the Gram series") {
    for (const auto& spec : six_table_specs())
        CHECK(check_gkernel_gram_consistency(spec).passed);
}

TEST_CASE("counterexample: frozen witnesses") {
    // alpha = (0,0,...), beta = (1,2,1,1,...): V* = 1 + m^2 - 2m^4 + ...
    const RationalSeries v = counterexample_variance_series(12);
    CHECK(v.coeff(0) == 1);
    CHECK(v.coeff(1) == 0);
    CHECK(v.coeff(2) == 1);
    CHECK(v.coeff(3) == 0);
    CHECK(v.coeff(4) == -2);
    CHECK(v.coeff(6) == 4);
    CHECK(v.coeff(8) == -10);

    const PolySequence p = assoc_from_variance_series(v, 6);
    const MomentSequence mom = moments_from_jacobi(counterexample_jacobi(), 12);
    CHECK(mom[4] == 3);
    CHECK(mom[6] == 11);
    CHECK(mom[8] == 43);

    const GramMatrix g = gram_matrix(p, mom);
    const auto offdiag = g.nonzero_off_diagonals();
    REQUIRE_FALSE(offdiag.empty());
    CHECK(offdiag.front().i == 2);
    CHECK(offdiag.front().j == 4);
    CHECK(offdiag.front().value == -2);
}

TEST_CASE("counterexample suite passes with its three sub-checks") {
    const auto reports = counterexample_suite(6);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        CHECK(r.passed);
        CHECK(r.exact);
    }
    CHECK(reports[0].check_id == "counterexample/variance-nonquadratic");
    CHECK(reports[0].witness["first_nonquadratic_degree"] == 4);
    CHECK(reports[0].witness["coefficient"] == "-2");
    CHECK(reports[0].witness["truncation_stable"] == true);
    CHECK(reports[1].witness["witness"]["i"] == 2);
    CHECK(reports[1].witness["witness"]["j"] == 4);
    CHECK(reports[1].witness["witness"]["value"] == "-2");
}

TEST_CASE("quadratic specs round-trip through the series variance route") {
    // variance_series_from_jacobi applied to a free Meixner measure must
    // recover the quadratic coefficients exactly and nothing else.
    for (const auto& spec : six_table_specs()) {
        const RationalSeries v = variance_series_from_jacobi(jacobi_from_quadratic(spec), 10);
        CHECK(v.coeff(0) == spec.a0);
        CHECK(v.coeff(1) == spec.a1);
        CHECK(v.coeff(2) == spec.a2);
        for (std::size_t k = 3; k <= 10; ++k) CHECK(v.coeff(k) == 0);
    }
}

TEST_CASE("run_suite: deterministic order and spec coverage") {
    const auto reports = run_suite("all", 10, 1e-8);
    CHECK(reports.size() >= 26);
    CHECK(std::is_sorted(reports.begin(), reports.end(),
                         [](const VerifyReport& a, const VerifyReport& b) {
                             return a.check_id < b.check_id;
                         }));
    for (const auto& r : reports) CHECK(r.passed);

    // Single-threaded run produces the same report ids and outcomes.
    setenv("CSKPOLY_THREADS", "1", 1);
    const auto serial = run_suite("all", 10, 1e-8);
    unsetenv("CSKPOLY_THREADS");
    REQUIRE(serial.size() == reports.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].check_id == reports[i].check_id);
        CHECK(serial[i].passed == reports[i].passed);
        CHECK(serial[i].residual == reports[i].residual);
    }
}

TEST_CASE("run_suite rejects unknown suites") {
    CHECK_THROWS_AS(run_suite("bogus", 10, 1e-8), Error);
}
