#include "cskpoly/characterization.hpp"
#include "cskpoly/errors.hpp"
#include "cskpoly/measures.hpp"
#include "cskpoly/oracle.hpp"
#include "cskpoly/polynomials.hpp"
#include "cskpoly/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using cskpoly::Rational;
using cskpoly::VarianceSpec;
using json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1";
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string frac(const Rational& q) { return cskpoly::to_fraction_string(q); }

struct SpecFlags {
    std::string a0 = "1";
    std::string a1 = "0";
    std::string a2 = "0";

    void attach(CLI::App* cmd) {
        cmd->add_option("--a0", a0, "pseudo-variance value at m=0 (rational, > 0)");
        cmd->add_option("--a1", a1, "linear pseudo-variance coefficient (rational)");
        cmd->add_option("--a2", a2, "quadratic pseudo-variance coefficient (rational, >= -1)");
    }

    VarianceSpec parse() const {
        return VarianceSpec(cskpoly::parse_rational(a0), cskpoly::parse_rational(a1),
                            cskpoly::parse_rational(a2));
    }

    json echo() const {
        return {{"a0", a0}, {"a1", a1}, {"a2", a2}};
    }
};

json document(const std::string& command, json inputs) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["inputs"] = std::move(inputs);
    return doc;
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw cskpoly::Error("IoError", "cannot open output file: " + out_path);
        f << doc.dump(2) << "\n";
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw cskpoly::Error("IoError", "cannot open output file: " + out_path);
        f << text;
    }
}

json report_to_json(const cskpoly::VerifyReport& r) {
    json out;
    out["check_id"] = r.check_id;
    out["passed"] = r.passed;
    out["exact"] = r.exact;
    out["residual"] = fmt(r.residual);
    out["tolerance"] = fmt(r.tolerance);
    out["witness"] = r.witness;
    return out;
}

int cmd_family(const SpecFlags& flags, const std::string& out_path) {
    const VarianceSpec spec = flags.parse();
    const cskpoly::JacobiParams j = cskpoly::jacobi_from_quadratic(spec);
    const cskpoly::SupportInfo info = cskpoly::validate_measure(j, 8);
    const cskpoly::MeansDomain dom = cskpoly::domain_of_means(j);

    json results;
    results["family"] = cskpoly::family_name(cskpoly::classify_family(spec));
    json jac;
    jac["alpha_head"] = json::array();
    for (const auto& a : j.alpha_head()) jac["alpha_head"].push_back(frac(a));
    jac["alpha_tail"] = frac(j.alpha_tail());
    jac["beta_head"] = json::array();
    for (const auto& b : j.beta_head()) jac["beta_head"].push_back(frac(b));
    jac["beta_tail"] = frac(j.beta_tail());
    if (j.terminates_at()) jac["terminates_at"] = *j.terminates_at();
    results["jacobi"] = std::move(jac);

    json support;
    support["has_ac"] = info.has_ac;
    if (info.has_ac) {
        support["ac_lo"] = fmt(info.ac_lo);
        support["ac_hi"] = fmt(info.ac_hi);
    }
    support["lo"] = fmt(info.lo);
    support["hi"] = fmt(info.hi);
    json atoms = json::array();
    for (const auto& a : info.atoms)
        atoms.push_back({{"position", fmt(a.position)}, {"weight", fmt(a.weight)}});
    support["atoms"] = std::move(atoms);
    results["support"] = std::move(support);

    results["means_domain"] = {{"m_minus", fmt(dom.m_minus)}, {"m_plus", fmt(dom.m_plus)}};
    results["theta_domain"] = {{"theta_minus", fmt(dom.theta_minus)},
                               {"theta_plus", fmt(dom.theta_plus)}};
    results["hankel_positive_to_depth"] = info.hankel.checked_depth;

    json doc = document("family", flags.echo());
    doc["results"] = std::move(results);
    emit(doc, out_path);
    return kExitOk;
}

int cmd_poly(const SpecFlags& flags, std::size_t n, const std::string& kind,
             const std::string& format, const std::string& out_path) {
    const VarianceSpec spec = flags.parse();
    cskpoly::PolySequence seq = kind == "monic"
        ? cskpoly::monic_sequence(cskpoly::jacobi_from_quadratic(spec), n)
        : cskpoly::assoc_from_density(spec, n);

    if (format == "csv") {
        std::string text = "n,k,coeff\n";
        for (std::size_t row = 0; row < seq.count(); ++row)
            for (std::size_t k = 0; k <= row; ++k)
                text += std::to_string(row) + "," + std::to_string(k) + "," +
                        frac(seq.rows[row].coeff(k)) + "\n";
        emit_text(text, out_path);
        return kExitOk;
    }

    json inputs = flags.echo();
    inputs["n"] = n;
    inputs["kind"] = kind;
    json doc = document("poly", std::move(inputs));
    json rows = json::array();
    for (std::size_t row = 0; row < seq.count(); ++row) {
        json coeffs = json::array();
        for (std::size_t k = 0; k <= row; ++k) coeffs.push_back(frac(seq.rows[row].coeff(k)));
        rows.push_back(std::move(coeffs));
    }
    doc["results"]["rows"] = std::move(rows);
    if (seq.terminated_at) doc["results"]["terminated_at"] = *seq.terminated_at;
    emit(doc, out_path);
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::size_t n, double tol, const std::string& out_path) {
    const auto reports = cskpoly::run_suite(suite, n, tol);

    json inputs;
    inputs["suite"] = suite;
    inputs["n"] = n;
    inputs["tol"] = fmt(tol);
    json doc = document("verify", std::move(inputs));

    bool all_passed = true;
    json list = json::array();
    for (const auto& r : reports) {
        all_passed = all_passed && r.passed;
        list.push_back(report_to_json(r));
    }
    doc["results"]["total"] = reports.size();
    doc["results"]["all_passed"] = all_passed;
    doc["reports"] = std::move(list);
    emit(doc, out_path);
    return all_passed ? kExitOk : kExitVerifyFailed;
}

int cmd_density(const SpecFlags& flags, const std::string& m_text, std::size_t grid, double eps,
                const std::string& format, const std::string& out_path) {
    const VarianceSpec spec = flags.parse();
    const double m = cskpoly::to_double(cskpoly::parse_rational(m_text));
    const cskpoly::JacobiParams j = cskpoly::jacobi_from_quadratic(spec);
    const cskpoly::SupportInfo info = cskpoly::validate_measure(j, 6);
    if (!info.has_ac)
        throw cskpoly::OutOfDomain("the measure has no absolutely continuous part to grid");
    const cskpoly::MeansDomain dom = cskpoly::domain_of_means(j);
    if (!(m > dom.m_minus && m < dom.m_plus))
        throw cskpoly::OutOfDomain("m = " + m_text + " outside the domain of means (" +
                                   fmt(dom.m_minus) + ", " + fmt(dom.m_plus) + ")");

    struct Row {
        double x, nu, f, qm;
    };
    std::vector<Row> rows;
    rows.reserve(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        const double x = info.ac_lo + (info.ac_hi - info.ac_lo) * static_cast<double>(i) /
                                          static_cast<double>(grid - 1);
        const double nu = cskpoly::stieltjes_density(j, x, eps);
        const double f = cskpoly::qm_density(spec, m, x);
        rows.push_back({x, nu, f, nu * f});
    }

    if (format == "csv") {
        std::string text = "x,nu_density,f,qm_density\n";
        for (const Row& r : rows)
            text += fmt(r.x) + "," + fmt(r.nu) + "," + fmt(r.f) + "," + fmt(r.qm) + "\n";
        emit_text(text, out_path);
        return kExitOk;
    }

    json inputs = flags.echo();
    inputs["m"] = m_text;
    inputs["grid"] = grid;
    inputs["eps"] = fmt(eps);
    json doc = document("density", std::move(inputs));
    json table = json::array();
    for (const Row& r : rows)
        table.push_back({{"x", fmt(r.x)},
                         {"nu_density", fmt(r.nu)},
                         {"f", fmt(r.f)},
                         {"qm_density", fmt(r.qm)}});
    doc["results"]["rows"] = std::move(table);
    emit(doc, out_path);
    return kExitOk;
}

void print_error(const std::string& code, const std::string& message) {
    json err;
    err["error"] = {{"code", code}, {"message", message}};
    std::cerr << err.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic Cauchy-Stieltjes kernel families: transforms, polynomials, "
                 "and theorem verification"};
    app.require_subcommand(1);

    SpecFlags family_spec, poly_spec, density_spec;
    std::string out_path;
    app.add_option("--out", out_path, "write the output document to FILE instead of stdout");

    auto* family = app.add_subcommand("family", "classify a family and describe its measure");
    family_spec.attach(family);

    auto* poly = app.add_subcommand("poly", "emit polynomial coefficient tables");
    poly_spec.attach(poly);
    std::size_t poly_n = 8;
    std::string poly_kind = "assoc";
    std::string poly_format = "json";
    poly->add_option("--n", poly_n, "highest polynomial degree")->check(CLI::Range(0, 64));
    poly->add_option("--kind", poly_kind, "assoc | monic")
        ->check(CLI::IsMember({"assoc", "monic"}));
    poly->add_option("--format", poly_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "run the characterization checks");
    std::string suite = "all";
    std::size_t verify_n = 10;
    double verify_tol = 1e-8;
    verify->add_option("--suite", suite, "all | orthogonality | recurrence | th2 | gfkernel | "
                                         "radius | counterexample")
        ->check(CLI::IsMember({"all", "orthogonality", "recurrence", "th2", "gfkernel", "radius",
                               "counterexample"}));
    verify->add_option("--n", verify_n, "polynomial depth for the exact checks")
        ->check(CLI::Range(2, 64));
    verify->add_option("--tol", verify_tol, "tolerance for floating checks");

    auto* density = app.add_subcommand("density", "tabulate nu- and Q_m-densities on a grid");
    density_spec.attach(density);
    std::string density_m = "0";
    std::size_t density_grid = 41;
    double density_eps = 1e-6;
    std::string density_format = "json";
    density->add_option("--m", density_m, "mean parameter of Q_m (rational or decimal)");
    density->add_option("--grid", density_grid, "number of grid points")
        ->check(CLI::Range(2, 100000));
    density->add_option("--eps", density_eps, "Stieltjes inversion offset");
    density->add_option("--format", density_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("UsageError", e.what());
        return kExitUsage;
    }

    try {
        if (family->parsed()) return cmd_family(family_spec, out_path);
        if (poly->parsed()) return cmd_poly(poly_spec, poly_n, poly_kind, poly_format, out_path);
        if (verify->parsed()) return cmd_verify(suite, verify_n, verify_tol, out_path);
        if (density->parsed())
            return cmd_density(density_spec, density_m, density_grid, density_eps, density_format,
                               out_path);
    } catch (const cskpoly::Error& e) {
        print_error(e.code(), e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        print_error("InternalError", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
