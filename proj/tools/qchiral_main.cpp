#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qchiral/bloch.hpp"
#include "qchiral/concurrence.hpp"
#include "qchiral/errors.hpp"
#include "qchiral/experiments.hpp"
#include "qchiral/geometry.hpp"
#include "qchiral/io.hpp"
#include "qchiral/linalg.hpp"
#include "qchiral/perturbation.hpp"
#include "qchiral/rng.hpp"
#include "qchiral/sinisterness.hpp"
#include "qchiral/states.hpp"

namespace {

using namespace qchiral;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitViolations = 4;
constexpr int kExitVerifyFailed = 5;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open output path: " + out_path);
    out << j.dump(2) << "\n";
    if (!out) throw ParseError("failed while writing: " + out_path);
}

// bell | mixed | werner:E | file:PATH | PATH
DensityMatrix state_from_spec(const std::string& spec) {
    if (spec == "bell") return from_pure(bell_state());
    if (spec == "mixed") return maximally_mixed();
    if (spec.rfind("werner:", 0) == 0) {
        double eps = 0.0;
        try {
            eps = std::stod(spec.substr(7));
        } catch (const std::exception&) {
            throw ParseError("cannot parse mixing parameter in: " + spec);
        }
        return werner(eps);
    }
    if (spec.rfind("file:", 0) == 0) return load_state_json(spec.substr(5));
    return load_state_json(spec);
}

int run_analyze(const std::string& state_spec, const std::string& out_path, double tol) {
    const DensityMatrix rho = state_from_spec(state_spec);
    json rep = analysis_report(rho);
    rep["sinisterness"] = sinisterness_checked(rho, tol);
    emit(rep, out_path);
    return kExitOk;
}

int run_scan(std::size_t n, std::uint64_t seed, const std::string& mode_name,
             const std::string& out_path, double tol) {
    if (n < 1) throw RangeError("scan size must be at least 1");
    const ScanMode mode = scan_mode_from_string(mode_name);
    const std::vector<ScanRecord> records = scan_random_states(seed, n, mode, tol);
    if (!out_path.empty()) write_scan_csv(out_path, records);
    const ScanSummary s = summarize(records);

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "n=%zu violations=%zu separable=%zu (%.1f%%) s_min=%.6g s_max=%.6g "
                  "mean_purity=%.6g",
                  s.n, s.violations, s.separable_count,
                  100.0 * static_cast<double>(s.separable_count) / static_cast<double>(s.n),
                  s.min_sinisterness, s.max_sinisterness, s.mean_purity);
    std::cout << buf << "\n";
    if (s.violations > 0) {
        std::size_t upper = 0, lower = 0, range = 0;
        for (const ScanRecord& r : records) {
            if (r.violates_upper) ++upper;
            if (r.violates_lower) ++lower;
            if (r.violates_range) ++range;
        }
        std::snprintf(buf, sizeof(buf),
                      "bounds failed: upper_envelope=%zu lower_envelope=%zu separable_range=%zu",
                      upper, lower, range);
        std::cout << buf << "\n";
        return kExitViolations;
    }
    return kExitOk;
}

int run_simulate(const std::string& state_spec, std::size_t shots, std::uint64_t seed,
                 const std::string& out_path) {
    const DensityMatrix rho = state_from_spec(state_spec);
    const MeasurementEstimate est = simulate_measurements(rho, shots, seed);
    json rep;
    rep["shots"] = est.shots;
    rep["a_hat"] = est.a_hat;
    rep["b_hat"] = est.b_hat;
    json c_rows = json::array();
    for (int i = 0; i < 3; ++i) c_rows.push_back({est.c_hat(i, 0), est.c_hat(i, 1), est.c_hat(i, 2)});
    rep["c_hat"] = c_rows;
    rep["sinisterness_estimate"] = est.s_hat;
    rep["sinisterness_exact"] = est.s_exact;
    rep["std_error"] = est.std_error;
    emit(rep, out_path);
    return kExitOk;
}

int run_perturb(double eps, std::uint64_t seed, double lambda, const std::string& out_path) {
    const DensityMatrix rho_prime = random_density(seed);
    const PerturbationReport rep = werner_perturbation_report(eps, rho_prime, lambda);
    json j;
    j["eps"] = eps;
    j["seed"] = seed;
    j["lambda"] = rep.lambda;
    j["analytic_dC"] = rep.analytic_dC;
    j["analytic_dS"] = rep.analytic_dS;
    j["fd_dC"] = rep.fd_dC;
    j["fd_dS"] = rep.fd_dS;
    j["rel_err_dC"] = rep.rel_err_dC;
    j["rel_err_dS"] = rep.rel_err_dS;
    emit(j, out_path);
    return kExitOk;
}

struct VerifyCheck {
    std::string name;
    double residual;
    double bound;
    bool pass;
};

VerifyCheck check_werner_grid() {
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double eps = -1.0 / 3.0 + k * (4.0 / 3.0) / 200.0;
        const DensityMatrix rho = werner(eps);
        const double want = -eps * eps * eps;
        worst = std::max(worst, std::abs(sinisterness(rho) - want));
        worst = std::max(worst, std::abs(sinisterness_from_c(decompose(rho).c) - want));
    }
    return {"werner cubic, both routes", worst, 1e-10, worst < 1e-10};
}

VerifyCheck check_x_state() {
    Rng g(90001);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        double q = g.uniform(0.01, 0.4), r = g.uniform(0.01, 0.4), s = g.uniform(0.01, 0.4);
        const double t = 1.0 - q - r - s;
        if (t < 0.01) continue;
        const double u = g.uniform(0.0, 1.0) * std::sqrt(r * s);
        const double v = g.uniform(0.0, 1.0) * std::sqrt(q * t);
        const XStateParams p{q, r, s, t, u, v};
        const double want = -16.0 * (v * v - u * u) * (q * t - r * s);
        worst = std::max(worst, std::abs(sinisterness_x(p) - want));
        worst = std::max(worst, std::abs(sinisterness(x_state(p)) - want));
    }
    return {"x-state closed form", worst, 1e-10, worst < 1e-10};
}

VerifyCheck check_separable() {
    Rng g(90002);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        EnsembleSpec spec(4);
        double wsum = 0.0;
        for (auto& term : spec) {
            term.p = g.uniform(0.05, 1.0);
            wsum += term.p;
            const double tha = g.uniform(0.0, 3.141592653589793);
            const double pha = g.uniform(0.0, 6.283185307179586);
            const double thb = g.uniform(0.0, 3.141592653589793);
            const double phb = g.uniform(0.0, 6.283185307179586);
            term.a = qubit_from_bloch(Vec3{std::sin(tha) * std::cos(pha),
                                           std::sin(tha) * std::sin(pha), std::cos(tha)});
            term.b = qubit_from_bloch(Vec3{std::sin(thb) * std::cos(phb),
                                           std::sin(thb) * std::sin(phb), std::cos(thb)});
        }
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            spec[k].p /= wsum;
            acc += spec[k].p;
        }
        spec[3].p = 1.0 - acc;
        const double closed = separable_sinisterness(spec);
        const double pipeline = sinisterness_from_c(decompose(from_ensemble(spec)).c);
        worst = std::max(worst, std::abs(closed - pipeline) / (1.0 + std::abs(closed)));

        EnsembleSpec three(spec.begin(), spec.begin() + 3);
        const double renorm = three[0].p + three[1].p + three[2].p;
        for (auto& term : three) term.p /= renorm;
        three[2].p = 1.0 - three[0].p - three[1].p;
        worst = std::max(worst, std::abs(separable_sinisterness(three)));
    }
    return {"separable four-term reduction", worst, 1e-9, worst < 1e-9};
}

VerifyCheck check_dual_path(bool inject_fault) {
    Rng g(90003);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        const double s_c = sinisterness_from_c(decompose(rho).c);
        Complex4x4 gm = g_matrix(rho);
        if (inject_fault) {
            // mimic a transposed index pair in the rearrangement
            std::swap(gm(2, 3), gm(3, 2));
        }
        const double s_g = -16.0 * det4(gm).real();
        worst = std::max(worst, std::abs(s_c - s_g) / (1.0 + std::abs(s_g)));
    }
    return {"dual determinant routes", worst, 1e-9, worst < 1e-9};
}

VerifyCheck check_purity() {
    Rng g(90004);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        worst = std::max(worst, std::abs(purity_from_gamma(decompose(rho).gamma) - purity(rho)));
    }
    return {"purity identity", worst, 1e-12, worst < 1e-12};
}

VerifyCheck check_volume() {
    const double bound = 8.0 / (9.0 * std::sqrt(3.0));
    const VolumeSearchResult pinned = hill_climb(regular_tetrahedron(), 500, 90005);
    const VolumeSearchResult searched = max_volume_search(90006, 2000);
    double worst = std::abs(pinned.volume - bound);
    worst = std::max(worst, std::max(searched.volume - bound, 0.0));
    return {"maximum tetrahedron volume", worst, 1e-10, worst < 1e-10};
}

VerifyCheck check_det_expansion() {
    Rng g(90007);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        Complex4x4 a;
        for (int r = 0; r < 4; ++r) {
            a(r, r) = cplx(g.uniform(-1.0, 1.0), 0.0);
            for (int c = r + 1; c < 4; ++c) {
                a(r, c) = cplx(g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0));
                a(c, r) = std::conj(a(r, c));
            }
        }
        const double lambda = g.uniform(0.1, 1.0);
        Complex4x4 shifted = lambda * a;
        for (int d = 0; d < 4; ++d) shifted(d, d) += 1.0;
        const cplx want = det4(shifted);
        const cplx got = det_expansion(a, lambda, 4);
        worst = std::max(worst, std::abs(got - want) / (1.0 + std::abs(want)));
    }
    return {"determinant expansion, order 4", worst, 1e-10, worst < 1e-10};
}

VerifyCheck check_perturbation_fd() {
    Rng g(90008);
    double worst = 0.0;
    int done = 0;
    for (int trial = 0; trial < 60 && done < 20; ++trial) {
        const double eps = g.uniform(0.35, 1.0);
        const DensityMatrix rho_prime = random_density(g.next());
        const WernerVariation wv = werner_variation(eps, rho_prime);
        if (std::abs(wv.dC) < 1e-3 || std::abs(wv.dS) < 1e-3) continue;
        ++done;
        const PerturbationReport rep = werner_perturbation_report(eps, rho_prime, 1e-3);
        worst = std::max(worst, std::max(rep.rel_err_dC, rep.rel_err_dS));
    }
    const bool enough = done >= 10;
    return {"perturbation finite differences", worst, 1e-3, enough && worst < 1e-3};
}

int run_verify(bool as_json, bool inject_fault) {
    std::vector<VerifyCheck> checks;
    checks.push_back(check_werner_grid());
    checks.push_back(check_x_state());
    checks.push_back(check_separable());
    checks.push_back(check_dual_path(inject_fault));
    checks.push_back(check_purity());
    checks.push_back(check_volume());
    checks.push_back(check_det_expansion());
    checks.push_back(check_perturbation_fd());

    bool all_pass = true;
    if (as_json) {
        json out;
        out["checks"] = json::array();
        for (const VerifyCheck& c : checks) {
            all_pass = all_pass && c.pass;
            out["checks"].push_back({{"name", c.name},
                                     {"pass", c.pass},
                                     {"residual", c.residual},
                                     {"bound", c.bound}});
        }
        out["all_pass"] = all_pass;
        std::cout << out.dump(2) << "\n";
    } else {
        char buf[192];
        for (const VerifyCheck& c : checks) {
            all_pass = all_pass && c.pass;
            std::snprintf(buf, sizeof(buf), "%-4s %-34s residual=%.3e bound=%.0e",
                          c.pass ? "pass" : "FAIL", c.name.c_str(), c.residual, c.bound);
            std::cout << buf << "\n";
        }
        std::cout << (all_pass ? "all checks passed" : "verification failed") << "\n";
    }
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit chirality and entanglement toolkit"};
    app.require_subcommand(1);

    std::string state_path;
    std::string state_spec = "bell";
    std::string out_path;
    std::string mode_name = "mixed";
    std::uint64_t seed = 42;
    std::size_t n = 100000;
    std::size_t shots = 10000;
    double tolerance = 1e-9;
    double eps = 0.8;
    double lambda = 1e-3;
    bool as_json = false;
    bool inject_fault = false;

    CLI::App* analyze = app.add_subcommand("analyze", "report all indicators for one state");
    analyze->add_option("--state", state_path, "state JSON file")->required();
    analyze->add_option("--out", out_path, "write the report here instead of stdout");
    analyze->add_option("--tolerance", tolerance, "dual-route agreement tolerance");

    CLI::App* scan = app.add_subcommand("scan", "sample random states and test the envelopes");
    scan->add_option("--n", n, "number of states");
    scan->add_option("--seed", seed, "scan seed");
    scan->add_option("--mode", mode_name, "uniform | toward-pure | toward-werner | mixed");
    scan->add_option("--out", out_path, "CSV output path");
    scan->add_option("--tolerance", tolerance, "envelope tolerance");

    CLI::App* simulate = app.add_subcommand("simulate", "estimate correlations from finite shots");
    simulate->add_option("--state", state_spec, "bell | mixed | werner:E | file:PATH");
    simulate->add_option("--shots", shots, "shots per measurement setting");
    simulate->add_option("--seed", seed, "sampling seed");
    simulate->add_option("--out", out_path, "write the report here instead of stdout");

    CLI::App* perturb = app.add_subcommand("perturb", "first-order responses on a werner state");
    perturb->add_option("--eps", eps, "werner mixing parameter in (0, 1]");
    perturb->add_option("--seed", seed, "seed for the perturbation target state");
    perturb->add_option("--lambda", lambda, "finite-difference step");
    perturb->add_option("--out", out_path, "write the report here instead of stdout");

    CLI::App* verify = app.add_subcommand("verify", "run the closed-form identity suite");
    verify->add_flag("--json", as_json, "machine-readable results");
    verify->add_flag("--inject-g-fault", inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (analyze->parsed()) return run_analyze(state_path, out_path, tolerance);
        if (scan->parsed()) return run_scan(n, seed, mode_name, out_path, tolerance);
        if (simulate->parsed()) return run_simulate(state_spec, shots, seed, out_path);
        if (perturb->parsed()) return run_perturb(eps, seed, lambda, out_path);
        if (verify->parsed()) return run_verify(as_json, inject_fault);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitParse;
}
