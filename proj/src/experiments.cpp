#include "qchiral/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>

#include "qchiral/concurrence.hpp"
#include "qchiral/errors.hpp"
#include "qchiral/rng.hpp"
#include "qchiral/sinisterness.hpp"

namespace qchiral {

namespace {

constexpr double kSeparableCap = 1.0 / 27.0;

ScanRecord make_record(std::uint64_t root_seed, std::size_t index, ScanMode mode, double tol) {
    const std::uint64_t record_seed = derive_seed(root_seed, index);
    BiasMode bias = BiasMode::Uniform;
    ScanMode resolved = mode;
    if (mode == ScanMode::Mixed) {
        Rng pick(derive_seed(record_seed, 11));
        switch (pick.next() % 3) {
            case 0: resolved = ScanMode::Uniform; break;
            case 1: resolved = ScanMode::TowardPure; break;
            default: resolved = ScanMode::TowardWerner; break;
        }
    }
    switch (resolved) {
        case ScanMode::Uniform: bias = BiasMode::Uniform; break;
        case ScanMode::TowardPure: bias = BiasMode::TowardPure; break;
        case ScanMode::TowardWerner: bias = BiasMode::TowardWerner; break;
        default: break;
    }
    const DensityMatrix rho = random_density_biased(record_seed, bias);

    ScanRecord rec;
    rec.seed = record_seed;
    rec.mode = resolved;
    rec.concurrence = concurrence(rho);
    rec.sinisterness = sinisterness(rho);
    rec.purity = purity(rho);
    rec.separable = rec.concurrence <= 0.0;

    // entangled records are bounded by the pure-state and Werner curves;
    // separable ones sit in the classical band instead, where positive
    // values up to 1/27 are legitimate and the curves do not apply
    const double c = rec.concurrence;
    const double c4 = c * c * c * c;
    const double lower = std::pow((2.0 * c + 1.0) / 3.0, 3);
    rec.violates_upper = !rec.separable && rec.sinisterness > -c4 + tol;
    rec.violates_lower = !rec.separable && rec.sinisterness < -lower - tol;
    rec.violates_range = rec.separable && std::abs(rec.sinisterness) > kSeparableCap + tol;
    return rec;
}

double adjugate_entry(const Real3x3& m, int r, int c) {
    // cofactor expansion entry: adj(m)(c, r) up to the transpose handled at
    // the call site; returns d det / d m(r, c)
    const int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
    const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
    return m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1);
}

}  // namespace

ScanMode scan_mode_from_string(const std::string& s) {
    if (s == "uniform") return ScanMode::Uniform;
    if (s == "toward-pure") return ScanMode::TowardPure;
    if (s == "toward-werner") return ScanMode::TowardWerner;
    if (s == "mixed") return ScanMode::Mixed;
    throw RangeError("unknown scan mode: " + s);
}

std::string to_string(ScanMode m) {
    switch (m) {
        case ScanMode::Uniform: return "uniform";
        case ScanMode::TowardPure: return "toward-pure";
        case ScanMode::TowardWerner: return "toward-werner";
        default: return "mixed";
    }
}

std::vector<ScanRecord> scan_random_states(std::uint64_t seed, std::size_t n, ScanMode mode,
                                           double tol) {
    std::vector<ScanRecord> records(n);
    const std::int64_t count = static_cast<std::int64_t>(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < count; ++i) {
        records[static_cast<std::size_t>(i)] =
            make_record(seed, static_cast<std::size_t>(i), mode, tol);
    }
    return records;
}

std::vector<ScanRecord> scan_random_states_serial(std::uint64_t seed, std::size_t n, ScanMode mode,
                                                  double tol) {
    std::vector<ScanRecord> records(n);
    for (std::size_t i = 0; i < n; ++i) records[i] = make_record(seed, i, mode, tol);
    return records;
}

ScanSummary summarize(const std::vector<ScanRecord>& records) {
    ScanSummary s{};
    s.n = records.size();
    if (records.empty()) return s;
    s.min_sinisterness = records[0].sinisterness;
    s.max_sinisterness = records[0].sinisterness;
    double purity_sum = 0.0;
    for (const ScanRecord& r : records) {
        if (r.violates_upper || r.violates_lower || r.violates_range) ++s.violations;
        if (r.separable) ++s.separable_count;
        s.min_sinisterness = std::min(s.min_sinisterness, r.sinisterness);
        s.max_sinisterness = std::max(s.max_sinisterness, r.sinisterness);
        purity_sum += r.purity;
    }
    s.mean_purity = purity_sum / static_cast<double>(s.n);
    return s;
}

void write_scan_csv(const std::string& path, const std::vector<ScanRecord>& records) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output path: " + path);
    out << "seed,mode,concurrence,sinisterness,purity,separable,violation\n";
    char buf[128];
    for (const ScanRecord& r : records) {
        const int violation = (r.violates_upper || r.violates_lower || r.violates_range) ? 1 : 0;
        std::snprintf(buf, sizeof(buf), "%llu,%s,%.17g,%.17g,%.17g,%d,%d",
                      static_cast<unsigned long long>(r.seed), to_string(r.mode).c_str(),
                      r.concurrence, r.sinisterness, r.purity, r.separable ? 1 : 0, violation);
        out << buf << '\n';
    }
    if (!out) throw ParseError("failed while writing: " + path);
}

MeasurementEstimate simulate_measurements(const DensityMatrix& rho, std::size_t shots,
                                          std::uint64_t seed) {
    if (shots < 1) throw RangeError("shots must be at least 1");
    const BlochData d = decompose(rho);

    MeasurementEstimate est{};
    est.shots = shots;
    double mean_x[3][3];
    double mean_y[3][3];
    double mean_xy[3][3];

    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            // joint pmf over (x, y) in {(+,+), (+,-), (-,+), (-,-)}
            double p[4];
            int idx = 0;
            for (int x = 1; x >= -1; x -= 2) {
                for (int y = 1; y >= -1; y -= 2) {
                    const double v =
                        (1.0 + x * d.a[i - 1] + y * d.b[j - 1] + x * y * d.gamma(i, j)) / 4.0;
                    p[idx++] = std::max(v, 0.0);
                }
            }
            const double total = p[0] + p[1] + p[2] + p[3];
            for (double& v : p) v /= total;
            const double q1 = p[0];
            const double q2 = p[0] + p[1];
            const double q3 = p[0] + p[1] + p[2];

            Rng g(derive_seed(seed, static_cast<std::uint64_t>(3 * (i - 1) + (j - 1))));
            std::int64_t n_pp = 0, n_pm = 0, n_mp = 0;
            for (std::size_t s = 0; s < shots; ++s) {
                const double u = g.uniform01();
                if (u < q1) ++n_pp;
                else if (u < q2) ++n_pm;
                else if (u < q3) ++n_mp;
            }
            const std::int64_t n_mm =
                static_cast<std::int64_t>(shots) - n_pp - n_pm - n_mp;
            const double n = static_cast<double>(shots);
            mean_x[i - 1][j - 1] = static_cast<double>(n_pp + n_pm - n_mp - n_mm) / n;
            mean_y[i - 1][j - 1] = static_cast<double>(n_pp - n_pm + n_mp - n_mm) / n;
            mean_xy[i - 1][j - 1] = static_cast<double>(n_pp - n_pm - n_mp + n_mm) / n;
        }
    }

    for (int i = 0; i < 3; ++i) {
        est.a_hat[i] = (mean_x[i][0] + mean_x[i][1] + mean_x[i][2]) / 3.0;
        est.b_hat[i] = (mean_y[0][i] + mean_y[1][i] + mean_y[2][i]) / 3.0;
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double c = mean_xy[i][j] - mean_x[i][j] * mean_y[i][j];
            est.c_hat(i, j) = std::clamp(c, -1.0, 1.0);
        }
    }
    est.s_hat = det3_levi_civita(est.c_hat);
    est.s_exact = det3_levi_civita(d.c);

    // plug-in error propagation through the determinant cofactors
    double var = 0.0;
    const double n = static_cast<double>(shots);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double cof = adjugate_entry(est.c_hat, i, j);
            const double vij = std::max(1.0 - mean_xy[i][j] * mean_xy[i][j], 0.0) / n;
            var += cof * cof * vij;
        }
    }
    est.std_error = std::sqrt(var);
    return est;
}

ConvergenceTable estimator_convergence(const DensityMatrix& rho,
                                       const std::vector<std::size_t>& shot_ladder,
                                       std::size_t repeats, std::uint64_t seed) {
    if (repeats < 1) throw RangeError("repeats must be at least 1");
    const double s_exact = det3_levi_civita(decompose(rho).c);

    ConvergenceTable table;
    table.rows.reserve(shot_ladder.size());
    for (std::size_t k = 0; k < shot_ladder.size(); ++k) {
        const std::size_t shots = shot_ladder[k];
        std::vector<double> err(repeats);
        const std::int64_t count = static_cast<std::int64_t>(repeats);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t r = 0; r < count; ++r) {
            const std::uint64_t rep_seed =
                derive_seed(derive_seed(seed, k), static_cast<std::uint64_t>(r));
            const MeasurementEstimate est = simulate_measurements(rho, shots, rep_seed);
            err[static_cast<std::size_t>(r)] = est.s_hat - s_exact;
        }
        double sq = 0.0;
        double ab = 0.0;
        for (double e : err) {
            sq += e * e;
            ab += std::abs(e);
        }
        const double m = static_cast<double>(repeats);
        table.rows.push_back({shots, std::sqrt(sq / m), ab / m});
    }

    table.has_slope = table.rows.size() >= 2;
    table.slope = std::numeric_limits<double>::quiet_NaN();
    if (table.has_slope) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double m = static_cast<double>(table.rows.size());
        for (const ConvergenceRow& row : table.rows) {
            const double x = std::log10(static_cast<double>(row.shots));
            const double y = std::log10(std::max(row.rms_error, 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        table.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return table;
}

}  // namespace qchiral
