#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qchiral/bloch.hpp"
#include "qchiral/states.hpp"

namespace qchiral {

enum class ScanMode { Uniform, TowardPure, TowardWerner, Mixed };

ScanMode scan_mode_from_string(const std::string& s);
std::string to_string(ScanMode m);

struct ScanRecord {
    std::uint64_t seed;
    ScanMode mode;
    double concurrence;
    double sinisterness;
    double purity;
    bool separable;  // concurrence below threshold
    bool violates_upper;
    bool violates_lower;
    bool violates_range;
};

struct ScanSummary {
    std::size_t n;
    std::size_t violations;
    std::size_t separable_count;
    double min_sinisterness;
    double max_sinisterness;
    double mean_purity;
};

// OpenMP path and the serial reference; outputs are bit-identical
std::vector<ScanRecord> scan_random_states(std::uint64_t seed, std::size_t n, ScanMode mode,
                                           double tol = 1e-9);
std::vector<ScanRecord> scan_random_states_serial(std::uint64_t seed, std::size_t n, ScanMode mode,
                                                  double tol = 1e-9);

ScanSummary summarize(const std::vector<ScanRecord>& records);
void write_scan_csv(const std::string& path, const std::vector<ScanRecord>& records);

struct MeasurementEstimate {
    std::size_t shots;
    Vec3 a_hat;
    Vec3 b_hat;
    Real3x3 c_hat;
    double s_hat;
    double s_exact;
    double std_error;
};

// simulated two-qubit correlation measurements: for each of the nine local
// settings, draws `shots` outcome pairs and forms the plug-in estimate of c
MeasurementEstimate simulate_measurements(const DensityMatrix& rho, std::size_t shots,
                                          std::uint64_t seed);

struct ConvergenceRow {
    std::size_t shots;
    double rms_error;
    double mean_abs_error;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double slope;  // d log10(rms) / d log10(shots); NaN with fewer than 2 rows
    bool has_slope;
};

ConvergenceTable estimator_convergence(const DensityMatrix& rho,
                                       const std::vector<std::size_t>& shot_ladder,
                                       std::size_t repeats, std::uint64_t seed);

}  // namespace qchiral
