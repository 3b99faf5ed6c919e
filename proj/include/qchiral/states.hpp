#pragma once

#include <cstdint>
#include <vector>

#include "qchiral/linalg.hpp"

namespace qchiral {

// basis order |00>, |01>, |10>, |11>; first index is qubit A
struct DensityMatrix {
    Complex4x4 m;
};

struct PureState {
    Vec4c amp;
};

struct Qubit {
    cplx x0, x1;
};

// one product term p * |a><a| (x) |b><b|
struct EnsembleTerm {
    double p;
    Qubit a;
    Qubit b;
};

using EnsembleSpec = std::vector<EnsembleTerm>;

// X-shaped density matrix with real entries, rows
// (q,0,0,v), (0,r,u,0), (0,u,s,0), (v,0,0,t)
struct XStateParams {
    double q, r, s, t, u, v;
};

struct ValidationLimits {
    double trace = 1e-12;
    double hermiticity = 1e-12;
    double eig_floor = -1e-10;
};

// throws NormalizationError / ConstraintError / PositivityError
void validate_density(const DensityMatrix& rho, const ValidationLimits& lim = {});

DensityMatrix make_density(const Complex4x4& m, const ValidationLimits& lim = {});

DensityMatrix from_pure(const PureState& psi);

// rho_W = (1-eps)/4 I + eps |Phi+><Phi+|, eps in [-1/3, 1]; RangeError outside
DensityMatrix werner(double eps);

// throws ConstraintError when parameters break positivity or trace
DensityMatrix x_state(const XStateParams& p);

// throws WeightError on bad weights, CardinalityError on more than 4 terms
DensityMatrix from_ensemble(const EnsembleSpec& spec);

PureState bell_state();
DensityMatrix maximally_mixed();

PureState normalize(const PureState& psi);
PureState random_pure(std::uint64_t seed);

enum class BiasMode { Uniform, TowardPure, TowardWerner };

DensityMatrix random_density(std::uint64_t seed);
DensityMatrix random_density_biased(std::uint64_t seed, BiasMode mode);

Qubit qubit_from_bloch(const Vec3& n);
Vec3 qubit_bloch(const Qubit& q);

Mat2 random_unitary2(std::uint64_t seed);
DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Mat2& ua, const Mat2& ub);
PureState apply_local_unitary(const PureState& psi, const Mat2& ua, const Mat2& ub);

}  // namespace qchiral
