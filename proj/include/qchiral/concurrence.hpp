#pragma once

#include "qchiral/linalg.hpp"
#include "qchiral/states.hpp"

namespace qchiral {

// spin flip: rho~ = (s2 x s2) conj(rho) (s2 x s2)
Complex4x4 spin_flip(const Complex4x4& rho);
DensityMatrix spin_flip(const DensityMatrix& rho);
Vec4c spin_flip_vec(const Vec4c& v);

// R = rho~ rho (not Hermitian, but its spectrum is real nonnegative)
Complex4x4 r_matrix(const DensityMatrix& rho);

// eigenvalues of R, sorted descending, clamped at zero, with a rank guard
// that pins eigenvalues of numerically rank-deficient R to exact zero
std::array<double, 4> r_eigenvalues(const DensityMatrix& rho);

double concurrence(const DensityMatrix& rho);
// sqrt(r1) - sqrt(r2) - sqrt(r3) - sqrt(r4) without the clamp at zero
double concurrence_signed(const DensityMatrix& rho);

// independent route: eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho))
double concurrence_hermitian_oracle(const DensityMatrix& rho);
// same route without the clamp; smooth across sign changes, which the
// finite-difference probes in the perturbation module rely on
double concurrence_hermitian_signed(const DensityMatrix& rho);

double concurrence_pure(const PureState& psi);
double concurrence_werner(double eps);
double concurrence_x(const XStateParams& p);

// right eigenvectors of R with left = spin-flipped right, normalized so that
// <v~_m | v_n> = delta_mn; throws DegeneracyError when the construction is
// ill posed (zero eigenvalues of R, or degeneracy without a Hermitian R)
struct ConcurrenceSpectrum {
    std::array<double, 4> r;
    std::array<Vec4c, 4> right;
    std::array<Vec4c, 4> left;
};

ConcurrenceSpectrum biorthogonal_system(const DensityMatrix& rho);

}  // namespace qchiral
