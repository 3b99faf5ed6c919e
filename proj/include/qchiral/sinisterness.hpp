#pragma once

#include <string>

#include "qchiral/bloch.hpp"
#include "qchiral/linalg.hpp"
#include "qchiral/states.hpp"

namespace qchiral {

// index rearrangement G[(ij),(kl)] = rho[(ik),(jl)] on flat indices
Complex4x4 g_rearrange(const Complex4x4& rho);
Complex4x4 g_matrix(const DensityMatrix& rho);

// S = -16 Det{G}; NumericalError if the determinant picks up an imaginary
// part beyond tolerance
double sinisterness(const DensityMatrix& rho);

// S = Det{c} from the correlation matrix
double sinisterness_from_c(const Real3x3& c);
double sinisterness_from_gamma(const Real4x4& gamma);

// both routes, cross-checked; throws PathDisagreement beyond tol
double sinisterness_checked(const DensityMatrix& rho, double tol = 1e-9);

enum class Chirality { Sinister, Dexter, Undefined };

struct ChiralSVD {
    Real3x3 U;
    Real3x3 V;
    std::array<double, 3> s;
    double detU;
    double detV;
    bool sinister;
};

// throws ChiralityUndefined when any singular value is below 1e-12
ChiralSVD chiral_svd(const Real3x3& c);

Chirality classify(const Real3x3& c);
std::string to_string(Chirality ch);

// closed forms
double sinisterness_pure(const PureState& psi);
double sinisterness_werner(double eps);
double sinisterness_x(const XStateParams& p);

// cross-check helpers: G via SWAP and partial transpose, Gamma = 2 W G W^T
Complex4x4 g_via_swap(const Complex4x4& rho);
Complex4x4 w_matrix();
Real4x4 gamma_from_g(const Complex4x4& g);

}  // namespace qchiral
