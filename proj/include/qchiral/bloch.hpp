#pragma once

#include "qchiral/linalg.hpp"
#include "qchiral/states.hpp"

namespace qchiral {

// sigma_1 = [[0,1],[1,0]], sigma_2 = [[0,i],[-i,0]], sigma_3 = diag(-1,1);
// with these signs |0> carries a3 = -1
Mat2 sigma2(int mu);  // mu in 0..3, sigma_0 = I

Complex4x4 pauli_pair(int mu, int nu);

// local vectors, correlation matrix (covariance form, no 1/4) and the full
// 4x4 correlation block Gamma with Gamma_00 = 1
struct BlochData {
    Vec3 a;
    Vec3 b;
    Real3x3 c;
    Real4x4 gamma;
};

BlochData decompose(const DensityMatrix& rho);

// fills gamma from (a, b, c)
BlochData make_bloch(const Vec3& a, const Vec3& b, const Real3x3& c);

struct FanoResult {
    DensityMatrix rho;
    bool psd;
    double min_eig;
};

// rho = (1/4) sum Gamma_{mu nu} sigma_mu (x) sigma_nu; reports whether the
// reconstruction is a physical state
FanoResult fano_reconstruct(const Real4x4& gamma);
FanoResult fano_reconstruct(const BlochData& d);

double purity_from_gamma(const Real4x4& gamma);
double purity(const DensityMatrix& rho);

}  // namespace qchiral
