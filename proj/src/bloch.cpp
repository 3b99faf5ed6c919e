#include "qchiral/bloch.hpp"

#include <cmath>
#include <string>

#include "qchiral/errors.hpp"

namespace qchiral {

Mat2 sigma2(int mu) {
    switch (mu) {
        case 0: return Mat2{1.0, 0.0, 0.0, 1.0};
        case 1: return Mat2{0.0, 1.0, 1.0, 0.0};
        case 2: return Mat2{0.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 0.0};
        case 3: return Mat2{-1.0, 0.0, 0.0, 1.0};
        default: throw RangeError("pauli index " + std::to_string(mu));
    }
}

Complex4x4 pauli_pair(int mu, int nu) { return kron2x2(sigma2(mu), sigma2(nu)); }

namespace {

double real_expectation(const Complex4x4& rho, const Complex4x4& op) {
    cplx s = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) s += rho(r, c) * op(c, r);
    if (std::abs(s.imag()) > 1e-9)
        throw NumericalError("pauli expectation has imaginary part " +
                             std::to_string(s.imag()));
    return s.real();
}

}  // namespace

BlochData decompose(const DensityMatrix& rho) {
    BlochData d;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            d.gamma(mu, nu) = real_expectation(rho.m, pauli_pair(mu, nu));
    for (int i = 0; i < 3; ++i) {
        d.a[i] = d.gamma(i + 1, 0);
        d.b[i] = d.gamma(0, i + 1);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d.c(i, j) = d.gamma(i + 1, j + 1) - d.a[i] * d.b[j];
    return d;
}

BlochData make_bloch(const Vec3& a, const Vec3& b, const Real3x3& c) {
    BlochData d;
    d.a = a;
    d.b = b;
    d.c = c;
    d.gamma(0, 0) = 1.0;
    for (int i = 0; i < 3; ++i) {
        d.gamma(i + 1, 0) = a[i];
        d.gamma(0, i + 1) = b[i];
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d.gamma(i + 1, j + 1) = c(i, j) + a[i] * b[j];
    return d;
}

FanoResult fano_reconstruct(const Real4x4& gamma) {
    Complex4x4 m;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const double g = gamma(mu, nu);
            if (g == 0.0) continue;
            m = m + (0.25 * g) * pauli_pair(mu, nu);
        }
    FanoResult out{DensityMatrix{m}, false, 0.0};
    Complex4x4 h;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    out.min_eig = eig4_hermitian(h).w[3];
    out.psd = out.min_eig >= -1e-10;
    return out;
}

FanoResult fano_reconstruct(const BlochData& d) { return fano_reconstruct(d.gamma); }

double purity_from_gamma(const Real4x4& gamma) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) s += gamma(mu, nu) * gamma(mu, nu);
    return s / 4.0;
}

double purity(const DensityMatrix& rho) { return trace(rho.m * rho.m).real(); }

}  // namespace qchiral
