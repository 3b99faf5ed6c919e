#include "qchiral/sinisterness.hpp"

#include <cmath>

#include "qchiral/errors.hpp"

namespace qchiral {

namespace {

constexpr double kSingularFloor = 1e-12;

double real_checked(cplx z, const char* what) {
    if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z.real()))) {
        throw NumericalError(std::string(what) + " has a non-real value");
    }
    return z.real();
}

}  // namespace

Complex4x4 g_rearrange(const Complex4x4& rho) {
    Complex4x4 g;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    g(2 * a + b, 2 * c + d) = rho(2 * a + c, 2 * b + d);
    return g;
}

Complex4x4 g_matrix(const DensityMatrix& rho) { return g_rearrange(rho.m); }

double sinisterness(const DensityMatrix& rho) {
    const cplx det = det4(g_matrix(rho));
    return real_checked(-16.0 * det, "Det{G}");
}

double sinisterness_from_c(const Real3x3& c) { return det3_levi_civita(c); }

double sinisterness_from_gamma(const Real4x4& gamma) { return det4(gamma); }

double sinisterness_checked(const DensityMatrix& rho, double tol) {
    const double via_g = sinisterness(rho);
    const double via_c = sinisterness_from_c(decompose(rho).c);
    if (std::abs(via_g - via_c) > tol * (1.0 + std::abs(via_g))) {
        throw PathDisagreement("correlation-determinant and rearrangement routes disagree");
    }
    return via_g;
}

ChiralSVD chiral_svd(const Real3x3& c) {
    const Svd3 f = svd3(c);
    for (double s : f.s) {
        if (s < kSingularFloor) {
            throw ChiralityUndefined("singular value below the chirality floor");
        }
    }
    ChiralSVD out;
    out.U = f.U;
    out.V = f.V;
    out.s = f.s;
    out.detU = det3_levi_civita(f.U) > 0.0 ? 1.0 : -1.0;
    out.detV = det3_levi_civita(f.V) > 0.0 ? 1.0 : -1.0;
    out.sinister = (out.detU * out.detV < 0.0) && (f.s[0] * f.s[1] * f.s[2] > kSingularFloor);
    return out;
}

Chirality classify(const Real3x3& c) {
    ChiralSVD f;
    try {
        f = chiral_svd(c);
    } catch (const ChiralityUndefined&) {
        return Chirality::Undefined;
    }
    if (f.s[0] * f.s[1] * f.s[2] <= kSingularFloor) return Chirality::Undefined;
    return f.sinister ? Chirality::Sinister : Chirality::Dexter;
}

std::string to_string(Chirality ch) {
    switch (ch) {
        case Chirality::Sinister: return "sinister";
        case Chirality::Dexter: return "dexter";
        default: return "undefined";
    }
}

double sinisterness_pure(const PureState& psi) {
    double n2 = 0.0;
    for (const cplx& z : psi.amp) n2 += std::norm(z);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-9) {
        throw RangeError("pure state amplitudes are not normalized");
    }
    const double q = 2.0 * std::abs(psi.amp[0] * psi.amp[3] - psi.amp[1] * psi.amp[2]);
    const double q2 = q * q;
    return -q2 * q2;
}

double sinisterness_werner(double eps) {
    if (eps < -1.0 / 3.0 - 1e-15 || eps > 1.0 + 1e-15) {
        throw RangeError("werner mixing parameter outside [-1/3, 1]");
    }
    return -eps * eps * eps;
}

double sinisterness_x(const XStateParams& p) {
    x_state(p);
    return -16.0 * (p.v * p.v - p.u * p.u) * (p.q * p.t - p.r * p.s);
}

Complex4x4 g_via_swap(const Complex4x4& rho) {
    Complex4x4 swap;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) swap(2 * a + b, 2 * b + a) = 1.0;
    // partial transpose on the first factor
    const Complex4x4 sr = swap * rho;
    Complex4x4 ta;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    ta(2 * i + k, 2 * j + l) = sr(2 * j + k, 2 * i + l);
    return swap * ta;
}

Complex4x4 w_matrix() {
    const double h = 1.0 / std::sqrt(2.0);
    const cplx ih(0.0, 1.0);
    Complex4x4 w;
    w(0, 0) = h;
    w(0, 3) = h;
    w(1, 1) = h;
    w(1, 2) = h;
    w(2, 1) = ih * h;
    w(2, 2) = -ih * h;
    w(3, 0) = h;
    w(3, 3) = -h;
    return w;
}

Real4x4 gamma_from_g(const Complex4x4& g) {
    const Complex4x4 w = w_matrix();
    const Complex4x4 m = w * g * transpose(w);
    // the sign conventions of the second and third Pauli operators flip rows
    // and columns 2 and 3 relative to the standard choice
    Real4x4 gamma;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double sign = ((i >= 2) ? -1.0 : 1.0) * ((j >= 2) ? -1.0 : 1.0);
            gamma(i, j) = sign * 2.0 * real_checked(m(i, j), "2 W G W^T entry");
        }
    }
    return gamma;
}

}  // namespace qchiral
