#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace qchiral {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Vec4c = std::array<cplx, 4>;
using Mat2 = std::array<cplx, 4>;  // row-major 2x2

struct Real3x3 {
    std::array<double, 9> e{};
    double& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * 3 + c]; }
    double operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * 3 + c]; }
    static Real3x3 identity();
};

struct Real4x4 {
    std::array<double, 16> e{};
    double& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * 4 + c]; }
    double operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * 4 + c]; }
};

struct Complex4x4 {
    std::array<cplx, 16> e{};
    cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * 4 + c]; }
    const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * 4 + c]; }
    static Complex4x4 identity();
};

// four complex numbers sorted by descending real part, ties by descending imag
using Eigenvalues4 = std::array<cplx, 4>;

Complex4x4 operator+(const Complex4x4& a, const Complex4x4& b);
Complex4x4 operator-(const Complex4x4& a, const Complex4x4& b);
Complex4x4 operator*(const Complex4x4& a, const Complex4x4& b);
Complex4x4 operator*(cplx s, const Complex4x4& a);
Complex4x4 operator*(double s, const Complex4x4& a);

Complex4x4 adjoint(const Complex4x4& a);
Complex4x4 conjugate(const Complex4x4& a);
Complex4x4 transpose(const Complex4x4& a);
cplx trace(const Complex4x4& a);
double max_abs(const Complex4x4& a);
double hermiticity_defect(const Complex4x4& a);  // max |a - a^dagger|
Vec4c mul(const Complex4x4& a, const Vec4c& x);
cplx inner(const Vec4c& x, const Vec4c& y);     // <x|y>, conjugates x
cplx bilinear(const Vec4c& x, const Vec4c& y);  // sum x_i y_i, no conjugation
Complex4x4 outer(const Vec4c& x, const Vec4c& y);  // |x><y|
Complex4x4 kron2x2(const Mat2& a, const Mat2& b);

double norm2(const Vec3& v);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 sub(const Vec3& a, const Vec3& b);

// Determinant as the explicit epsilon-tensor double sum
// (1/6) sum eps_ijk eps_lmn m_il m_jm m_kn.
double det3_levi_civita(const Real3x3& m);

double det4(const Real4x4& m);
cplx det4(const Complex4x4& m);  // LU with partial pivoting

struct Svd3 {
    Real3x3 U;
    std::array<double, 3> s;  // descending, nonnegative
    Real3x3 V;
};

// m = U diag(s) V^T. Built from a Jacobi eigen-decomposition of m^T m with
// cross-product completion of U where singular values fall below 1e-12, so
// the orthogonal factors are deterministic even for rank-deficient input.
Svd3 svd3(const Real3x3& m);

// Roots of the characteristic polynomial (Faddeev-LeVerrier coefficients,
// quartic solver, one Newton step per root). Roots with
// |imag| < 1e-9 (1 + |real|) are projected onto the real axis.
Eigenvalues4 eig4(const Complex4x4& m);

struct HermEig4 {
    std::array<double, 4> w;  // descending
    Complex4x4 V;             // unitary, columns are eigenvectors
};

// Cyclic complex Jacobi rotations; input must be Hermitian.
HermEig4 eig4_hermitian(const Complex4x4& m);

// V sqrt(diag(clamped w)) V^dagger for Hermitian PSD input.
Complex4x4 sqrt_psd(const Complex4x4& m);

// Magnitudes of the full-pivot LU pivots, descending. Used as a rank probe.
std::array<double, 4> lu_pivot_magnitudes(const Complex4x4& m);

// Unit null vector of a rank-3 matrix via full-pivot elimination.
Vec4c null_vector(const Complex4x4& m);

namespace detail {
// roots of x^4 + c3 x^3 + c2 x^2 + c1 x + c0, unordered
std::array<cplx, 4> solve_quartic(cplx c3, cplx c2, cplx c1, cplx c0);
}  // namespace detail

}  // namespace qchiral
