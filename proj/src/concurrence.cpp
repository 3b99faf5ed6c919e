#include "qchiral/concurrence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qchiral/errors.hpp"

namespace qchiral {

namespace {

constexpr double kRankFloor = 1e-12;
constexpr double kZeroEig = 1e-10;
constexpr double kGapFloor = 1e-8;

const Complex4x4& yy_matrix() {
    static const Complex4x4 yy = [] {
        Complex4x4 m;
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();
    return yy;
}

// <v~|u> reduces to the symmetric bilinear form v^T (s2 x s2) u
cplx flip_form(const Vec4c& v, const Vec4c& u) {
    return -v[0] * u[3] + v[1] * u[2] + v[2] * u[1] - v[3] * u[0];
}

// eigenvalues of R with numerically rank-deficient directions pinned to zero
std::array<cplx, 4> guarded_roots(const Complex4x4& r) {
    auto roots = eig4(r);
    const auto piv = lu_pivot_magnitudes(r);
    int rank = 0;
    for (double p : piv)
        if (p > kRankFloor) ++rank;
    if (rank < 4) {
        std::array<int, 4> idx = {0, 1, 2, 3};
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return std::abs(roots[a]) < std::abs(roots[b]); });
        for (int k = 0; k < 4 - rank; ++k) roots[idx[k]] = 0.0;
    }
    for (cplx& z : roots) {
        if (z.imag() == 0.0 && z.real() < 0.0 && z.real() > -kZeroEig) z = 0.0;
    }
    return roots;
}

std::array<double, 4> hermitian_lambdas(const DensityMatrix& rho) {
    const Complex4x4 root = sqrt_psd(rho.m);
    const HermEig4 eg = eig4_hermitian(root * spin_flip(rho.m) * root);
    const double floor = 1e-13 * std::max(eg.w[0], 0.0);
    std::array<double, 4> lam;
    for (int i = 0; i < 4; ++i) {
        const double w = (eg.w[i] <= floor) ? 0.0 : eg.w[i];
        lam[i] = std::sqrt(w);
    }
    return lam;
}

// cyclic Jacobi for the small real symmetric cluster Gram matrices
void jacobi_small(std::vector<double>& a, std::vector<double>& q, int n) {
    q.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) q[static_cast<size_t>(i) * n + i] = 1.0;
    auto at = [&](std::vector<double>& m, int r, int c) -> double& {
        return m[static_cast<size_t>(r) * n + c];
    };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int r = p + 1; r < n; ++r) off += std::abs(at(a, p, r));
        if (off < 1e-15) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int r = p + 1; r < n; ++r) {
                const double apq = at(a, p, r);
                if (std::abs(apq) < 1e-18) continue;
                const double theta = 0.5 * (at(a, r, r) - at(a, p, p)) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(a, k, p);
                    const double akq = at(a, k, r);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, r) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(a, p, k);
                    const double aqk = at(a, r, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, r, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double qkp = at(q, k, p);
                    const double qkq = at(q, k, r);
                    at(q, k, p) = c * qkp - s * qkq;
                    at(q, k, r) = s * qkp + c * qkq;
                }
            }
        }
    }
}

Vec4c normalized_by_form(Vec4c v) {
    const cplx b = flip_form(v, v);
    if (std::abs(b) < 1e-8) {
        throw DegeneracyError("eigenvector nearly isotropic under the spin-flip form");
    }
    const cplx scale = 1.0 / std::sqrt(b);
    for (cplx& z : v) z *= scale;
    return v;
}

}  // namespace

Complex4x4 spin_flip(const Complex4x4& rho) {
    const Complex4x4& yy = yy_matrix();
    return yy * conjugate(rho) * yy;
}

DensityMatrix spin_flip(const DensityMatrix& rho) { return DensityMatrix{spin_flip(rho.m)}; }

Vec4c spin_flip_vec(const Vec4c& v) {
    return {-std::conj(v[3]), std::conj(v[2]), std::conj(v[1]), -std::conj(v[0])};
}

Complex4x4 r_matrix(const DensityMatrix& rho) { return spin_flip(rho.m) * rho.m; }

std::array<double, 4> r_eigenvalues(const DensityMatrix& rho) {
    const auto roots = guarded_roots(r_matrix(rho));
    std::array<double, 4> w;
    for (int i = 0; i < 4; ++i) w[i] = std::max(roots[i].real(), 0.0);
    std::sort(w.begin(), w.end(), std::greater<>());
    return w;
}

double concurrence_signed(const DensityMatrix& rho) {
    const auto roots = guarded_roots(r_matrix(rho));
    // roots are sorted by real part, largest first; summing the square roots
    // in complex arithmetic lets noise on split near-multiple roots cancel
    cplx s = std::sqrt(roots[0]);
    for (int i = 1; i < 4; ++i) s -= std::sqrt(roots[i]);
    return s.real();
}

double concurrence(const DensityMatrix& rho) { return std::max(concurrence_signed(rho), 0.0); }

double concurrence_hermitian_signed(const DensityMatrix& rho) {
    const auto lam = hermitian_lambdas(rho);
    return lam[0] - lam[1] - lam[2] - lam[3];
}

double concurrence_hermitian_oracle(const DensityMatrix& rho) {
    return std::max(concurrence_hermitian_signed(rho), 0.0);
}

double concurrence_pure(const PureState& psi) {
    double n2 = 0.0;
    for (const cplx& z : psi.amp) n2 += std::norm(z);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-9) {
        throw RangeError("pure state amplitudes are not normalized");
    }
    return 2.0 * std::abs(psi.amp[0] * psi.amp[3] - psi.amp[1] * psi.amp[2]);
}

double concurrence_werner(double eps) {
    if (eps < -1.0 / 3.0 - 1e-15 || eps > 1.0 + 1e-15) {
        throw RangeError("werner mixing parameter outside [-1/3, 1]");
    }
    return std::max((3.0 * eps - 1.0) / 2.0, 0.0);
}

double concurrence_x(const XStateParams& p) {
    x_state(p);
    return 2.0 * std::max({p.u - std::sqrt(p.q * p.t), p.v - std::sqrt(p.r * p.s), 0.0});
}

ConcurrenceSpectrum biorthogonal_system(const DensityMatrix& rho) {
    const Complex4x4 r = r_matrix(rho);
    ConcurrenceSpectrum out;
    out.r = r_eigenvalues(rho);
    if (out.r[3] < kZeroEig) {
        throw DegeneracyError("spin-flip product has an eigenvalue at zero");
    }
    double min_gap = out.r[0] - out.r[1];
    for (int i = 1; i < 3; ++i) min_gap = std::min(min_gap, out.r[i] - out.r[i + 1]);

    if (min_gap >= kGapFloor) {
        for (int n = 0; n < 4; ++n) {
            Complex4x4 shifted = r;
            for (int i = 0; i < 4; ++i) shifted(i, i) -= out.r[n];
            out.right[n] = normalized_by_form(null_vector(shifted));
            out.left[n] = spin_flip_vec(out.right[n]);
        }
        return out;
    }

    if (hermiticity_defect(r) > 1e-10) {
        throw DegeneracyError("degenerate spectrum of a non-Hermitian spin-flip product");
    }
    const HermEig4 eg = eig4_hermitian(r);
    for (int i = 0; i < 4; ++i) out.r[i] = std::max(eg.w[i], 0.0);

    std::array<Vec4c, 4> cols;
    for (int n = 0; n < 4; ++n)
        for (int i = 0; i < 4; ++i) cols[n][i] = eg.V(i, n);

    int lo = 0;
    while (lo < 4) {
        int hi = lo;
        while (hi + 1 < 4 && eg.w[hi] - eg.w[hi + 1] < kGapFloor) ++hi;
        const int k = hi - lo + 1;
        if (k == 1) {
            out.right[lo] = normalized_by_form(cols[lo]);
        } else {
            // re-orthogonalize the cluster with respect to the spin-flip form
            std::vector<double> gram(static_cast<size_t>(k) * k, 0.0);
            for (int a = 0; a < k; ++a) {
                for (int b = 0; b < k; ++b) {
                    const cplx s = flip_form(cols[lo + a], cols[lo + b]);
                    if (std::abs(s.imag()) > 1e-10) {
                        throw DegeneracyError("cluster Gram of the spin-flip form is not real");
                    }
                    gram[static_cast<size_t>(a) * k + b] = s.real();
                }
            }
            std::vector<double> q;
            jacobi_small(gram, q, k);
            for (int m = 0; m < k; ++m) {
                const double d = gram[static_cast<size_t>(m) * k + m];
                if (std::abs(d) < 1e-8) {
                    throw DegeneracyError("cluster direction isotropic under the spin-flip form");
                }
                const cplx scale = 1.0 / std::sqrt(cplx(d, 0.0));
                Vec4c v = {0.0, 0.0, 0.0, 0.0};
                for (int t = 0; t < k; ++t) {
                    const double qtm = q[static_cast<size_t>(t) * k + m];
                    for (int i = 0; i < 4; ++i) v[i] += qtm * cols[lo + t][i];
                }
                for (cplx& z : v) z *= scale;
                out.right[lo + m] = v;
            }
        }
        lo = hi + 1;
    }
    for (int n = 0; n < 4; ++n) out.left[n] = spin_flip_vec(out.right[n]);
    return out;
}

}  // namespace qchiral
