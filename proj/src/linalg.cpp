#include "qchiral/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qchiral {

Real3x3 Real3x3::identity() {
    Real3x3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
}

Complex4x4 Complex4x4::identity() {
    Complex4x4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Complex4x4 operator+(const Complex4x4& a, const Complex4x4& b) {
    Complex4x4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Complex4x4 operator-(const Complex4x4& a, const Complex4x4& b) {
    Complex4x4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

Complex4x4 operator*(const Complex4x4& a, const Complex4x4& b) {
    Complex4x4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Complex4x4 operator*(cplx s, const Complex4x4& a) {
    Complex4x4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = s * a.e[i];
    return r;
}

Complex4x4 operator*(double s, const Complex4x4& a) { return cplx(s, 0.0) * a; }

Complex4x4 adjoint(const Complex4x4& a) {
    Complex4x4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

Complex4x4 conjugate(const Complex4x4& a) {
    Complex4x4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = std::conj(a.e[i]);
    return r;
}

Complex4x4 transpose(const Complex4x4& a) {
    Complex4x4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = a(j, i);
    return r;
}

cplx trace(const Complex4x4& a) { return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3); }

double max_abs(const Complex4x4& a) {
    double m = 0.0;
    for (const cplx& z : a.e) m = std::max(m, std::abs(z));
    return m;
}

double hermiticity_defect(const Complex4x4& a) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

Vec4c mul(const Complex4x4& a, const Vec4c& x) {
    Vec4c r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += a(i, j) * x[j];
    return r;
}

cplx inner(const Vec4c& x, const Vec4c& y) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

cplx bilinear(const Vec4c& x, const Vec4c& y) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += x[i] * y[i];
    return s;
}

Complex4x4 outer(const Vec4c& x, const Vec4c& y) {
    Complex4x4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = x[i] * std::conj(y[j]);
    return r;
}

Complex4x4 kron2x2(const Mat2& a, const Mat2& b) {
    Complex4x4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a[static_cast<std::size_t>(2 * i + j)] *
                                              b[static_cast<std::size_t>(2 * k + l)];
    return r;
}

double norm2(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

namespace {

// the six permutations of (0,1,2) with their signatures
constexpr int kPerm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
constexpr double kSign[6] = {1.0, 1.0, 1.0, -1.0, -1.0, -1.0};

}  // namespace

double det3_levi_civita(const Real3x3& m) {
    double sum = 0.0;
    for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) {
            const int* i = kPerm[p];
            const int* l = kPerm[q];
            sum += kSign[p] * kSign[q] * m(i[0], l[0]) * m(i[1], l[1]) * m(i[2], l[2]);
        }
    return sum / 6.0;
}

double det4(const Real4x4& m) {
    double a[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = m(i, j);
    double det = 1.0;
    for (int k = 0; k < 4; ++k) {
        int piv = k;
        for (int i = k + 1; i < 4; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (a[piv][k] == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < 4; ++j) std::swap(a[k][j], a[piv][j]);
            det = -det;
        }
        det *= a[k][k];
        for (int i = k + 1; i < 4; ++i) {
            const double f = a[i][k] / a[k][k];
            for (int j = k; j < 4; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

cplx det4(const Complex4x4& m) {
    cplx a[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = m(i, j);
    cplx det = 1.0;
    for (int k = 0; k < 4; ++k) {
        int piv = k;
        for (int i = k + 1; i < 4; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (a[piv][k] == cplx(0.0)) return 0.0;
        if (piv != k) {
            for (int j = 0; j < 4; ++j) std::swap(a[k][j], a[piv][j]);
            det = -det;
        }
        det *= a[k][k];
        for (int i = k + 1; i < 4; ++i) {
            const cplx f = a[i][k] / a[k][k];
            for (int j = k; j < 4; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

namespace {

// cyclic Jacobi for a real symmetric 3x3; returns rotation V with B = V D V^T
void jacobi3(const Real3x3& b, std::array<double, 3>& w, Real3x3& v) {
    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = b(i, j);
    v = Real3x3::identity();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        double diag = std::abs(a[0][0]) + std::abs(a[1][1]) + std::abs(a[2][2]);
        if (off <= 1e-300 || off <= 1e-16 * (diag + off)) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    w = {a[0][0], a[1][1], a[2][2]};
}

Vec3 column(const Real3x3& m, int c) { return {m(0, c), m(1, c), m(2, c)}; }

void set_column(Real3x3& m, int c, const Vec3& v) {
    m(0, c) = v[0];
    m(1, c) = v[1];
    m(2, c) = v[2];
}

Vec3 normalized_or(const Vec3& v, const Vec3& fallback) {
    const double n = norm2(v);
    if (n < 1e-300) return fallback;
    return {v[0] / n, v[1] / n, v[2] / n};
}

// deterministic unit vector orthogonal to u
Vec3 any_orthogonal(const Vec3& u) {
    Vec3 axis = {1.0, 0.0, 0.0};
    if (std::abs(u[0]) > std::abs(u[1])) axis = {0.0, 1.0, 0.0};
    if (std::abs(u[2]) < std::abs(u[0]) && std::abs(u[2]) < std::abs(u[1])) axis = {0.0, 0.0, 1.0};
    return normalized_or(cross(u, axis), {0.0, 1.0, 0.0});
}

}  // namespace

Svd3 svd3(const Real3x3& m) {
    Real3x3 b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += m(k, i) * m(k, j);
            b(i, j) = s;
        }
    std::array<double, 3> w;
    Real3x3 v;
    jacobi3(b, w, v);

    std::array<int, 3> ord = {0, 1, 2};
    std::sort(ord.begin(), ord.end(), [&](int x, int y) { return w[x] > w[y]; });

    Svd3 out;
    for (int j = 0; j < 3; ++j) {
        out.s[j] = std::sqrt(std::max(w[ord[j]], 0.0));
        set_column(out.V, j, column(v, ord[j]));
    }

    constexpr double kNullTol = 1e-12;
    std::array<Vec3, 3> u{};
    int formed = 0;
    for (int j = 0; j < 3; ++j) {
        if (out.s[j] < kNullTol) break;
        const Vec3 vj = column(out.V, j);
        Vec3 uj = {0.0, 0.0, 0.0};
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k) uj[r] += m(r, k) * vj[k] / out.s[j];
        // re-orthogonalize against the columns already placed; keeps the
        // handedness carried by m itself
        for (int p = 0; p < formed; ++p) {
            const double d = dot(u[p], uj);
            for (int r = 0; r < 3; ++r) uj[r] -= d * u[p][r];
        }
        u[j] = normalized_or(uj, any_orthogonal(formed > 0 ? u[0] : Vec3{1.0, 0.0, 0.0}));
        ++formed;
    }
    // null-space completion by cross products: deterministic chirality
    if (formed == 0) {
        u[0] = {1.0, 0.0, 0.0};
        u[1] = {0.0, 1.0, 0.0};
        u[2] = {0.0, 0.0, 1.0};
    } else if (formed == 1) {
        u[1] = any_orthogonal(u[0]);
        u[2] = cross(u[0], u[1]);
    } else if (formed == 2) {
        u[2] = cross(u[0], u[1]);
    }
    for (int j = 0; j < 3; ++j) set_column(out.U, j, u[j]);
    return out;
}

namespace detail {

namespace {

std::array<cplx, 3> solve_cubic(cplx a, cplx b, cplx c) {
    // x^3 + a x^2 + b x + c
    const cplx shift = a / 3.0;
    const cplx p = b - a * a / 3.0;
    const cplx q = c + a * (2.0 * a * a - 9.0 * b) / 27.0;
    if (std::abs(p) == 0.0 && std::abs(q) == 0.0) return {-shift, -shift, -shift};
    const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx u3 = -q / 2.0 + disc;
    const cplx u3b = -q / 2.0 - disc;
    if (std::abs(u3b) > std::abs(u3)) u3 = u3b;
    const cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx v = (std::abs(u) == 0.0) ? cplx(0.0) : -p / (3.0 * u);
    const cplx w(-0.5, 0.8660254037844386467637231707529);  // exp(2 pi i / 3)
    std::array<cplx, 3> r;
    cplx uk = u, vk = v;
    for (int k = 0; k < 3; ++k) {
        r[k] = uk + vk - shift;
        uk *= w;
        vk *= std::conj(w);
    }
    return r;
}

std::array<cplx, 2> solve_quadratic(cplx b, cplx c) {
    // x^2 + b x + c, cancellation-safe
    const cplx d = std::sqrt(b * b - 4.0 * c);
    const cplx bp = (std::real(std::conj(b) * d) >= 0.0) ? b + d : b - d;
    if (std::abs(bp) == 0.0) return {d / 2.0, -d / 2.0};
    const cplx x1 = -bp / 2.0;
    return {x1, c / x1};
}

cplx eval_quartic(cplx c3, cplx c2, cplx c1, cplx c0, cplx x) {
    return (((x + c3) * x + c2) * x + c1) * x + c0;
}

// The closed form scatters a k-fold root into an asymmetric cluster of
// radius ~ eps^(1/k). A k-fold root of p is a simple, well conditioned
// root of p^(k-1), so each detected cluster is collapsed onto that
// derivative root. A residual check rejects clusters of genuinely
// distinct roots so they are never merged by mistake.
void coalesce_clusters(std::array<cplx, 4>& x, cplx c3, cplx c2, cplx c1, cplx c0) {
    bool used[4] = {false, false, false, false};
    for (int i = 0; i < 4; ++i) {
        if (used[i]) continue;
        int members[4];
        int k = 0;
        members[k++] = i;
        for (int j = i + 1; j < 4; ++j) {
            if (used[j]) continue;
            if (std::abs(x[i] - x[j]) <= 1e-5 * (1.0 + std::abs(x[i]) + std::abs(x[j]))) {
                members[k++] = j;
                used[j] = true;
            }
        }
        if (k < 2) continue;
        cplx centroid = 0.0;
        for (int t = 0; t < k; ++t) centroid += x[members[t]];
        centroid /= static_cast<double>(k);
        cplx center;
        if (k == 2) {
            // p'/4 = x^3 + (3 c3/4) x^2 + (c2/2) x + c1/4
            const auto dr = solve_cubic(0.75 * c3, 0.5 * c2, 0.25 * c1);
            center = dr[0];
            for (const cplx& cand : dr)
                if (std::abs(cand - centroid) < std::abs(center - centroid)) center = cand;
        } else if (k == 3) {
            // p''/12 = x^2 + (c3/2) x + c2/6
            const auto dr = solve_quadratic(0.5 * c3, c2 / 6.0);
            center = (std::abs(dr[0] - centroid) <= std::abs(dr[1] - centroid)) ? dr[0] : dr[1];
        } else {
            center = -c3 / 4.0;  // root of p''' = 24 x + 6 c3
        }
        if (k == 2) {
            // a close pair is ambiguous: it may be a true double root, or a
            // distinct pair the closed form failed to separate. Rebuild the
            // pair by Vieta from the two well separated roots (the product
            // c0/(r1 r2) survives when the pair product is far below the
            // coefficient noise of intermediate steps), also try collapsing
            // onto the derivative root, and keep whichever evaluation of the
            // quartic certifies best.
            cplx best0 = x[members[0]];
            cplx best1 = x[members[1]];
            double best = std::max(std::abs(eval_quartic(c3, c2, c1, c0, best0)),
                                   std::abs(eval_quartic(c3, c2, c1, c0, best1)));
            const double merged = std::abs(eval_quartic(c3, c2, c1, c0, center));
            if (merged < best) {
                best = merged;
                best0 = center;
                best1 = center;
            }
            cplx other_sum = 0.0;
            cplx other_prod = 1.0;
            for (int j = 0; j < 4; ++j) {
                if (j == members[0] || j == members[1]) continue;
                other_sum += x[j];
                other_prod *= x[j];
            }
            if (std::abs(other_prod) > 0.0 && std::abs(c0) > 0.0) {
                const cplx s = -c3 - other_sum;
                const auto split = solve_quadratic(-s, c0 / other_prod);
                const double after =
                    std::max(std::abs(eval_quartic(c3, c2, c1, c0, split[0])),
                             std::abs(eval_quartic(c3, c2, c1, c0, split[1])));
                if (after < best) {
                    best = after;
                    best0 = split[0];
                    best1 = split[1];
                }
            }
            x[members[0]] = best0;
            x[members[1]] = best1;
            continue;
        }
        // a genuine multiple root leaves a residual at coefficient-noise
        // level; a near-miss cluster of distinct roots leaves a much larger
        // one
        const double zmag = std::abs(center);
        const double coeff_scale =
            1.0 + std::abs(c0) + std::abs(c1) + std::abs(c2) + std::abs(c3) + zmag * zmag * zmag * zmag;
        const double res_cap = 10.0 * 2.220446049250313e-16 * coeff_scale;
        const bool plausible = std::abs(center - centroid) <= 1e-5 * (1.0 + std::abs(centroid)) &&
                               std::abs(eval_quartic(c3, c2, c1, c0, center)) <= res_cap;
        if (plausible)
            for (int t = 0; t < k; ++t) x[members[t]] = center;
    }
}

}  // namespace

std::array<cplx, 4> solve_quartic(cplx c3, cplx c2, cplx c1, cplx c0) {
    // exact-zero constant terms deflate exactly; keeps dyadic cases clean
    if (c0 == cplx(0.0)) {
        std::array<cplx, 4> x;
        if (c1 == cplx(0.0)) {
            if (c2 == cplx(0.0)) {
                if (c3 == cplx(0.0)) return {0.0, 0.0, 0.0, 0.0};
                return {-c3, 0.0, 0.0, 0.0};
            }
            const auto q = solve_quadratic(c3, c2);
            x = {q[0], q[1], 0.0, 0.0};
        } else {
            const auto c = solve_cubic(c3, c2, c1);
            x = {c[0], c[1], c[2], 0.0};
        }
        coalesce_clusters(x, c3, c2, c1, c0);
        return x;
    }

    // depressed quartic y^4 + p y^2 + q y + r, x = y - c3/4
    const cplx shift = c3 / 4.0;
    const cplx p = c2 - 3.0 * c3 * c3 / 8.0;
    const cplx q = c1 - c3 * c2 / 2.0 + c3 * c3 * c3 / 8.0;
    const cplx r = c0 - c3 * c1 / 4.0 + c3 * c3 * c2 / 16.0 - 3.0 * c3 * c3 * c3 * c3 / 256.0;

    std::array<cplx, 4> y;
    if (q == cplx(0.0)) {
        const auto z = solve_quadratic(p, r);
        const cplx s0 = std::sqrt(z[0]);
        const cplx s1 = std::sqrt(z[1]);
        y = {s0, -s0, s1, -s1};
    } else {
        // resolvent cubic z^3 + 2p z^2 + (p^2 - 4r) z - q^2; any nonzero root
        // factors the quartic into two quadratics
        const auto zs = solve_cubic(2.0 * p, p * p - 4.0 * r, -q * q);
        cplx z = zs[0];
        for (const cplx& cand : zs)
            if (std::abs(cand) > std::abs(z)) z = cand;
        const cplx mroot = std::sqrt(z);
        const cplx A = (p + z - q / mroot) / 2.0;
        const cplx B = (p + z + q / mroot) / 2.0;
        const auto r1 = solve_quadratic(mroot, A);
        const auto r2 = solve_quadratic(-mroot, B);
        y = {r1[0], r1[1], r2[0], r2[1]};
    }

    std::array<cplx, 4> x;
    for (int i = 0; i < 4; ++i) x[i] = y[i] - shift;

    // one Newton step per root on the undepressed quartic
    for (cplx& root : x) {
        const cplx f = (((root + c3) * root + c2) * root + c1) * root + c0;
        const cplx fp = ((4.0 * root + 3.0 * c3) * root + 2.0 * c2) * root + c1;
        if (std::abs(fp) < 1e-300) continue;
        const cplx next = root - f / fp;
        const cplx fn = (((next + c3) * next + c2) * next + c1) * next + c0;
        if (std::abs(fn) <= std::abs(f)) root = next;
    }
    coalesce_clusters(x, c3, c2, c1, c0);
    return x;
}

}  // namespace detail

Eigenvalues4 eig4(const Complex4x4& m) {
    const Complex4x4 m2 = m * m;
    const cplx t1 = trace(m);
    const cplx t2 = trace(m2);
    const cplx t3 = trace(m2 * m);
    const cplx e1 = t1;
    const cplx e2 = (e1 * t1 - t2) / 2.0;
    const cplx e3 = (e2 * t1 - e1 * t2 + t3) / 3.0;
    // the trace recurrence for e4 loses all relative accuracy to cancellation
    // when the spectrum spans many scales; the pivoted determinant keeps the
    // product of the small eigenvalues meaningful
    const cplx e4 = det4(m);

    auto roots = detail::solve_quartic(-e1, e2, -e3, e4);
    for (cplx& z : roots)
        if (std::abs(z.imag()) < 1e-9 * (1.0 + std::abs(z.real()))) z = cplx(z.real(), 0.0);
    std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return roots;
}

HermEig4 eig4_hermitian(const Complex4x4& m) {
    Complex4x4 a = m;
    Complex4x4 v = Complex4x4::identity();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                (i == j ? diag : off) += std::norm(a(i, j));
        if (off <= 1e-300 || off <= 1e-30 * (diag + off)) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = a(p, q);
                if (std::abs(apq) == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double absb = std::abs(apq);
                const cplx phase = apq / absb;  // e^{i beta}
                const double tau = (aqq - app) / (2.0 * absb);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // unitary J: identity except J(p,p)=c, J(p,q)=s,
                // J(q,p)=-s conj(phase), J(q,q)=c conj(phase)
                const cplx jqp = -s * std::conj(phase);
                const cplx jqq = c * std::conj(phase);
                // A <- J^H A J applied in place
                for (int k = 0; k < 4; ++k) {  // columns: A J
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * s + akq * jqq;
                }
                for (int k = 0; k < 4; ++k) {  // rows: J^H A
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = s * apk + std::conj(jqq) * aqk;
                }
                for (int k = 0; k < 4; ++k) {  // V <- V J
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * s + vkq * jqq;
                }
            }
    }
    std::array<int, 4> ord = {0, 1, 2, 3};
    std::array<double, 4> w = {a(0, 0).real(), a(1, 1).real(), a(2, 2).real(), a(3, 3).real()};
    std::sort(ord.begin(), ord.end(), [&](int x, int y) { return w[x] > w[y]; });
    HermEig4 out;
    for (int j = 0; j < 4; ++j) {
        out.w[j] = w[ord[j]];
        for (int i = 0; i < 4; ++i) out.V(i, j) = v(i, ord[j]);
    }
    return out;
}

Complex4x4 sqrt_psd(const Complex4x4& m) {
    const HermEig4 eg = eig4_hermitian(m);
    Complex4x4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k)
                s += eg.V(i, k) * std::sqrt(std::max(eg.w[k], 0.0)) * std::conj(eg.V(j, k));
            r(i, j) = s;
        }
    return r;
}

namespace {

// full-pivot elimination; returns pivot magnitudes and leaves the reduced
// matrix plus the column permutation for null-vector extraction
struct FullPivotLU {
    cplx a[4][4];
    int col[4];
    std::array<double, 4> piv;
};

FullPivotLU full_pivot(const Complex4x4& m) {
    FullPivotLU f;
    for (int i = 0; i < 4; ++i) {
        f.col[i] = i;
        for (int j = 0; j < 4; ++j) f.a[i][j] = m(i, j);
    }
    for (int k = 0; k < 4; ++k) {
        int pr = k, pc = k;
        double best = -1.0;
        for (int i = k; i < 4; ++i)
            for (int j = k; j < 4; ++j)
                if (std::abs(f.a[i][j]) > best) {
                    best = std::abs(f.a[i][j]);
                    pr = i;
                    pc = j;
                }
        if (pr != k)
            for (int j = 0; j < 4; ++j) std::swap(f.a[k][j], f.a[pr][j]);
        if (pc != k) {
            for (int i = 0; i < 4; ++i) std::swap(f.a[i][k], f.a[i][pc]);
            std::swap(f.col[k], f.col[pc]);
        }
        f.piv[k] = std::abs(f.a[k][k]);
        if (f.piv[k] == 0.0) {
            for (int r = k; r < 4; ++r) f.piv[r] = 0.0;
            break;
        }
        for (int i = k + 1; i < 4; ++i) {
            const cplx fac = f.a[i][k] / f.a[k][k];
            f.a[i][k] = 0.0;
            for (int j = k + 1; j < 4; ++j) f.a[i][j] -= fac * f.a[k][j];
        }
    }
    return f;
}

}  // namespace

std::array<double, 4> lu_pivot_magnitudes(const Complex4x4& m) { return full_pivot(m).piv; }

Vec4c null_vector(const Complex4x4& m) {
    const FullPivotLU f = full_pivot(m);
    // treat the last pivot as zero: solve the leading 3x3 against column 3
    cplx y[4];
    y[3] = 1.0;
    for (int i = 2; i >= 0; --i) {
        cplx s = f.a[i][3];
        for (int j = i + 1; j < 3; ++j) s += f.a[i][j] * y[j];
        y[i] = (std::abs(f.a[i][i]) > 0.0) ? -s / f.a[i][i] : cplx(0.0);
    }
    Vec4c x{};
    for (int i = 0; i < 4; ++i) x[f.col[i]] = y[i];
    double n = 0.0;
    for (const cplx& z : x) n += std::norm(z);
    n = std::sqrt(n);
    for (cplx& z : x) z /= n;
    return x;
}

}  // namespace qchiral
