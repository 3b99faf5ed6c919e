#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qchiral/bloch.hpp"
#include "qchiral/concurrence.hpp"
#include "qchiral/errors.hpp"
#include "qchiral/linalg.hpp"
#include "qchiral/rng.hpp"
#include "qchiral/states.hpp"

using namespace qchiral;

TEST_CASE("concurrence pins the landmark states") {
    CHECK(std::abs(concurrence(from_pure(bell_state())) - 1.0) < 1e-12);
    CHECK(std::abs(concurrence(werner(1.0))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(concurrence(werner(1.0 / 3.0))) < 1e-10);
    CHECK(concurrence(maximally_mixed()) == 0.0);
}

TEST_CASE("werner concurrence matches the kink formula on a grid") {
    for (int k = 0; k <= 200; ++k) {
        const double eps = -1.0 / 3.0 + k * (4.0 / 3.0) / 200.0;
        const double want = std::max((3.0 * eps - 1.0) / 2.0, 0.0);
        CHECK(std::abs(concurrence_werner(eps) - want) < 1e-15);
        CHECK(std::abs(concurrence(werner(eps)) - want) < 1e-10);
    }
}

TEST_CASE("r_matrix of a werner state is an explicit two-parameter mix") {
    const Complex4x4 proj = from_pure(bell_state()).m;
    for (double eps : {-0.3, 0.0, 0.4, 0.9}) {
        const Complex4x4 r = r_matrix(werner(eps));
        const double i_coef = (1.0 - eps) * (1.0 - eps) / 16.0;
        const double p_coef = eps * (eps + 1.0) / 2.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const cplx want = (a == b ? cplx(i_coef) : cplx(0.0)) + p_coef * proj(a, b);
                CHECK(std::abs(r(a, b) - want) < 1e-14);
            }
    }
}

TEST_CASE("r_eigenvalues of werner(1/2) are 25/64 and a 1/64 triple") {
    const std::array<double, 4> r = r_eigenvalues(werner(0.5));
    CHECK(std::abs(r[0] - 25.0 / 64.0) < 1e-9);
    for (int k = 1; k < 4; ++k) CHECK(std::abs(r[k] - 1.0 / 64.0) < 1e-9);
}

TEST_CASE("the frozen x-state example has concurrence one half") {
    const XStateParams p{0.05, 0.45, 0.45, 0.05, 0.30, 0.01};
    CHECK(std::abs(concurrence_x(p) - 0.5) < 1e-12);
    CHECK(std::abs(concurrence(x_state(p)) - 0.5) < 1e-10);

    Rng g(51);
    for (int trial = 0; trial < 200; ++trial) {
        double q = g.uniform(0.01, 0.4), r = g.uniform(0.01, 0.4), s = g.uniform(0.01, 0.4);
        double t = 1.0 - q - r - s;
        if (t < 0.01) continue;
        const double u = g.uniform(0.0, 1.0) * std::sqrt(r * s);
        const double v = g.uniform(0.0, 1.0) * std::sqrt(q * t);
        const XStateParams px{q, r, s, t, u, v};
        const double want =
            2.0 * std::max({u - std::sqrt(q * t), v - std::sqrt(r * s), 0.0});
        CHECK(std::abs(concurrence_x(px) - want) < 1e-12);
        CHECK(std::abs(concurrence(x_state(px)) - want) < 1e-9);
    }
}

TEST_CASE("spin_flip is a trace-preserving involution with known fixed points") {
    Rng g(52);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        const Complex4x4 once = spin_flip(rho.m);
        const Complex4x4 twice = spin_flip(once);
        CHECK(oracles::max_abs_diff(twice, rho.m) < 1e-14);
        CHECK(std::abs(trace(once) - trace(rho.m)) < 1e-14);
        // the flip preserves Hermiticity
        CHECK(oracles::max_abs_diff(once, adjoint(once)) < 1e-14);
    }
    const Complex4x4 proj = from_pure(bell_state()).m;
    CHECK(oracles::max_abs_diff(spin_flip(proj), proj) < 1e-15);
    for (double eps : {-0.2, 0.5, 1.0})
        CHECK(oracles::max_abs_diff(spin_flip(werner(eps).m), werner(eps).m) < 1e-15);
}

TEST_CASE("spin_flip_vec respects the antiunitary pairing symmetry") {
    Rng g(53);
    auto random_vec = [&g] {
        Vec4c v;
        for (auto& z : v) z = cplx(g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0));
        return v;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const Vec4c v = random_vec();
        const Vec4c u = random_vec();
        // <v~|u> = <u~|v> for the antiunitary flip
        const cplx lhs = inner(spin_flip_vec(v), u);
        const cplx rhs = inner(spin_flip_vec(u), v);
        CHECK(std::abs(lhs - rhs) < 1e-13);
    }
}

TEST_CASE("pure states reduce to twice the determinant magnitude") {
    Rng g(54);
    for (int trial = 0; trial < 10000; ++trial) {
        const PureState psi = random_pure(g.next());
        const double want =
            2.0 * std::abs(psi.amp[0] * psi.amp[3] - psi.amp[1] * psi.amp[2]);
        CHECK(std::abs(concurrence_pure(psi) - want) < 1e-13);
        CHECK(std::abs(concurrence(from_pure(psi)) - want) < 1e-10);
    }
}

TEST_CASE("quartic and Hermitian routes agree on random mixed states") {
    Rng g(55);
    for (int trial = 0; trial < 1000; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        const double c_q = concurrence(rho);
        const double c_h = concurrence_hermitian_oracle(rho);
        CHECK(std::abs(c_q - c_h) < 1e-8);
        CHECK(c_q >= 0.0);
        CHECK(c_q <= 1.0 + 1e-12);
        // signed variants agree with the clamped ones where positive
        if (c_q > 1e-6) {
            CHECK(std::abs(concurrence_signed(rho) - c_q) < 1e-8);
            CHECK(std::abs(concurrence_hermitian_signed(rho) - c_h) < 1e-8);
        }
    }
}

TEST_CASE("local unitaries leave the concurrence invariant") {
    Rng g(56);
    for (int trial = 0; trial < 300; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        const Mat2 ua = random_unitary2(g.next());
        const Mat2 ub = random_unitary2(g.next());
        const DensityMatrix moved = apply_local_unitary(rho, ua, ub);
        CHECK(std::abs(concurrence(moved) - concurrence(rho)) < 1e-8);
    }
}

TEST_CASE("separable ensembles have zero concurrence") {
    Rng g(57);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<EnsembleTerm, 4> terms;
        double wsum = 0.0;
        for (auto& t : terms) {
            t.p = g.uniform(0.05, 1.0);
            wsum += t.p;
            const double tha = g.uniform(0.0, 3.141592653589793);
            const double pha = g.uniform(0.0, 6.283185307179586);
            const double thb = g.uniform(0.0, 3.141592653589793);
            const double phb = g.uniform(0.0, 6.283185307179586);
            t.a = qubit_from_bloch(Vec3{std::sin(tha) * std::cos(pha),
                                        std::sin(tha) * std::sin(pha), std::cos(tha)});
            t.b = qubit_from_bloch(Vec3{std::sin(thb) * std::cos(phb),
                                        std::sin(thb) * std::sin(phb), std::cos(thb)});
        }
        for (auto& t : terms) t.p /= wsum;
        terms[3].p = 1.0 - terms[0].p - terms[1].p - terms[2].p;
        const DensityMatrix rho = from_ensemble({terms.begin(), terms.end()});
        CHECK(concurrence(rho) < 1e-8);
    }
}

TEST_CASE("biorthogonal_system satisfies the pairing identities") {
    // fixed entangled full-rank state
    Rng seeder(58);
    DensityMatrix rho = werner(0.9);
    const ConcurrenceSpectrum sys = biorthogonal_system(rho);
    for (int m = 0; m < 4; ++m) {
        CHECK(sys.r[m] >= 0.0);
        for (int n = 0; n < 4; ++n) {
            const cplx pair = inner(sys.left[m], sys.right[n]);
            const double want = (m == n) ? 1.0 : 0.0;
            CHECK(std::abs(pair - want) < 1e-8);
        }
    }
    // completeness: sum |v_n><v~_n| = identity
    Complex4x4 resolved;
    for (int n = 0; n < 4; ++n)
        for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s)
                resolved(r, s) += sys.right[n][r] * std::conj(sys.left[n][s]);
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
            CHECK(std::abs(resolved(r, s) - (r == s ? cplx(1.0) : cplx(0.0))) < 1e-8);
    // eigenvalue consistency against R
    const Complex4x4 R = r_matrix(rho);
    for (int n = 0; n < 4; ++n) {
        Vec4c rv{};
        for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) rv[r] += R(r, s) * sys.right[n][s];
        const cplx lam = inner(sys.left[n], rv);
        CHECK(std::abs(lam - sys.r[n]) < 1e-8);
    }
}

TEST_CASE("biorthogonal matrix elements of rho follow the root pattern") {
    Rng g(59);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 10; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        if (concurrence(rho) < 0.05) continue;
        ConcurrenceSpectrum sys;
        try {
            sys = biorthogonal_system(rho);
        } catch (const DegeneracyError&) {
            continue;
        }
        ++done;
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                cplx elem = 0.0;
                for (int r = 0; r < 4; ++r)
                    for (int s = 0; s < 4; ++s)
                        elem += std::conj(sys.right[m][r]) * rho.m(r, s) * sys.right[n][s];
                const double want = (m == n) ? std::sqrt(sys.r[n]) : 0.0;
                CHECK(std::abs(elem - want) < 1e-7);
            }
    }
    CHECK(done == 10);
}

TEST_CASE("biorthogonal_system rejects rank-deficient R") {
    CHECK_THROWS_AS(biorthogonal_system(from_pure(bell_state())), DegeneracyError);
}
