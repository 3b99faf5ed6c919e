#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qchiral/bloch.hpp"
#include "qchiral/linalg.hpp"
#include "qchiral/rng.hpp"
#include "qchiral/states.hpp"

using namespace qchiral;

TEST_CASE("sigma2 returns the fixed single-qubit basis") {
    const Mat2 s0 = sigma2(0);
    CHECK(s0[0] == cplx(1.0));
    CHECK(s0[1] == cplx(0.0));
    CHECK(s0[2] == cplx(0.0));
    CHECK(s0[3] == cplx(1.0));

    const Mat2 s1 = sigma2(1);
    CHECK(s1[0] == cplx(0.0));
    CHECK(s1[1] == cplx(1.0));
    CHECK(s1[2] == cplx(1.0));
    CHECK(s1[3] == cplx(0.0));

    const Mat2 s2 = sigma2(2);
    CHECK(s2[0] == cplx(0.0));
    CHECK(s2[1] == cplx(0.0, 1.0));
    CHECK(s2[2] == cplx(0.0, -1.0));
    CHECK(s2[3] == cplx(0.0));

    const Mat2 s3 = sigma2(3);
    CHECK(s3[0] == cplx(-1.0));
    CHECK(s3[1] == cplx(0.0));
    CHECK(s3[2] == cplx(0.0));
    CHECK(s3[3] == cplx(1.0));

    // each is Hermitian, involutory and traceless apart from the identity
    for (int mu = 1; mu < 4; ++mu) {
        const Mat2 s = sigma2(mu);
        CHECK(std::abs(s[1] - std::conj(s[2])) < 1e-15);
        CHECK(std::abs(s[0] + s[3]) < 1e-15);
        const cplx det = s[0] * s[3] - s[1] * s[2];
        CHECK(std::abs(det + 1.0) < 1e-15);
    }
}

TEST_CASE("pauli_pair matches the explicit tensor product") {
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const Complex4x4 p = pauli_pair(mu, nu);
            const Complex4x4 k = kron2x2(sigma2(mu), sigma2(nu));
            CHECK(oracles::max_abs_diff(p, k) == 0.0);
        }
    }
}

TEST_CASE("decompose of |00> gives a = b = (0,0,-1) and zero correlations") {
    PureState psi;
    psi.amp = {cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)};
    const BlochData d = decompose(from_pure(psi));
    CHECK(std::abs(d.a[0]) < 1e-15);
    CHECK(std::abs(d.a[1]) < 1e-15);
    CHECK(std::abs(d.a[2] + 1.0) < 1e-15);
    CHECK(std::abs(d.b[0]) < 1e-15);
    CHECK(std::abs(d.b[1]) < 1e-15);
    CHECK(std::abs(d.b[2] + 1.0) < 1e-15);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(d.c(i, j)) < 1e-15);
}

TEST_CASE("decompose of the Bell state gives diag(1,-1,1) correlations") {
    const BlochData d = decompose(from_pure(bell_state()));
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(d.a[i]) < 1e-15);
        CHECK(std::abs(d.b[i]) < 1e-15);
    }
    CHECK(std::abs(d.c(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(d.c(1, 1) + 1.0) < 1e-15);
    CHECK(std::abs(d.c(2, 2) - 1.0) < 1e-15);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(d.c(i, j)) < 1e-15);
}

TEST_CASE("werner correlations scale the Bell pattern by epsilon") {
    for (double eps : {-1.0 / 3.0, -0.2, 0.0, 0.3, 0.8, 1.0}) {
        const BlochData d = decompose(werner(eps));
        CHECK(std::abs(d.c(0, 0) - eps) < 1e-14);
        CHECK(std::abs(d.c(1, 1) + eps) < 1e-14);
        CHECK(std::abs(d.c(2, 2) - eps) < 1e-14);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(d.a[i]) < 1e-14);
            CHECK(std::abs(d.b[i]) < 1e-14);
        }
    }
}

TEST_CASE("gamma packs the moment block with unit corner") {
    Rng g(31);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        const BlochData d = decompose(rho);
        CHECK(std::abs(d.gamma(0, 0) - 1.0) < 1e-14);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(d.gamma(i + 1, 0) - d.a[i]) < 1e-14);
            CHECK(std::abs(d.gamma(0, i + 1) - d.b[i]) < 1e-14);
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(d.gamma(i + 1, j + 1) - (d.c(i, j) + d.a[i] * d.b[j])) < 1e-15);
        }
        // gamma entries are raw expectation values of the operator pairs
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                cplx tr = 0.0;
                const Complex4x4 op = pauli_pair(mu, nu);
                for (int r = 0; r < 4; ++r)
                    for (int s = 0; s < 4; ++s) tr += op(r, s) * rho.m(s, r);
                CHECK(std::abs(tr.imag()) < 1e-13);
                CHECK(std::abs(d.gamma(mu, nu) - tr.real()) < 1e-13);
            }
    }
}

TEST_CASE("make_bloch reproduces decompose on physical data") {
    Rng g(32);
    for (int trial = 0; trial < 100; ++trial) {
        const BlochData d = decompose(random_density(g.next()));
        const BlochData rebuilt = make_bloch(d.a, d.b, d.c);
        CHECK(oracles::max_abs_diff(rebuilt.gamma, d.gamma) < 1e-15);
        CHECK(oracles::max_abs_diff(rebuilt.c, d.c) < 1e-15);
    }
}

TEST_CASE("purity from the moment block matches the density-matrix trace") {
    Rng g(33);
    for (int trial = 0; trial < 1000; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        const double p_rho = purity(rho);
        const BlochData d = decompose(rho);
        // oracle: Tr{rho^2} summed entrywise
        cplx tr2 = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) tr2 += rho.m(r, s) * rho.m(s, r);
        CHECK(std::abs(p_rho - tr2.real()) < 1e-13);
        double frob = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) frob += d.gamma(mu, nu) * d.gamma(mu, nu);
        CHECK(std::abs(purity_from_gamma(d.gamma) - frob / 4.0) < 1e-15);
        CHECK(std::abs(purity_from_gamma(d.gamma) - p_rho) < 1e-12);
        CHECK(p_rho > 0.25 - 1e-12);
        CHECK(p_rho < 1.0 + 1e-12);
    }
}

TEST_CASE("fano_reconstruct inverts decompose") {
    Rng g(34);
    for (int trial = 0; trial < 1000; ++trial) {
        const DensityMatrix rho = random_density(g.next());
        const BlochData d = decompose(rho);
        const FanoResult f = fano_reconstruct(d.gamma);
        CHECK(oracles::max_abs_diff(f.rho.m, rho.m) < 1e-12);
        CHECK(f.psd);
        CHECK(f.min_eig > -1e-12);
        const FanoResult f2 = fano_reconstruct(d);
        CHECK(oracles::max_abs_diff(f2.rho.m, rho.m) < 1e-12);
    }
}

TEST_CASE("fano_reconstruct flags moment blocks with no physical preimage") {
    // correlations stronger than any state allows
    Real3x3 c{};
    c(0, 0) = 1.0;
    c(1, 1) = 1.0;
    c(2, 2) = 1.0;
    const BlochData d = make_bloch(Vec3{0.0, 0.0, 0.0}, Vec3{0.0, 0.0, 0.0}, c);
    const FanoResult f = fano_reconstruct(d);
    CHECK_FALSE(f.psd);
    CHECK(f.min_eig < -1e-3);
    // the reconstruction is still trace one and Hermitian
    CHECK(std::abs(trace(f.rho.m) - cplx(1.0)) < 1e-14);
    CHECK(oracles::unitarity_defect(f.rho.m) >= 0.0);
}
