#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qchiral/bloch.hpp"
#include "qchiral/errors.hpp"
#include "qchiral/geometry.hpp"
#include "qchiral/rng.hpp"
#include "qchiral/sinisterness.hpp"
#include "qchiral/states.hpp"

using namespace qchiral;

namespace {

Vec3 random_vec3(Rng& g, double scale) {
    return Vec3{g.uniform(-scale, scale), g.uniform(-scale, scale), g.uniform(-scale, scale)};
}

Qubit qubit_at(double theta, double phi) {
    return qubit_from_bloch(Vec3{std::sin(theta) * std::cos(phi),
                                 std::sin(theta) * std::sin(phi), std::cos(theta)});
}

EnsembleSpec random_product_ensemble(Rng& g, int terms) {
    EnsembleSpec spec(terms);
    double wsum = 0.0;
    for (auto& t : spec) {
        t.p = g.uniform(0.05, 1.0);
        wsum += t.p;
        t.a = qubit_at(g.uniform(0.0, 3.141592653589793), g.uniform(0.0, 6.283185307179586));
        t.b = qubit_at(g.uniform(0.0, 3.141592653589793), g.uniform(0.0, 6.283185307179586));
    }
    double acc = 0.0;
    for (int k = 0; k + 1 < terms; ++k) {
        spec[k].p /= wsum;
        acc += spec[k].p;
    }
    spec[terms - 1].p = 1.0 - acc;
    return spec;
}

}  // namespace

TEST_CASE("the regular tetrahedron hits the volume bound with unit edges ratio") {
    const VertexQuad q = regular_tetrahedron();
    const double bound = 8.0 / (9.0 * std::sqrt(3.0));
    CHECK(std::abs(std::abs(quad_volume(q)) - bound) < 1e-15);
    const double edge = std::sqrt(8.0 / 3.0);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double d2 = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double diff = q[i][k] - q[j][k];
                d2 += diff * diff;
            }
            CHECK(std::abs(std::sqrt(d2) - edge) < 1e-14);
        }
    // vertices live on the unit sphere
    for (int i = 0; i < 4; ++i) {
        double n2 = 0.0;
        for (int k = 0; k < 3; ++k) n2 += q[i][k] * q[i][k];
        CHECK(std::abs(n2 - 1.0) < 1e-14);
    }
}

TEST_CASE("quad_volume matches a cofactor determinant of edge vectors") {
    Rng g(61);
    for (int trial = 0; trial < 500; ++trial) {
        VertexQuad q;
        for (auto& v : q) v = random_vec3(g, 1.0);
        // oracle: det[a1-a4, a2-a4, a3-a4] / 6
        std::array<cplx, 9> m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m[3 * r + c] = q[r][c] - q[3][c];
        const double want = oracles::det3_cofactor(m).real() / 6.0;
        CHECK(std::abs(std::abs(quad_volume(q)) - std::abs(want)) < 1e-13);
    }
}

TEST_CASE("triple_product_T is invariant under the weighted centroid shift") {
    Rng g(62);
    for (int trial = 0; trial < 200; ++trial) {
        VertexQuad q;
        for (auto& v : q) v = random_vec3(g, 1.0);
        std::array<double, 4> w;
        double wsum = 0.0;
        for (auto& x : w) {
            x = g.uniform(0.05, 1.0);
            wsum += x;
        }
        for (auto& x : w) x /= wsum;
        // oracle: shifted triple product about the weighted mean
        Vec3 mean{0.0, 0.0, 0.0};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 3; ++k) mean[k] += w[i] * q[i][k];
        auto shifted = [&](int idx, int k) { return q[idx - 1][k] - mean[k]; };
        const double want =
            shifted(1, 0) * (shifted(2, 1) * shifted(3, 2) - shifted(2, 2) * shifted(3, 1)) -
            shifted(1, 1) * (shifted(2, 0) * shifted(3, 2) - shifted(2, 2) * shifted(3, 0)) +
            shifted(1, 2) * (shifted(2, 0) * shifted(3, 1) - shifted(2, 1) * shifted(3, 0));
        CHECK(std::abs(triple_product_T(q, w, 1, 2, 3) - want) < 1e-13);
        // antisymmetry under index swap
        CHECK(std::abs(triple_product_T(q, w, 2, 1, 3) + want) < 1e-13);
        CHECK(std::abs(triple_product_T(q, w, 3, 1, 2) - want) < 1e-13);
    }
    const VertexQuad q = regular_tetrahedron();
    const std::array<double, 4> w{0.25, 0.25, 0.25, 0.25};
    CHECK_THROWS_AS(triple_product_T(q, w, 1, 1, 2), IndexError);
    CHECK_THROWS_AS(triple_product_T(q, w, 0, 1, 2), IndexError);
    CHECK_THROWS_AS(triple_product_T(q, w, 1, 2, 5), IndexError);
}

TEST_CASE("separable closed form matches the full pipeline on four-term ensembles") {
    Rng g(63);
    for (int trial = 0; trial < 300; ++trial) {
        const EnsembleSpec spec = random_product_ensemble(g, 4);
        const double closed = separable_sinisterness(spec);
        const DensityMatrix rho = from_ensemble(spec);
        const double pipeline = sinisterness_from_c(decompose(rho).c);
        CHECK(std::abs(closed - pipeline) <= 1e-9 * (1.0 + std::abs(closed)));
        CHECK(std::abs(closed) <= 1.0 / 27.0 + 1e-9);
    }
}

TEST_CASE("three-term ensembles are chirality blind") {
    Rng g(64);
    for (int trial = 0; trial < 200; ++trial) {
        const EnsembleSpec spec = random_product_ensemble(g, 3);
        CHECK(std::abs(separable_sinisterness(spec)) < 1e-12);
        const DensityMatrix rho = from_ensemble(spec);
        CHECK(std::abs(sinisterness(rho)) < 1e-9);
    }
    for (int trial = 0; trial < 100; ++trial) {
        const EnsembleSpec spec = random_product_ensemble(g, 2);
        CHECK(std::abs(separable_sinisterness(spec)) < 1e-12);
    }
}

TEST_CASE("separable_sinisterness validates its ensemble spec") {
    Rng g(65);
    EnsembleSpec five = random_product_ensemble(g, 4);
    five.push_back(five[0]);
    five[0].p = 0.0;
    CHECK_THROWS_AS(separable_sinisterness(five), CardinalityError);

    EnsembleSpec bad_w = random_product_ensemble(g, 4);
    bad_w[0].p = -0.1;
    bad_w[1].p += 0.1;
    CHECK_THROWS_AS(separable_sinisterness(bad_w), WeightError);

    EnsembleSpec off_sum = random_product_ensemble(g, 4);
    off_sum[0].p += 0.2;
    CHECK_THROWS_AS(separable_sinisterness(off_sum), WeightError);

    EnsembleSpec denorm = random_product_ensemble(g, 4);
    denorm[2].a.x0 *= 2.0;
    CHECK_THROWS_AS(separable_sinisterness(denorm), NormalizationError);
}

TEST_CASE("hill_climb is deterministic and never exceeds the bound") {
    const double bound = 8.0 / (9.0 * std::sqrt(3.0));
    Rng g(66);
    VertexQuad start;
    for (auto& v : start) v = random_vec3(g, 0.5);
    const VolumeSearchResult r1 = hill_climb(start, 2000, 77);
    const VolumeSearchResult r2 = hill_climb(start, 2000, 77);
    CHECK(r1.volume == r2.volume);
    CHECK(r1.iterations_used == r2.iterations_used);
    CHECK(r1.volume <= bound + 1e-9);
    CHECK(r1.volume >= std::abs(quad_volume(start)) - 1e-12);
    for (const auto& v : r1.vertices) {
        double n2 = 0.0;
        for (double x : v) n2 += x * x;
        CHECK(n2 <= 1.0 + 1e-12);
    }
}

TEST_CASE("max_volume_search approaches the analytic bound") {
    const double bound = 8.0 / (9.0 * std::sqrt(3.0));
    const VolumeSearchResult r = max_volume_search(909, 10000);
    CHECK(r.volume <= bound + 1e-9);
    CHECK(r.volume >= bound - 1e-4);
    CHECK(r.iterations_used <= 10000);
}

TEST_CASE("a regular start stays pinned at the bound") {
    const double bound = 8.0 / (9.0 * std::sqrt(3.0));
    const VolumeSearchResult r = hill_climb(regular_tetrahedron(), 500, 11);
    CHECK(r.volume >= bound - 1e-10);
    CHECK(r.volume <= bound + 1e-9);
}
