#include "qchiral/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "qchiral/errors.hpp"
#include "qchiral/rng.hpp"

namespace qchiral {

namespace {

Vec3 unit_or_default(const Vec3& v) {
    const double n = norm2(v);
    if (n < 1e-12) return {0.0, 0.0, 1.0};
    return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 random_unit(Rng& g) {
    for (;;) {
        const Vec3 v = {g.normal(), g.normal(), g.normal()};
        const double n = norm2(v);
        if (n > 1e-6) return {v[0] / n, v[1] / n, v[2] / n};
    }
}

}  // namespace

double quad_volume(const VertexQuad& q) {
    const Vec3 e1 = sub(q[0], q[1]);
    const Vec3 e2 = sub(q[1], q[2]);
    const Vec3 e3 = sub(q[2], q[3]);
    return dot(cross(e1, e2), e3) / 6.0;
}

double triple_product_T(const VertexQuad& q, const std::array<double, 4>& w, int k, int l,
                        int m) {
    const bool in_range = k >= 1 && k <= 4 && l >= 1 && l <= 4 && m >= 1 && m <= 4;
    if (!in_range || k == l || l == m || k == m) {
        throw IndexError("triple product indices must be distinct and within 1..4");
    }
    Vec3 mean = {0.0, 0.0, 0.0};
    for (int n = 0; n < 4; ++n)
        for (int i = 0; i < 3; ++i) mean[i] += w[n] * q[n][i];
    const Vec3 u = sub(q[k - 1], mean);
    const Vec3 v = sub(q[l - 1], mean);
    const Vec3 t = sub(q[m - 1], mean);
    return dot(cross(u, v), t);
}

double separable_sinisterness(const EnsembleSpec& spec) {
    if (spec.size() > 4) {
        throw CardinalityError("product ensembles support at most four terms");
    }
    double total = 0.0;
    for (const EnsembleTerm& term : spec) {
        if (term.p < -1e-15 || term.p > 1.0 + 1e-12) {
            throw WeightError("ensemble weight outside [0, 1]");
        }
        total += term.p;
        const double na = std::norm(term.a.x0) + std::norm(term.a.x1);
        const double nb = std::norm(term.b.x0) + std::norm(term.b.x1);
        if (std::abs(na - 1.0) > 1e-9 || std::abs(nb - 1.0) > 1e-9) {
            throw NormalizationError("ensemble factor state is not normalized");
        }
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw WeightError("ensemble weights do not sum to one");
    }
    if (spec.size() < 4) return 0.0;

    VertexQuad a;
    VertexQuad b;
    double weight = 1.0;
    for (int n = 0; n < 4; ++n) {
        weight *= spec[n].p;
        a[n] = qubit_bloch(spec[n].a);
        b[n] = qubit_bloch(spec[n].b);
    }
    return 36.0 * weight * quad_volume(a) * quad_volume(b);
}

VertexQuad regular_tetrahedron() {
    const double s = 1.0 / std::sqrt(3.0);
    return {Vec3{s, s, s}, Vec3{s, -s, -s}, Vec3{-s, s, -s}, Vec3{-s, -s, s}};
}

VolumeSearchResult hill_climb(const VertexQuad& start, int iterations, std::uint64_t seed) {
    VertexQuad best;
    for (int n = 0; n < 4; ++n) best[n] = unit_or_default(start[n]);
    double best_vol = std::abs(quad_volume(best));

    Rng g(seed);
    const int last = std::max(iterations - 1, 1);
    for (int it = 0; it < iterations; ++it) {
        const double step = 0.5 * std::pow(4e-3, static_cast<double>(it) / last);
        const int n = static_cast<int>(g.next() % 4);
        VertexQuad cand = best;
        const Vec3 bump = {g.normal(), g.normal(), g.normal()};
        for (int i = 0; i < 3; ++i) cand[n][i] += step * bump[i];
        cand[n] = unit_or_default(cand[n]);
        const double vol = std::abs(quad_volume(cand));
        if (vol > best_vol) {
            best = cand;
            best_vol = vol;
        }
    }
    return {best, best_vol, iterations};
}

VolumeSearchResult max_volume_search(std::uint64_t seed, int iterations) {
    constexpr int kRestarts = 10;
    const int per = std::max(iterations / kRestarts, 1);
    VolumeSearchResult best{};
    best.volume = -1.0;
    for (int r = 0; r < kRestarts; ++r) {
        Rng g(derive_seed(seed, static_cast<std::uint64_t>(r)));
        VertexQuad start;
        for (int n = 0; n < 4; ++n) start[n] = random_unit(g);
        VolumeSearchResult res =
            hill_climb(start, per, derive_seed(seed, 100 + static_cast<std::uint64_t>(r)));
        if (res.volume > best.volume) {
            best.vertices = res.vertices;
            best.volume = res.volume;
        }
        best.iterations_used += res.iterations_used;
    }
    return best;
}

}  // namespace qchiral
