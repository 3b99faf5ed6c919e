#pragma once

#include <cstdint>

#include "qchiral/linalg.hpp"
#include "qchiral/states.hpp"

namespace qchiral {

using VertexQuad = std::array<Vec3, 4>;

// signed volume [(a1-a2) x (a2-a3)] . (a3-a4) / 6
double quad_volume(const VertexQuad& q);

// T_{k l m} about the weighted mean of the quad; k, l, m are 1-based and
// must be distinct (IndexError otherwise)
double triple_product_T(const VertexQuad& q, const std::array<double, 4>& w, int k, int l, int m);

// 36 p1 p2 p3 p4 V(a) V(b) for a product ensemble; CardinalityError past 4
// terms, WeightError on invalid weights
double separable_sinisterness(const EnsembleSpec& spec);

VertexQuad regular_tetrahedron();

struct VolumeSearchResult {
    VertexQuad vertices;
    double volume;
    int iterations_used;
};

// random-restart hill climb over vertex quads on the unit ball
VolumeSearchResult hill_climb(const VertexQuad& start, int iterations, std::uint64_t seed);
VolumeSearchResult max_volume_search(std::uint64_t seed, int iterations);

}  // namespace qchiral
