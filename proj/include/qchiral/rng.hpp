#pragma once

#include <cmath>
#include <cstdint>

namespace qchiral {

// Splittable counter-style generator. The reproducibility contract of the
// samplers is "deterministic per 64-bit seed", so a fixed, self-contained
// stream function is used instead of std::mt19937 (whose distributions are
// implementation defined).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal, Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        do {
            u = uniform01();
        } while (u <= 0.0);
        double v = uniform01();
        double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(6.283185307179586476925286766559 * v);
        have_spare_ = true;
        return r * std::cos(6.283185307179586476925286766559 * v);
    }

  private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Derives an independent per-record seed from a root seed and an index.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    Rng g(root + 0x9e3779b97f4a7c15ull * (index + 1));
    return g.next();
}

}  // namespace qchiral
