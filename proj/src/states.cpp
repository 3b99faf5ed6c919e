#include "qchiral/states.hpp"

#include <cmath>
#include <string>

#include "qchiral/errors.hpp"
#include "qchiral/rng.hpp"

namespace qchiral {

void validate_density(const DensityMatrix& rho, const ValidationLimits& lim) {
    const cplx tr = trace(rho.m);
    if (std::abs(tr - cplx(1.0)) > lim.trace)
        throw NormalizationError("trace is " + std::to_string(tr.real()) + " + " +
                                 std::to_string(tr.imag()) + "i, expected 1");
    const double hd = hermiticity_defect(rho.m);
    if (hd > lim.hermiticity)
        throw ConstraintError("hermiticity defect " + std::to_string(hd));
    Complex4x4 h;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h(i, j) = 0.5 * (rho.m(i, j) + std::conj(rho.m(j, i)));
    const HermEig4 eg = eig4_hermitian(h);
    if (eg.w[3] < lim.eig_floor)
        throw PositivityError("minimum eigenvalue " + std::to_string(eg.w[3]));
}

DensityMatrix make_density(const Complex4x4& m, const ValidationLimits& lim) {
    DensityMatrix rho{m};
    validate_density(rho, lim);
    return rho;
}

PureState normalize(const PureState& psi) {
    double n2 = 0.0;
    for (const cplx& z : psi.amp) n2 += std::norm(z);
    if (n2 < 1e-300) throw NormalizationError("cannot normalize the zero vector");
    const double n = std::sqrt(n2);
    PureState out;
    for (int i = 0; i < 4; ++i) out.amp[i] = psi.amp[i] / n;
    return out;
}

DensityMatrix from_pure(const PureState& psi) {
    double n2 = 0.0;
    for (const cplx& z : psi.amp) n2 += std::norm(z);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-9)
        throw NormalizationError("pure state norm " + std::to_string(std::sqrt(n2)));
    const PureState u = normalize(psi);
    return DensityMatrix{outer(u.amp, u.amp)};
}

PureState bell_state() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState{{s, 0.0, 0.0, s}};
}

DensityMatrix maximally_mixed() { return DensityMatrix{0.25 * Complex4x4::identity()}; }

DensityMatrix werner(double eps) {
    if (eps < -1.0 / 3.0 - 1e-15 || eps > 1.0 + 1e-15)
        throw RangeError("werner parameter " + std::to_string(eps) + " outside [-1/3, 1]");
    const DensityMatrix pi = from_pure(bell_state());
    Complex4x4 m = ((1.0 - eps) / 4.0) * Complex4x4::identity();
    m = m + eps * pi.m;
    return DensityMatrix{m};
}

DensityMatrix x_state(const XStateParams& p) {
    for (double x : {p.q, p.r, p.s, p.t, p.u, p.v})
        if (!(x >= 0.0)) throw RangeError("x-state parameters must be nonnegative");
    if (std::abs(p.q + p.r + p.s + p.t - 1.0) > 1e-12)
        throw NormalizationError("x-state diagonal must sum to 1");
    if (p.u * p.u > p.r * p.s + 1e-15)
        throw PositivityError("x-state requires sqrt(rs) >= u");
    if (p.v * p.v > p.q * p.t + 1e-15)
        throw PositivityError("x-state requires sqrt(qt) >= v");
    Complex4x4 m;
    m(0, 0) = p.q;
    m(0, 3) = p.v;
    m(1, 1) = p.r;
    m(1, 2) = p.u;
    m(2, 1) = p.u;
    m(2, 2) = p.s;
    m(3, 0) = p.v;
    m(3, 3) = p.t;
    return DensityMatrix{m};
}

DensityMatrix from_ensemble(const EnsembleSpec& spec) {
    if (spec.size() > 4) throw CardinalityError("ensemble has more than 4 terms");
    double sum = 0.0;
    for (const EnsembleTerm& t : spec) {
        if (t.p < -1e-15 || t.p > 1.0 + 1e-12) throw WeightError("weight outside [0, 1]");
        sum += t.p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw WeightError("weights sum to " + std::to_string(sum));
    Complex4x4 m;
    for (const EnsembleTerm& t : spec) {
        const double na = std::norm(t.a.x0) + std::norm(t.a.x1);
        const double nb = std::norm(t.b.x0) + std::norm(t.b.x1);
        if (std::abs(na - 1.0) > 1e-12 || std::abs(nb - 1.0) > 1e-12)
            throw NormalizationError("ensemble factor state not normalized");
        const Vec4c amp = {t.a.x0 * t.b.x0, t.a.x0 * t.b.x1, t.a.x1 * t.b.x0, t.a.x1 * t.b.x1};
        m = m + t.p * outer(amp, amp);
    }
    return DensityMatrix{m};
}

PureState random_pure(std::uint64_t seed) {
    Rng g(seed);
    PureState psi;
    for (int i = 0; i < 4; ++i) psi.amp[i] = cplx(g.normal(), g.normal());
    return normalize(psi);
}

DensityMatrix random_density(std::uint64_t seed) {
    Rng g(seed);
    Complex4x4 t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t(i, j) = cplx(g.uniform01(), g.uniform01());
    const Complex4x4 m = adjoint(t) * t;
    return DensityMatrix{(1.0 / trace(m).real()) * m};
}

DensityMatrix random_density_biased(std::uint64_t seed, BiasMode mode) {
    if (mode == BiasMode::Uniform) return random_density(seed);
    const DensityMatrix base = random_density(derive_seed(seed, 1));
    Rng g(derive_seed(seed, 2));
    // keep a floor of uniform admixture so biased samples stay away from the
    // boundary states themselves, where the eigenvalue spectrum of rho rho~
    // degenerates and envelope margins shrink below test tolerances
    const double lambda = g.uniform(0.8, 0.99);
    if (mode == BiasMode::TowardPure) {
        const DensityMatrix target = from_pure(random_pure(derive_seed(seed, 3)));
        return DensityMatrix{(1.0 - lambda) * base.m + lambda * target.m};
    }
    const double eps = g.uniform(-1.0 / 3.0, 1.0);
    const DensityMatrix target = werner(eps);
    return DensityMatrix{(1.0 - lambda) * base.m + lambda * target.m};
}

Qubit qubit_from_bloch(const Vec3& n) {
    const double len = norm2(n);
    if (len < 1e-12) throw RangeError("zero Bloch vector has no pure state");
    const double n3 = std::clamp(n[2] / len, -1.0, 1.0);
    const double theta = std::acos(n3);
    const double phi = std::atan2(n[1], n[0]);
    return Qubit{std::sin(theta / 2.0) * std::exp(cplx(0.0, phi)),
                 cplx(std::cos(theta / 2.0), 0.0)};
}

Vec3 qubit_bloch(const Qubit& q) {
    const cplx z = std::conj(q.x0) * q.x1;
    return {2.0 * z.real(), -2.0 * z.imag(), std::norm(q.x1) - std::norm(q.x0)};
}

Mat2 random_unitary2(std::uint64_t seed) {
    Rng g(seed);
    cplx a(g.normal(), g.normal()), b(g.normal(), g.normal());
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    const cplx phase = std::exp(cplx(0.0, g.uniform(0.0, 6.283185307179586)));
    // columns (a, b) and phase * (-conj(b), conj(a))
    return Mat2{a, -std::conj(b) * phase, b, std::conj(a) * phase};
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Mat2& ua, const Mat2& ub) {
    const Complex4x4 u = kron2x2(ua, ub);
    return DensityMatrix{u * rho.m * adjoint(u)};
}

PureState apply_local_unitary(const PureState& psi, const Mat2& ua, const Mat2& ub) {
    return PureState{mul(kron2x2(ua, ub), psi.amp)};
}

}  // namespace qchiral
