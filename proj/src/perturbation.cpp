#include "qchiral/perturbation.hpp"

#include <cmath>
#include <functional>

#include "qchiral/bloch.hpp"
#include "qchiral/concurrence.hpp"
#include "qchiral/errors.hpp"
#include "qchiral/sinisterness.hpp"

namespace qchiral {

namespace {

struct Traces {
    cplx e1, e2, e3;
    Complex4x4 a2, a3;
};

Traces elementary_sums(const Complex4x4& a) {
    Traces out;
    out.a2 = a * a;
    out.a3 = out.a2 * a;
    const cplx t1 = trace(a);
    const cplx t2 = trace(out.a2);
    const cplx t3 = trace(out.a3);
    out.e1 = t1;
    out.e2 = (t1 * t1 - t2) / 2.0;
    out.e3 = (t1 * t1 * t1 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0;
    return out;
}

// adj(A) A = Det{A} I via the Cayley-Hamilton polynomial
Complex4x4 adjugate4(const Complex4x4& a) {
    const Traces t = elementary_sums(a);
    Complex4x4 adj = t.e3 * Complex4x4::identity();
    adj = adj - t.e2 * a;
    adj = adj + t.e1 * t.a2;
    adj = adj - t.a3;
    return adj;
}

void require_traceless_hermitian(const Complex4x4& drho) {
    if (hermiticity_defect(drho) > 1e-10) {
        throw ConstraintError("perturbation direction is not Hermitian");
    }
    if (std::abs(trace(drho)) > 1e-10) {
        throw ConstraintError("perturbation direction is not traceless");
    }
}

double real_checked(cplx z, const char* what) {
    if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z.real()))) {
        throw NumericalError(std::string(what) + " has a non-real value");
    }
    return z.real();
}

DensityMatrix mix(const DensityMatrix& rho, const DensityMatrix& rho_prime, double t) {
    return DensityMatrix{(1.0 - t) * rho.m + t * rho_prime.m};
}

double min_eig(const Complex4x4& m) { return eig4_hermitian(m).w[3]; }

struct FdPair {
    double value;
    double h;
};

// fourth-order Richardson stencil; falls back to a one-sided stencil when
// the backward leg cannot be kept positive semidefinite
FdPair fd_derivative(const std::function<double(double)>& f, const DensityMatrix& rho,
                     const DensityMatrix& rho_prime, double h) {
    for (int k = 0; k < 40; ++k) {
        if (min_eig(mix(rho, rho_prime, -2.0 * h).m) >= -1e-12) {
            const double v =
                (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
            return {v, h};
        }
        h *= 0.5;
    }
    const double v = (-25.0 * f(0.0) + 48.0 * f(h) - 36.0 * f(2.0 * h) + 16.0 * f(3.0 * h) -
                      3.0 * f(4.0 * h)) /
                     (12.0 * h);
    return {v, h};
}

double rel_err(double analytic, double fd) {
    return std::abs(analytic - fd) / std::max(std::abs(analytic), 1e-12);
}

PerturbationReport fd_report(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                             double lambda, double analytic_dC, double analytic_dS) {
    const auto f_c = [&](double t) { return concurrence_hermitian_signed(mix(rho, rho_prime, t)); };
    const auto f_s = [&](double t) { return sinisterness(mix(rho, rho_prime, t)); };
    const FdPair dc = fd_derivative(f_c, rho, rho_prime, lambda);
    const FdPair ds = fd_derivative(f_s, rho, rho_prime, lambda);
    PerturbationReport rep;
    rep.lambda = dc.h;
    rep.analytic_dC = analytic_dC;
    rep.analytic_dS = analytic_dS;
    rep.fd_dC = dc.value;
    rep.fd_dS = ds.value;
    rep.rel_err_dC = rel_err(analytic_dC, dc.value);
    rep.rel_err_dS = rel_err(analytic_dS, ds.value);
    return rep;
}

}  // namespace

cplx det_expansion(const Complex4x4& a, double lambda, int order) {
    if (order < 1 || order > 4) {
        throw RangeError("expansion order must lie in 1..4");
    }
    const Traces t = elementary_sums(a);
    const cplx t4 = trace(t.a3 * a);
    const cplx t1 = trace(a);
    const cplx t2 = trace(t.a2);
    const cplx t3 = trace(t.a3);
    const cplx e4 = (t1 * t1 * t1 * t1 - 6.0 * t1 * t1 * t2 + 3.0 * t2 * t2 + 8.0 * t1 * t3 -
                     6.0 * t4) /
                    24.0;
    cplx sum = 1.0;
    double lp = lambda;
    sum += lp * t.e1;
    if (order >= 2) {
        lp *= lambda;
        sum += lp * t.e2;
    }
    if (order >= 3) {
        lp *= lambda;
        sum += lp * t.e3;
    }
    if (order >= 4) {
        lp *= lambda;
        sum += lp * e4;
    }
    return sum;
}

double concurrence_variation(const DensityMatrix& rho, const Complex4x4& drho) {
    require_traceless_hermitian(drho);
    if (concurrence_signed(rho) <= 1e-10) {
        throw DegeneracyError("concurrence response undefined at the clamp boundary");
    }
    const ConcurrenceSpectrum sys = biorthogonal_system(rho);
    cplx response = 0.0;
    for (int n = 0; n < 4; ++n) {
        const double sign = (n == 0) ? 1.0 : -1.0;
        // Tr{|v_n><v_n| drho} with the form-normalized eigenvector
        cplx quad = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                quad += std::conj(sys.right[n][i]) * drho(i, j) * sys.right[n][j];
        response += sign * quad;
    }
    return real_checked(response, "concurrence response");
}

WernerVariation werner_variation(double eps, const DensityMatrix& rho_prime) {
    if (!(eps > 0.0) || eps > 1.0 + 1e-15) {
        throw RangeError("werner response defined for mixing parameters in (0, 1]");
    }
    validate_density(rho_prime);
    const Complex4x4 pi = from_pure(bell_state()).m;
    const double overlap = real_checked(trace(pi * rho_prime.m), "projector overlap");
    const double x = overlap - (3.0 * eps + 1.0) / 4.0;
    return {2.0 * x, -4.0 * eps * eps * x};
}

double sinisterness_variation(const DensityMatrix& rho, const Complex4x4& drho) {
    require_traceless_hermitian(drho);
    const Complex4x4 adj = adjugate4(g_rearrange(rho.m));
    const cplx ddet = trace(adj * g_rearrange(drho));
    return real_checked(-16.0 * ddet, "sinisterness response");
}

PerturbationReport werner_perturbation_report(double eps, const DensityMatrix& rho_prime,
                                              double lambda) {
    const DensityMatrix rho = werner(eps);
    const WernerVariation wv = werner_variation(eps, rho_prime);
    return fd_report(rho, rho_prime, lambda, wv.dC, wv.dS);
}

PerturbationReport general_perturbation_report(const DensityMatrix& rho,
                                               const DensityMatrix& rho_prime, double lambda) {
    const Complex4x4 drho = rho_prime.m - rho.m;
    const double dc = concurrence_variation(rho, drho);
    const double ds = sinisterness_variation(rho, drho);
    return fd_report(rho, rho_prime, lambda, dc, ds);
}

}  // namespace qchiral
