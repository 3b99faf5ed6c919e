#pragma once

#include <cstdint>

#include "qchiral/linalg.hpp"
#include "qchiral/states.hpp"

namespace qchiral {

// Det{I + lambda A} as a partial sum in traces of powers of A; the series
// terminates, so order 4 is exact; RangeError for order outside 1..4
cplx det_expansion(const Complex4x4& a, double lambda, int order);

// first-order concurrence response Tr{W drho} built from the biorthogonal
// system of R; inherits DegeneracyError from that construction
double concurrence_variation(const DensityMatrix& rho, const Complex4x4& drho);

// closed-form Werner responses: dC = 2(Tr{Pi rho'} - (3 eps + 1)/4) and
// dS = S (4/eps)(Tr{Pi rho'} - (3 eps + 1)/4)
struct WernerVariation {
    double dC;
    double dS;
};
WernerVariation werner_variation(double eps, const DensityMatrix& rho_prime);

// first-order sinisterness response via the adjugate of G
double sinisterness_variation(const DensityMatrix& rho, const Complex4x4& drho);

struct PerturbationReport {
    double lambda;
    double analytic_dC;
    double analytic_dS;
    double fd_dC;
    double fd_dS;
    double rel_err_dC;
    double rel_err_dS;
};

PerturbationReport werner_perturbation_report(double eps, const DensityMatrix& rho_prime,
                                              double lambda);
PerturbationReport general_perturbation_report(const DensityMatrix& rho,
                                               const DensityMatrix& rho_prime, double lambda);

}  // namespace qchiral
