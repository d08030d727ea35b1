#pragma once

#include "entloc/qstate.hpp"

namespace entloc {

// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

// Largest CHSH expectation value reachable with local measurements,
// 2*sqrt(m1+m2) with m1,m2 the two largest eigenvalues of T^T T where
// T_ij = tr(rho sigma_i x sigma_j). Values above 2 violate the
// inequality; the quantum maximum is 2*sqrt(2).
double bell_max(const DensityMatrix& rho);

// Uhlmann fidelity F(rho,sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Fidelity with a pure target, <psi|rho|psi>.
double fidelity(const DensityMatrix& rho, const Ket& psi);

// Normalized linear entropy (4/3)(1 - tr rho^2) for a two-qubit state:
// 0 for pure states, 1 for the maximally mixed state.
double linear_entropy(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

struct MetricReport {
    double concurrence = 0.0;
    double bell_max = 0.0;
    double linear_entropy = 0.0;
    double purity = 0.0;
};

MetricReport metric_report(const DensityMatrix& rho);

}  // namespace entloc
