#pragma once

#include "entloc/qstate.hpp"

// Closed-form scalar curves for the three-stage localization protocol:
// stage I (mixing on the coupler, post-selected on one photon per output
// mode), stage II (polarization measurement on the environmental photon),
// stage III (local filtration). T is the intensity transmissivity of the
// coupler, R = 1-T, p the indistinguishability of the environmental photon,
// eps the intensity gain of the filtration on the attenuated polarization.
// All probabilities are cumulative from the source (stage I included).

namespace entloc {

// Single-parameter transmissivity of a Mach-Zehnder style passive coupling
// with splitter transmissivities T1, T2 and internal phases -phi, +phi.
// This is the reference closed form used throughout the scalar curves.
// Throws ModelInconsistency if the value leaves [0,1] by more than 1e-9;
// values within 1e-9 of the bounds are clipped.
double effective_transmissivity(double T1, double T2, double phi);

// Straight-through port probability |M11|^2 of the composed two-splitter
// unitary. Physically equivalent quantity computed from first principles;
// disagrees with the reference closed form (which behaves like the cross
// port and lacks a factor 2 on the interference term). Both are exposed so
// the discrepancy can be reported instead of silently patched.
double effective_transmissivity_composed(double T1, double T2, double phi);

// Hong-Ou-Mandel dip visibility for partially indistinguishable photons.
double hom_visibility(double p, double T);

struct IndistinguishableSuite {
    double F_I = 0.0;   // overlap of the stage-I Werner state with the singlet
    double C_I = 0.0;
    double B_I = 0.0;
    double P_I = 0.0;
    double C_II = 0.0;
    double P_II = 0.0;
    double B_II = 0.0;  // equals B_I: measurement alone cannot raise it
    double C_III = 0.0;
    double P_III = 0.0;
    double B_III = 0.0;
    bool bunching_degenerate = false;  // T = 1/2: filtration cannot help
};

IndistinguishableSuite indistinguishable_suite(double T, double eps);

struct DistinguishableSuite {
    double F_I = 0.0;
    double C_I = 0.0;
    double B_I = 0.0;
    double P_I = 0.0;
    double C_II = 0.0;
    double P_II = 0.0;
    double C_III = 0.0;      // asymptotic eps -> 0 value, sqrt(C_II)
    double B_III = 0.0;      // asymptotic eps -> 0 value
    double C_III_eps = 0.0;  // finite-eps filtered value
    double P_III_eps = 0.0;
};

DistinguishableSuite distinguishable_suite(double T, double eps);

struct PartialSuite {
    double F = 0.0;  // stage I singlet fidelity
    double C = 0.0;
    double B = 0.0;
    double P = 0.0;
    double C_I_meas = 0.0;  // concurrence right after the measurement
    double P_meas = 0.0;    // cumulative probability after the measurement
    double C_III = 0.0;     // finite-eps filtered concurrence (reference form)
    double P_III = 0.0;
    double B_III = 0.0;           // window-selected branch value
    double B_III_in_window = 0.0;  // branch valid inside the eps window
    double B_III_out_window = 0.0; // branch valid outside the eps window
    bool eps_in_window = false;
    double eps_window_lo = 0.0;
    double eps_window_hi = 0.0;
    double C_III_limit = 0.0;  // eps -> 0
    double B_III_limit = 0.0;  // eps -> 0
};

PartialSuite partial_suite(double p, double T, double eps);

enum class PolarizingRegime { Indistinguishable, Distinguishable };

// Polarization-sensitive coupler with amplitude transmissivities tv, th;
// the environmental photon is measured in |V>. The isotropic results are
// recovered at tv = th = sqrt(T).
struct PolarizingSuite {
    double C_I = 0.0;
    double P_I = 0.0;
    double C_II = 0.0;
    double P_II = 0.0;
    double C_III = 0.0;
    double P_III = 0.0;
    double C_III_limit = 0.0;  // eps -> 0
};

PolarizingSuite polarizing_suite(double tv, double th, double eps,
                                 PolarizingRegime regime);

}  // namespace entloc
