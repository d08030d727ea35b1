#include "entloc/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entloc {

namespace {

constexpr double kRoot2 = 1.4142135623730951;

void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
    }
}

void require_eps(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("eps must lie in (0,1]");
    }
}

// Bell factor of the filtered X-state family diag(0,1,1,s)/(2+s) with
// relative coherence kappa between the middle basis states. The two branch
// expressions coincide at the window boundary |s-2| = 2*kappa.
double bell_branch_in(double kappa, double s) { return 4.0 * kRoot2 * kappa / (2.0 + s); }

double bell_branch_out(double kappa, double s) {
    return 2.0 * std::sqrt(4.0 * kappa * kappa + (s - 2.0) * (s - 2.0)) / (2.0 + s);
}

}  // namespace

double effective_transmissivity(double T1, double T2, double phi) {
    require_unit_interval(T1, "T1");
    require_unit_interval(T2, "T2");
    const double R1 = 1.0 - T1;
    const double R2 = 1.0 - T2;
    double T = T1 + T2 - 2.0 * T1 * T2 + std::sqrt(T1 * T2 * R1 * R2) * std::cos(2.0 * phi);
    if (T < -1e-9 || T > 1.0 + 1e-9) {
        throw ModelInconsistency("effective_transmissivity: value " + std::to_string(T) +
                                 " outside [0,1]");
    }
    return std::clamp(T, 0.0, 1.0);
}

double effective_transmissivity_composed(double T1, double T2, double phi) {
    require_unit_interval(T1, "T1");
    require_unit_interval(T2, "T2");
    const double R1 = 1.0 - T1;
    const double R2 = 1.0 - T2;
    // |t1 t2 e^{-i phi} - r1 r2 e^{i phi}|^2 for real splitter amplitudes.
    return T1 * T2 + R1 * R2 - 2.0 * std::sqrt(T1 * T2 * R1 * R2) * std::cos(2.0 * phi);
}

double hom_visibility(double p, double T) {
    require_unit_interval(p, "p");
    require_unit_interval(T, "T");
    const double R = 1.0 - T;
    const double denom = R * R + T * T;
    return p * 2.0 * R * T / denom;
}

IndistinguishableSuite indistinguishable_suite(double T, double eps) {
    require_unit_interval(T, "T");
    require_eps(eps);
    const double R = 1.0 - T;
    IndistinguishableSuite s;

    const double pI = 1.0 - 3.0 * T * R;
    s.P_I = pI;
    s.F_I = (3.0 * T - 1.0) * (3.0 * T - 1.0) / (4.0 * pI);
    s.C_I = std::max(0.0, (3.0 * T * T - 1.0) / (2.0 * pI));
    s.B_I = 2.0 * kRoot2 * T * std::abs(1.0 - 2.0 * T) / pI;

    s.C_II = T * std::abs(2.0 * T - 1.0) / pI;
    s.P_II = pI / 2.0;
    s.B_II = s.B_I;

    const double g = 2.0 * T - 1.0;
    if (std::abs(g) < 1e-15) {
        // Complete bunching: the post-measurement state carries no coherence
        // and no local filter can create any. Balancing removes the entire
        // coherent part, leaving only the attenuated noise term.
        s.bunching_degenerate = true;
        s.C_III = 0.0;
        s.P_III = eps * eps * R * R / 4.0;
        s.B_III = 2.0;
        return s;
    }

    s.C_III = 2.0 * g * g / (2.0 * g * g + eps * R * R);
    // Balancing branch: the larger of the two middle matrix elements, T^2 or
    // (2T-1)^2, is attenuated down to the smaller one before the eps filter.
    double alpha, delta;
    if (T > std::abs(g)) {
        alpha = g * g;
        delta = R * R;
    } else {
        alpha = T * T;
        delta = (T * R / g) * (T * R / g);
    }
    s.P_III = (2.0 * eps * alpha + eps * eps * delta) / 4.0;

    const double sv = delta * eps / alpha;  // noise-to-signal ratio of the filtered state
    const double kappa = 1.0;               // the coherent part is pure after balancing
    const bool in_window = std::abs(sv - 2.0) <= 2.0 * kappa;
    s.B_III = in_window ? bell_branch_in(kappa, sv) : bell_branch_out(kappa, sv);
    return s;
}

DistinguishableSuite distinguishable_suite(double T, double eps) {
    require_unit_interval(T, "T");
    require_eps(eps);
    const double R = 1.0 - T;
    DistinguishableSuite s;

    const double pI = T * T + R * R;
    s.P_I = pI;
    s.F_I = (5.0 * T * T - 2.0 * T + 1.0) / (4.0 * pI);
    s.C_I = std::max(0.0, (T * T + 2.0 * T - 1.0) / (2.0 * pI));
    s.B_I = 2.0 * kRoot2 * T * T / pI;

    s.C_II = T * T / pI;
    s.P_II = pI / 2.0;

    s.C_III = T / std::sqrt(pI);  // sqrt(C_II)
    s.B_III = 2.0 * std::sqrt(1.0 + T * T / pI);

    const double beta = T * T;
    const double delta = R * R;
    const double xi = T * T * T / std::sqrt(pI);
    s.C_III_eps = 2.0 * eps * xi / (2.0 * eps * beta + eps * eps * delta);
    s.P_III_eps = (2.0 * eps * beta + eps * eps * delta) / 4.0;
    return s;
}

PartialSuite partial_suite(double p, double T, double eps) {
    require_unit_interval(p, "p");
    require_unit_interval(T, "T");
    require_eps(eps);
    const double R = 1.0 - T;
    PartialSuite s;

    const double pI = 1.0 - (2.0 + p) * T * R;
    s.P = pI;
    s.F = ((4.0 * p + 5.0) * T * T - 2.0 * (2.0 * p + 1.0) * T + 1.0) / (4.0 * pI);
    s.C = std::max(0.0, 2.0 * s.F - 1.0);
    s.B = 2.0 * kRoot2 * T * std::abs(T - p * R) / pI;

    s.C_I_meas = std::max(0.0, std::abs((1.0 + p) * T * T - p * T) / pI);
    s.P_meas = pI / 2.0;

    // Middle diagonal elements (in 4x units) of the post-measurement state:
    // b on |HV>, c on |VH>, noise d on |VV>, coherence magnitude T|T-pR|.
    const double b = T * T;
    const double c = 1.0 - 2.0 * (1.0 + p) * T * R;
    const double d = R * R;

    if (c < 1e-15) {
        // Bunching coincidence (p = 1, T = 1/2): no coherence survives.
        s.C_III = 0.0;
        s.C_III_limit = 0.0;
        s.B_III = 2.0;
        s.B_III_in_window = 0.0;
        s.B_III_out_window = 2.0;
        s.B_III_limit = 2.0;
        s.eps_window_lo = s.eps_window_hi = 0.0;
        return s;
    }

    const double root_c = std::sqrt(c);
    const double kappa = std::abs(T - p * R) / root_c;
    s.C_III = 2.0 * T * T * std::abs(T - p * R) / (root_c * (eps * R * R + 2.0 * T * T));
    s.P_III = (2.0 * eps * b + eps * eps * d) / 4.0;
    s.C_III_limit = std::max(0.0, kappa);
    s.B_III_limit = 2.0 * std::sqrt(1.0 + kappa * kappa);

    s.eps_window_lo = 2.0 * b * (root_c - std::abs(T - p * R)) / (d * root_c);
    s.eps_window_hi = 2.0 * b * (root_c + std::abs(T - p * R)) / (d * root_c);
    const double sv = d * eps / b;
    s.B_III_in_window = bell_branch_in(kappa, sv);
    s.B_III_out_window = bell_branch_out(kappa, sv);
    s.eps_in_window = (eps >= s.eps_window_lo && eps <= s.eps_window_hi);
    s.B_III = s.eps_in_window ? s.B_III_in_window : s.B_III_out_window;
    return s;
}

PolarizingSuite polarizing_suite(double tv, double th, double eps,
                                 PolarizingRegime regime) {
    require_unit_interval(tv, "tv");
    require_unit_interval(th, "th");
    require_eps(eps);
    if (tv == 0.0 && th == 0.0) {
        throw DegenerateCoupling("polarizing_suite: tv = th = 0");
    }
    const double tv2 = tv * tv;
    const double th2 = th * th;
    const double q = (1.0 - tv2) * (1.0 - th2);
    PolarizingSuite s;

    if (regime == PolarizingRegime::Indistinguishable) {
        const double a2 = (1.0 - 2.0 * tv2) * (1.0 - 2.0 * tv2);
        const double ah2 = (1.0 - 2.0 * th2) * (1.0 - 2.0 * th2);
        const double b2 = tv2 * th2;

        s.P_I = (2.0 * b2 + a2 + ah2 + 2.0 * q) / 4.0;
        s.C_I = std::max(0.0, (2.0 * tv * th * std::abs(th2 - 1.0 + tv2) - q) /
                                  (2.0 * s.P_I));

        s.P_II = (b2 + a2 + q) / 4.0;
        s.C_II = th * tv * std::abs(1.0 - 2.0 * tv2) / (2.0 * s.P_II);

        if (a2 < 1e-15) {
            // tv^2 = 1/2: the post-measurement coherence vanishes and
            // balancing leaves nothing but noise.
            s.C_III = 0.0;
            s.C_III_limit = 0.0;
            s.P_III = eps * eps * q / 4.0;
            return s;
        }
        s.C_III = 2.0 * a2 / (2.0 * a2 + eps * q);
        s.C_III_limit = 1.0;
        // Branch rule: the balancing filter attenuates whichever of the two
        // middle elements, a2 or b2, is larger.
        if (b2 >= a2) {
            s.P_III = (2.0 * eps * a2 + eps * eps * q) / 4.0;
        } else {
            s.P_III = (2.0 * eps * b2 + eps * eps * q * b2 / a2) / 4.0;
        }
        return s;
    }

    const double rv2 = 1.0 - tv2;
    const double rh2 = 1.0 - th2;
    s.P_I = (2.0 * q + rh2 * rh2 + th2 * (th2 + tv2) + rv2 * rv2 + tv2 * (th2 + tv2)) / 4.0;
    s.C_I = std::max(0.0, (th * tv * (th2 + tv2) - q) / (2.0 * s.P_I));

    s.P_II = (th2 * tv2 + tv2 * tv2 + rv2 * rv2 + q) / 4.0;
    s.C_II = th * tv2 * tv / (2.0 * s.P_II);

    const double heavy = std::sqrt(tv2 * tv2 + rv2 * rv2);
    s.P_III = (2.0 * eps * tv2 * th2 + eps * eps * q) / 4.0;
    s.C_III = eps * tv2 * tv2 * th2 / (2.0 * s.P_III * heavy);
    s.C_III_limit = tv2 / heavy;
    return s;
}

}  // namespace entloc
