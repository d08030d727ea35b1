#include "entloc/pipeline.hpp"

#include <cmath>
#include <sstream>

namespace entloc {

namespace {

int idx(int a, int b, int e) { return 4 * a + 2 * b + e; }

// Input pair amplitudes psi(a, sigma): photon A polarization a, photon B
// polarization sigma.
Complex pair_amp(InputState in, int a, int sigma) {
    const double s = 1.0 / std::sqrt(2.0);
    if (a == 0 && sigma == 1) return Complex(s, 0.0);
    if (a == 1 && sigma == 0) {
        return in == InputState::Singlet ? Complex(-s, 0.0) : Complex(0.0, s);
    }
    return Complex(0.0, 0.0);
}

struct CouplingAmps {
    double t[2];
    double r[2];
};

CouplingAmps amps_of(const Coupling& c) {
    CouplingAmps a;
    a.t[0] = c.th;
    a.t[1] = c.tv;
    a.r[0] = std::sqrt(std::max(0.0, 1.0 - c.th * c.th));
    a.r[1] = std::sqrt(std::max(0.0, 1.0 - c.tv * c.tv));
    return a;
}

}  // namespace

Coupling Coupling::isotropic(double T) {
    if (!(T >= 0.0 && T <= 1.0)) {
        throw std::invalid_argument("Coupling::isotropic: T must lie in [0,1]");
    }
    Coupling c;
    c.tv = c.th = std::sqrt(T);
    return c;
}

Coupling Coupling::polarizing(double tv, double th) {
    if (!(tv >= 0.0 && tv <= 1.0) || !(th >= 0.0 && th <= 1.0)) {
        throw std::invalid_argument("Coupling::polarizing: amplitudes must lie in [0,1]");
    }
    Coupling c;
    c.tv = tv;
    c.th = th;
    return c;
}

double CouplingConfig::mixing_weight() const {
    switch (regime) {
        case Regime::Indistinguishable:
            return 1.0;
        case Regime::Distinguishable:
            return 0.0;
        case Regime::Partial:
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument("CouplingConfig: p must lie in [0,1]");
            }
            return p;
    }
    return 0.0;
}

Cmat three_photon_state(const CouplingConfig& cfg) {
    const double w = cfg.mixing_weight();
    const auto ca = amps_of(cfg.coupling);

    Cmat rho = Cmat::Zero(8, 8);

    // Interfering component: for each environment input tau the anti-bunched
    // output is a coherent superposition over the input pair.
    if (w > 0.0) {
        for (int tau = 0; tau < 2; ++tau) {
            Cvec phi = Cvec::Zero(8);
            for (int a = 0; a < 2; ++a) {
                for (int sigma = 0; sigma < 2; ++sigma) {
                    const Complex psi = pair_amp(cfg.input_state, a, sigma);
                    if (psi == Complex(0.0, 0.0)) continue;
                    if (sigma == tau) {
                        phi(idx(a, sigma, tau)) +=
                            psi * (2.0 * ca.t[sigma] * ca.t[sigma] - 1.0);
                    } else {
                        phi(idx(a, sigma, tau)) += psi * ca.t[sigma] * ca.t[tau];
                        phi(idx(a, tau, sigma)) -= psi * ca.r[sigma] * ca.r[tau];
                    }
                }
            }
            rho += (w / 2.0) * phi * phi.adjoint();
        }
    }

    // Non-interfering component: the transmitted-transmitted and
    // reflected-reflected paths are distinguishable, so they add as
    // separate branches.
    if (w < 1.0) {
        for (int tau = 0; tau < 2; ++tau) {
            Cvec chi1 = Cvec::Zero(8);
            Cvec chi2 = Cvec::Zero(8);
            for (int a = 0; a < 2; ++a) {
                for (int sigma = 0; sigma < 2; ++sigma) {
                    const Complex psi = pair_amp(cfg.input_state, a, sigma);
                    if (psi == Complex(0.0, 0.0)) continue;
                    chi1(idx(a, sigma, tau)) += psi * ca.t[sigma] * ca.t[tau];
                    chi2(idx(a, tau, sigma)) -= psi * ca.r[sigma] * ca.r[tau];
                }
            }
            rho += ((1.0 - w) / 2.0) *
                   (chi1 * chi1.adjoint() + chi2 * chi2.adjoint());
        }
    }

    return rho;
}

StageResult stage_mix(const CouplingConfig& cfg) {
    const Cmat rho_abe = three_photon_state(cfg);
    const double p_i = rho_abe.trace().real();
    StageResult r;
    r.stage = Stage::Mixing;
    r.rho = partial_trace(DensityMatrix::from_unnormalized(rho_abe), {0, 1}, {2, 2, 2});
    r.success_probability = p_i;
    r.cumulative_probability = p_i;
    r.metrics = metric_report(r.rho);
    return r;
}

StageResult stage_measure(const CouplingConfig& cfg, Outcome outcome) {
    if (cfg.coupling.tv < 1e-7 && cfg.coupling.th < 1e-7) {
        throw DegenerateCoupling(
            "stage_measure: fully reflective coupling never transmits the signal");
    }
    const Cmat rho_abe = three_photon_state(cfg);
    const double p_i = rho_abe.trace().real();
    const auto state = DensityMatrix::from_unnormalized(rho_abe);
    const Ket proj = outcome == Outcome::H ? ket_h() : ket_v();
    auto [rho_ii, p_cond] = project(state, 2, proj, {2, 2, 2});

    StageResult r;
    r.stage = Stage::Measurement;
    r.rho = rho_ii;
    r.success_probability = p_cond;
    r.cumulative_probability = p_i * p_cond;
    r.metrics = metric_report(r.rho);
    r.outcome = outcome;
    return r;
}

namespace {

struct BalancePlan {
    Side side;
    int pol;  // 0 = H, 1 = V
    double gain;
};

// Decide the balancing filter from the two coherent diagonal elements
// rho(HV,HV) and rho(VH,VH) of the post-measurement state.
std::optional<BalancePlan> plan_balance(const StageResult& prev, const CouplingConfig& cfg,
                                        BalanceBranch branch) {
    const double hv = prev.rho.mat()(1, 1).real();
    const double vh = prev.rho.mat()(2, 2).real();
    if (std::abs(hv - vh) < 1e-15) return std::nullopt;
    const bool heavy_hv = hv > vh;
    const double heavy = heavy_hv ? hv : vh;
    const double light = heavy_hv ? vh : hv;
    if (heavy < 1e-15) return std::nullopt;

    BalancePlan plan;
    plan.gain = std::sqrt(std::clamp(light / heavy, 0.0, 1.0));
    switch (branch) {
        case BalanceBranch::None:
            return std::nullopt;
        case BalanceBranch::OnA:
            plan.side = Side::A;
            break;
        case BalanceBranch::OnB:
            plan.side = Side::B;
            break;
        case BalanceBranch::Auto:
            if (cfg.regime == Regime::Indistinguishable) {
                plan.side = Side::A;
            } else {
                // Attenuate the measured polarization on the arm that holds
                // it in the heavy element; this never touches the noise term.
                const int o = prev.outcome == Outcome::H ? 0 : 1;
                const int heavy_a_pol = heavy_hv ? 0 : 1;
                plan.side = (heavy_a_pol == o) ? Side::A : Side::B;
            }
            break;
    }
    // The attenuated polarization is the chosen arm's component of the
    // heavy element (|HV> has H on arm A and V on arm B).
    plan.pol = (plan.side == Side::A) ? (heavy_hv ? 0 : 1) : (heavy_hv ? 1 : 0);
    return plan;
}

}  // namespace

StageResult stage_filter(const StageResult& prev, const CouplingConfig& cfg,
                         const FilterConfig& f) {
    if (prev.stage != Stage::Measurement) {
        throw std::invalid_argument("stage_filter: expected a measurement-stage input");
    }
    if (!prev.outcome.has_value()) {
        throw std::invalid_argument("stage_filter: missing measurement outcome");
    }
    if (!(f.eps > 0.0 && f.eps <= 1.0)) {
        throw std::invalid_argument("stage_filter: eps must lie in (0,1]");
    }

    DensityMatrix rho = prev.rho;
    double p_cond = 1.0;
    auto apply = [&](const LocalFilter& filter) {
        auto [next, p] = apply_filter(rho, filter);
        rho = next;
        p_cond *= p;
    };

    if (f.explicit_gains.has_value()) {
        const ArmGains& g = *f.explicit_gains;
        apply(LocalFilter(Side::A, g.a_gain_h, g.a_gain_v));
        apply(LocalFilter(Side::B, g.b_gain_h, g.b_gain_v));
    } else {
        if (const auto plan = plan_balance(prev, cfg, f.balance)) {
            const double gh = plan->pol == 0 ? plan->gain : 1.0;
            const double gv = plan->pol == 1 ? plan->gain : 1.0;
            apply(LocalFilter(plan->side, gh, gv));
        }
        if (f.eps < 1.0) {
            const double root_eps = std::sqrt(f.eps);
            // Attenuate the polarization orthogonal to the measured outcome
            // on both arms.
            const double gh = *prev.outcome == Outcome::V ? root_eps : 1.0;
            const double gv = *prev.outcome == Outcome::H ? root_eps : 1.0;
            apply(LocalFilter(Side::A, gh, gv));
            apply(LocalFilter(Side::B, gh, gv));
        }
    }

    StageResult r;
    r.stage = Stage::Filtration;
    r.rho = rho;
    r.success_probability = p_cond;
    r.cumulative_probability = prev.cumulative_probability * p_cond;
    r.metrics = metric_report(r.rho);
    r.outcome = prev.outcome;
    return r;
}

std::vector<StageResult> run_protocol(const CouplingConfig& cfg, const FilterConfig& f,
                                      Outcome outcome) {
    std::vector<StageResult> stages;
    stages.push_back(stage_mix(cfg));
    stages.push_back(stage_measure(cfg, outcome));
    stages.push_back(stage_filter(stages.back(), cfg, f));
    return stages;
}

std::string stage_label(Stage s) {
    switch (s) {
        case Stage::Mixing:
            return "I";
        case Stage::Measurement:
            return "II";
        case Stage::Filtration:
            return "III";
    }
    return "?";
}

std::string outcome_label(Outcome o) { return o == Outcome::H ? "H" : "V"; }

std::string to_json(const StageResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"stage\":\"" << stage_label(r.stage) << "\"";
    if (r.outcome.has_value()) {
        os << ",\"outcome\":\"" << outcome_label(*r.outcome) << "\"";
    }
    os << ",\"success_probability\":" << r.success_probability
       << ",\"cumulative_probability\":" << r.cumulative_probability
       << ",\"metrics\":{\"concurrence\":" << r.metrics.concurrence
       << ",\"bell_max\":" << r.metrics.bell_max
       << ",\"linear_entropy\":" << r.metrics.linear_entropy
       << ",\"purity\":" << r.metrics.purity << "}"
       << ",\"rho\":" << to_json(r.rho) << "}";
    return os.str();
}

}  // namespace entloc
