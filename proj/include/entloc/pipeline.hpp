#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entloc/metrics.hpp"
#include "entloc/qstate.hpp"

// Stage-by-stage construction of the protocol states. Everything is built
// numerically from the explicit three-photon state (subsystem order A, B, E)
// using qstate primitives; the closed forms in formulas.hpp are the
// independent cross-check, not the implementation.

namespace entloc {

enum class Regime { Indistinguishable, Distinguishable, Partial };
enum class InputState { Singlet, Experimental };
enum class Outcome { H, V };
enum class Stage { Mixing, Measurement, Filtration };

// Passive coupling between photons B and E. Isotropic couplers are the
// T-parametrized beam splitter; polarizing couplers have separate amplitude
// transmissivities for the two polarizations.
struct Coupling {
    double tv = 1.0;
    double th = 1.0;

    static Coupling isotropic(double T);
    static Coupling polarizing(double tv, double th);

    bool is_isotropic() const { return tv == th; }
    double transmissivity() const { return tv * tv; }  // isotropic couplers
};

struct CouplingConfig {
    Regime regime = Regime::Indistinguishable;
    double p = 1.0;  // used only when regime == Partial
    Coupling coupling = Coupling::isotropic(0.5);
    InputState input_state = InputState::Singlet;

    // Weight of the interfering (indistinguishable) component.
    double mixing_weight() const;
};

// Which arm carries the balancing filter. Auto applies the regime rule:
// the indistinguishable coupling balances on arm A (attenuating A's
// polarization in the heavier of the two coherent diagonal elements); the
// distinguishable and partial couplings attenuate the measured outcome's
// polarization on whichever arm holds it in the heavier element.
enum class BalanceBranch { Auto, OnA, OnB, None };

struct ArmGains {
    double a_gain_h = 1.0;
    double a_gain_v = 1.0;
    double b_gain_h = 1.0;
    double b_gain_v = 1.0;
};

struct FilterConfig {
    double eps = 1.0;
    BalanceBranch balance = BalanceBranch::Auto;
    // When set, the gains are applied verbatim and eps/balance are ignored.
    std::optional<ArmGains> explicit_gains;
};

struct StageResult {
    Stage stage = Stage::Mixing;
    DensityMatrix rho;
    double success_probability = 1.0;     // conditional on earlier stages
    double cumulative_probability = 1.0;  // product over stages so far
    MetricReport metrics;
    std::optional<Outcome> outcome;

    StageResult() : rho(Cmat::Identity(4, 4) / 4.0) {}
};

StageResult stage_mix(const CouplingConfig& cfg);
StageResult stage_measure(const CouplingConfig& cfg, Outcome outcome);
StageResult stage_filter(const StageResult& prev, const CouplingConfig& cfg,
                         const FilterConfig& f);

std::vector<StageResult> run_protocol(const CouplingConfig& cfg, const FilterConfig& f,
                                      Outcome outcome = Outcome::H);

std::string stage_label(Stage s);  // "I", "II", "III"
std::string outcome_label(Outcome o);
std::string to_json(const StageResult& r);

// Unnormalized three-photon state (A x B x E, dims {2,2,2}) after the
// coupling, post-selected on one photon per output mode; its trace is the
// stage-I success probability. Exposed for the oracle equivalence tests.
Cmat three_photon_state(const CouplingConfig& cfg);

}  // namespace entloc
