#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "heraldiq/detector.hpp"
#include "heraldiq/dualrail.hpp"
#include "heraldiq/state.hpp"

namespace heraldiq {

/// One accepted click pattern over the herald modes (in herald_modes order),
/// with an optional local-correction tag the scheme applies on that outcome.
struct HeraldPattern {
    std::vector<int> clicks;
    std::string correction;

    bool operator==(const HeraldPattern& o) const { return clicks == o.clicks; }
};

/// Acceptance rules beyond explicit pattern lists.
struct AcceptTotal {
    int total = 0;  // any pattern with Σ clicks = total
};
struct AcceptAny {};  // every outcome accepted (completeness checks)

using HeraldAcceptance = std::variant<std::vector<HeraldPattern>, AcceptTotal, AcceptAny>;

struct HeraldSpec {
    std::vector<int> herald_modes;
    HeraldAcceptance accepted;

    bool accepts(const std::vector<int>& clicks) const;
    /// Correction tag of the matching explicit pattern, empty otherwise.
    std::string correction_for(const std::vector<int>& clicks) const;
    void validate(int total_modes) const;
};

struct PatternOutcome {
    std::vector<int> clicks;
    double probability = 0.0;
    /// Conditional state on the target modes, subnormalized so that its total
    /// weight equals `probability`.
    StateEnsemble conditional;
    std::string correction;
};

struct HeraldResult {
    double success_prob = 0.0;
    std::vector<PatternOutcome> outcomes;
    StateEnsemble combined;
    /// remaining (rejected) probability mass
    double rejected_prob = 0.0;
    /// Relative to the ideal-detector reference on the same input state;
    /// both zero when the detectors are ideal.
    double false_positive_prob = 0.0;
    double false_negative_prob = 0.0;
    /// target mode indices, in the order used by conditional states
    std::vector<int> target_modes;
};

struct HeraldOptions {
    /// Conditional infidelity above which an accepted event counts as a false
    /// positive.
    double infidelity_threshold = 1e-9;
};

/// Projects the herald modes onto detector outcomes. With ideal PNR detectors
/// this is an exact Fock projection; with imperfections, loss acts on the
/// herald modes before detection and click statistics follow each detector
/// model. Conditional states live on the target modes (all modes not listed
/// as herald modes, in ascending order).
HeraldResult herald(const PureState& state, const HeraldSpec& spec,
                    const std::vector<DetectorModel>& detectors, const HeraldOptions& opts = {});
HeraldResult herald(const StateEnsemble& state, const HeraldSpec& spec,
                    const std::vector<DetectorModel>& detectors, const HeraldOptions& opts = {});

/// Postselection on exactly one photon per register pair (all photons
/// measured; nothing survives for further processing). Returns the selection
/// probability and the normalized conditional state on the full mode space.
std::pair<double, PureState> postselect(const PureState& state, const DualRailRegister& reg);

struct EventRates {
    double false_positive_rate = 0.0;
    double false_negative_rate = 0.0;
};

/// Compares a noisy run against an ideal reference run of the same scheme.
/// False positive: noisy-accepted mass whose conditional state deviates from
/// the ideal conditional for that pattern (infidelity > threshold).
/// False negative: ideal-accepted mass that the noisy run no longer delivers
/// as a true accept.
EventRates event_accounting(const HeraldResult& ideal, const HeraldResult& noisy,
                            double infidelity_threshold = 1e-9);

}  // namespace heraldiq
