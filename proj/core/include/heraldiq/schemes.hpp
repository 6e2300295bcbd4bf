#pragma once

#include <optional>

#include "heraldiq/circuit.hpp"
#include "heraldiq/evolve.hpp"
#include "heraldiq/herald.hpp"
#include "heraldiq/rational.hpp"
#include "heraldiq/targets.hpp"

namespace heraldiq {

/// What a scheme is meant to produce on its target modes (indices are
/// positions within the target-mode list, not raw circuit modes).
struct TargetSpec {
    enum class Kind { Bell, Ghz, Noon, W, PhiAlpha };
    Kind kind = Kind::Bell;
    BellKind bell = BellKind::PsiPlus;
    int n = 2;  // ghz/noon/w size
    int d = 2;  // ghz local dimension
    double alpha = 0.0;
    std::vector<std::pair<int, int>> register_pairs;  // dual-rail pairs (qubit targets)
    std::vector<std::vector<int>> register_rails;     // qudit rails (ghz d>2)

    /// Target state on `modes` target modes.
    PureState state(int modes) const;
    /// Bell variant override used by tagged herald patterns.
    PureState state_for_tag(int modes, const std::string& tag) const;
    DualRailRegister dual_rail() const;
};

enum class CorrectionClass { None, Phases, Paulis };

/// Executable generation scheme: circuit, input, heralding and target.
struct SchemeDefinition {
    std::string name;
    Circuit circuit;
    ModeOccupation input;
    HeraldSpec herald_spec;
    std::vector<DetectorModel> detectors;  // one per herald mode
    TargetSpec target;
    std::optional<Rational> expected_success;
    CorrectionClass correction = CorrectionClass::None;
    /// postselected schemes use a one-photon-per-pair rule over the full mode
    /// space instead of heralding
    bool postselected = false;
    std::vector<std::pair<int, int>> postselect_pairs;
    std::string provenance;  // builtin | reconstructed | discovered | external
    std::string note;

    void validate() const;
};

struct DetectorOverrides {
    std::optional<double> efficiency;
    std::optional<double> dark;
    std::optional<DetectorKind> kind;
    std::optional<int> fanout_branches;
    /// loss applied to target modes after the circuit
    std::optional<double> target_efficiency;
};

struct PatternReport {
    std::vector<int> clicks;
    double probability = 0.0;
    std::string tag;
    double fidelity_raw = 0.0;
    double fidelity_corrected = 0.0;
};

struct SchemeRunResult {
    std::string scheme;
    double success_prob = 0.0;
    std::optional<Rational> expected_success;
    std::vector<PatternReport> patterns;
    /// probability-weighted corrected fidelity over accepted patterns
    double fidelity = 0.0;
    double false_positive_prob = 0.0;
    double false_negative_prob = 0.0;
    HeraldResult herald;
};

/// Simulates a scheme end to end: evolve, herald (or postselect), compare
/// conditionals against the declared targets with the declared correction
/// class. Detector overrides model imperfect runs; rates are reported
/// against the ideal reference run.
SchemeRunResult run_scheme(const SchemeDefinition& scheme, const DetectorOverrides& over = {},
                           const EvolveOptions& evolve_opts = {});

/// Best fidelity against `target` over the given correction class
/// (local qubit phases, optionally Pauli X flips) applied to the register.
double corrected_fidelity(const StateEnsemble& conditional, const PureState& target,
                          const DualRailRegister& reg, CorrectionClass cls);

/// Built-in schemes: the postselected Bell generator, the 5-photon Fourier
/// Bell generator, the 6-photon multiport Bell generator, the two-photon
/// bunching source, plus any verified scheme files found in `scheme_dir`.
std::vector<SchemeDefinition> builtin_registry(const std::string& scheme_dir = {});

/// nullopt if the name is unknown.
std::optional<SchemeDefinition> find_scheme(const std::string& name,
                                            const std::string& scheme_dir = {});

}  // namespace heraldiq
