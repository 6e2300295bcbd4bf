#pragma once

#include "heraldiq/circuit.hpp"
#include "heraldiq/permanent.hpp"
#include "heraldiq/state.hpp"

namespace heraldiq {

struct EvolveOptions {
    int max_photons = 12;
    int max_modes = 26;
    /// Drop output amplitudes with |amp| below this (0 = keep everything).
    double amplitude_threshold = 0.0;
    /// Worker threads for the output-occupation loop; results are
    /// deterministic regardless of the thread count.
    int threads = 1;
};

/// Exact multi-photon evolution through a mode unitary. The amplitude of
/// output occupation T from input S is Per(U_{S,T}) / √(∏S_i!·∏T_j!).
/// Photon number and norm² are preserved. Superpositions of different total
/// photon numbers evolve sector by sector.
PureState evolve(const PureState& s, const Matrix& u, const EvolveOptions& opts = {});

StateEnsemble evolve(const StateEnsemble& s, const Matrix& u, const EvolveOptions& opts = {});

/// Photons with internal structure over a shared orthonormal internal basis.
/// Basis index 0 is the reference bit all photons may share; any other index
/// is a photon-specific "bad bit" and may appear in at most one photon
/// (orthogonal-bad-bits form). At most two nonzero entries per photon.
struct LabeledPhoton {
    int mode = 0;
    std::vector<Complex> internal;  // coefficients over the internal basis
};

struct LabeledInput {
    std::vector<LabeledPhoton> photons;
};

/// Mixture produced by propagating partially distinguishable photons.
/// Components carry the number of photons that took a bad-bit branch;
/// only bad_photons == 0 components live in the reference internal sector
/// and can overlap a computational target.
struct LabeledEnsemble {
    struct Component {
        double weight = 1.0;
        PureState state;
        int bad_photons = 0;
    };
    std::vector<Component> components;

    StateEnsemble as_ensemble() const;
    /// Probability of the given mode occupation.
    double probability(const ModeOccupation& occ) const;
    double total_weight() const;
};

/// Expands each photon over the internal basis, evolves photons sharing a
/// label coherently, and combines distinct labels incoherently.
LabeledEnsemble evolve_labeled(const LabeledInput& input, const Matrix& u,
                               const EvolveOptions& opts = {});

/// Fidelity against a target of perfectly indistinguishable reference-bit
/// photons: bad-bit components carry weight but cannot overlap the target.
double labeled_fidelity(const LabeledEnsemble& ens, const PureState& target);

/// Outcome of heralding a 3-mode gate with ancilla input |10⟩ on modes 1,2
/// and accepted ancilla pattern (1,0). Validates the conditional sign flip
/// α|0⟩+β|1⟩+γ|2⟩ → α|0⟩+β|1⟩−γ|2⟩ on mode 0.
struct NsGateReport {
    std::array<Complex, 3> output;   // conditional amplitudes of |0⟩,|1⟩,|2⟩
    double success_prob = 0.0;       // norm² of the heralded branch
    bool sign_flipped = false;       // output ∝ (α, β, −γ) up to global phase
};

NsGateReport ns_gate_check(const std::array<Complex, 3>& input, const Matrix& u3,
                           double tol = 1e-9);

/// The standard optimal nonlinear-sign gate unitary (success probability 1/4).
Matrix optimal_ns_unitary();

}  // namespace heraldiq
