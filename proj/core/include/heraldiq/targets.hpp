#pragma once

#include "heraldiq/dualrail.hpp"
#include "heraldiq/state.hpp"

namespace heraldiq {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

const char* bell_name(BellKind kind);
BellKind bell_from_name(const std::string& name);

/// Dual-rail Fock embedding of the chosen Bell state, norm² = 1.
PureState target_bell(BellKind kind, const DualRailRegister& reg);

/// (1/√d) Σ_i |i⟩^{⊗N} in one-hot rail encoding; N = reg.qudits() ≥ 3 unless
/// `allow_small` (the N = 2 case coincides with a Bell-type state).
PureState target_ghz(const QuditRegister& reg, bool allow_small = false);

/// (|N0⟩ + |0N⟩)/√2 on two modes.
PureState target_noon(int n);

/// (1/√N) Σ_i |0..010..0⟩ in dual rail.
PureState target_w(const DualRailRegister& reg);

/// cos(α)|0101⟩_F + sin(α)|1010⟩_F on a two-qubit register, i.e.
/// cos(α)|11⟩ + sin(α)|00⟩ in the computational basis.
PureState target_phi_alpha(double alpha, const DualRailRegister& reg);

/// Ensemble realizing λ|Ψ−⟩⟨Ψ−| + (1−λ)/4 · I over the 4 computational
/// dual-rail basis states.
StateEnsemble werner_ensemble(double lambda, const DualRailRegister& reg);

}  // namespace heraldiq
