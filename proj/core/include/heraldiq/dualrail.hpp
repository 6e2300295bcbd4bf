#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heraldiq/state.hpp"

namespace heraldiq {

/// One (mode_a, mode_b) pair per qubit; |0⟩ = one photon in mode_a,
/// |1⟩ = one photon in mode_b. All modes must be distinct.
class DualRailRegister {
public:
    DualRailRegister() = default;
    explicit DualRailRegister(std::vector<std::pair<int, int>> pairs);

    /// Qubits on consecutive modes: (0,1), (2,3), ...
    static DualRailRegister consecutive(int qubits, int first_mode = 0);

    int qubits() const { return static_cast<int>(pairs_.size()); }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    /// Highest mode index used, plus one.
    int min_modes() const;
    std::vector<int> all_modes() const;

private:
    std::vector<std::pair<int, int>> pairs_;
};

/// Rail register for d-level systems: d modes per qudit, one-hot encoded.
class QuditRegister {
public:
    QuditRegister(int dim, std::vector<std::vector<int>> rails);
    static QuditRegister consecutive(int qudits, int dim, int first_mode = 0);

    int dim() const { return dim_; }
    int qudits() const { return static_cast<int>(rails_.size()); }
    const std::vector<std::vector<int>>& rails() const { return rails_; }
    int min_modes() const;

private:
    int dim_;
    std::vector<std::vector<int>> rails_;
};

/// Product Fock state for a computational bitstring, norm² = 1.
/// Modes outside the register are vacuum.
PureState encode_qubits(const std::string& bits, const DualRailRegister& reg,
                        std::optional<int> total_modes = std::nullopt);

/// Qubit-basis amplitudes recovered from a Fock state, plus the weight that
/// leaked outside the computational subspace (any term without exactly one
/// photon per pair, or with photons outside the register).
struct DecodeResult {
    /// amplitude per bitstring, sorted by bitstring
    std::vector<std::pair<std::string, Complex>> amplitudes;
    double computational_weight = 0.0;
    double leakage_weight = 0.0;
};

DecodeResult decode_qubits(const PureState& state, const DualRailRegister& reg);

}  // namespace heraldiq
