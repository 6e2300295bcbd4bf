#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "heraldiq/occupation.hpp"

namespace heraldiq {

using Complex = std::complex<double>;

/// Sparse superposition over Fock occupations of a fixed mode count.
/// States may be subnormalized: after conditioning, norm² carries the event
/// probability. Nothing here renormalizes implicitly.
class PureState {
public:
    using TermMap = std::map<ModeOccupation, Complex>;

    explicit PureState(int modes) : m_(modes) {}
    PureState(int modes, TermMap terms);

    /// Single basis ket |occ⟩ with amplitude amp.
    static PureState ket(const ModeOccupation& occ, Complex amp = 1.0);

    int modes() const { return m_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    double norm2() const { return norm2_; }
    Complex amplitude(const ModeOccupation& occ) const;

    /// Total photon number if every term agrees, else -1.
    int definite_photon_number() const;

    PureState normalized() const;
    PureState scaled(Complex factor) const;
    PureState operator+(const PureState& other) const;

    /// ⟨this|other⟩.
    Complex inner(const PureState& other) const;

    /// Tensor product; mode indices of `other` are shifted by modes().
    PureState tensor(const PureState& other) const;

    /// Keep only the terms accepted by `pred` (no renormalization).
    PureState filtered(const std::function<bool(const ModeOccupation&)>& pred) const;

    /// Drop terms with |amp| <= eps and return the cleaned state.
    PureState pruned(double eps = 1e-15) const;

    std::string str(double eps = 1e-9) const;

private:
    int m_ = 0;
    TermMap terms_;
    double norm2_ = 0.0;
};

/// Convex mixture of (weight, possibly subnormalized pure state) branches.
/// Represents a density operator Σ w_i |φ_i⟩⟨φ_i| without densifying it.
class StateEnsemble {
public:
    struct Component {
        double weight = 1.0;
        PureState state;
    };

    StateEnsemble() = default;
    explicit StateEnsemble(PureState pure) { components_.push_back({1.0, std::move(pure)}); }
    explicit StateEnsemble(std::vector<Component> components);

    const std::vector<Component>& components() const { return components_; }
    bool empty() const { return components_.empty(); }

    void add(double weight, PureState state);

    /// Σ w_i ‖φ_i‖², the total probability mass carried by the ensemble.
    double total_weight() const;

    /// ⟨n⟩ of a single-mode ensemble.
    double mean_photon_number() const;
    /// P(n) of a single-mode ensemble.
    std::map<int, double> photon_number_distribution() const;

    StateEnsemble scaled(double factor) const;
    StateEnsemble merged(const StateEnsemble& other) const;

private:
    std::vector<Component> components_;
};

/// Normalized-overlap fidelity: F = Σ w_i |⟨target|φ_i⟩|² / Σ w_i ‖φ_i‖².
/// The target is normalized internally; subnormalized inputs compare their
/// conditional states, so F is invariant under global phase and scale.
double fidelity(const PureState& state, const PureState& target);
double fidelity(const StateEnsemble& state, const PureState& target);

}  // namespace heraldiq
