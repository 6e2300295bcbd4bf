#pragma once

#include <map>
#include <string>
#include <vector>

#include "heraldiq/state.hpp"

namespace heraldiq {

enum class DetectorKind { IdealPnr, Threshold, FanoutPnr };

/// Detector on one herald mode. Loss (1-η) is commuted to just before the
/// detector; dark counts add at most one extra click per window.
struct DetectorModel {
    DetectorKind kind = DetectorKind::IdealPnr;
    int branches = 2;  // FanoutPnr fan-out width
    double efficiency = 1.0;
    double dark_count_prob = 0.0;

    static DetectorModel ideal_pnr();
    static DetectorModel threshold(double efficiency = 1.0, double dark = 0.0);
    static DetectorModel fanout(int branches, double efficiency = 1.0, double dark = 0.0);

    DetectorModel with_efficiency(double eta) const;
    DetectorModel with_dark(double p) const;

    void validate() const;

    /// P(clicks | photons incident), including loss, kind response and dark
    /// counts. Keys are click counts.
    std::map<int, double> click_distribution(int photons) const;
};

/// Click-count distribution when k photons fan out uniformly over b branches
/// of ideal threshold detectors (no loss, no dark counts).
std::map<int, double> fanout_click_distribution(int photons, int branches);

/// Pure-loss channel on one mode at transmissivity η, expanded over the
/// number of photons lost. Component states are subnormalized so that the
/// branch probability is their norm²; total weight is preserved.
StateEnsemble apply_loss(const PureState& state, int mode, double eta);
StateEnsemble apply_loss(const StateEnsemble& state, int mode, double eta);
StateEnsemble apply_loss_all(const StateEnsemble& state, const std::vector<int>& modes,
                             double eta);

}  // namespace heraldiq
