#include "heraldiq/detector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace heraldiq {

namespace {

double binom(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

DetectorModel DetectorModel::ideal_pnr() { return {}; }

DetectorModel DetectorModel::threshold(double efficiency, double dark) {
    return {DetectorKind::Threshold, 2, efficiency, dark};
}

DetectorModel DetectorModel::fanout(int branches, double efficiency, double dark) {
    return {DetectorKind::FanoutPnr, branches, efficiency, dark};
}

DetectorModel DetectorModel::with_efficiency(double eta) const {
    DetectorModel d = *this;
    d.efficiency = eta;
    return d;
}

DetectorModel DetectorModel::with_dark(double p) const {
    DetectorModel d = *this;
    d.dark_count_prob = p;
    return d;
}

void DetectorModel::validate() const {
    if (efficiency < 0.0 || efficiency > 1.0) {
        throw std::invalid_argument("DetectorModel: efficiency outside [0,1]");
    }
    if (dark_count_prob < 0.0 || dark_count_prob >= 1.0) {
        throw std::invalid_argument("DetectorModel: dark count probability outside [0,1)");
    }
    if (kind == DetectorKind::FanoutPnr && branches < 1) {
        throw std::invalid_argument("DetectorModel: fan-out needs at least one branch");
    }
}

std::map<int, double> fanout_click_distribution(int photons, int branches) {
    if (photons < 0 || branches < 1) {
        throw std::invalid_argument("fanout_click_distribution: bad arguments");
    }
    // occupied-branch count is a Markov chain over photons: a photon joins an
    // occupied branch with probability c/b, a fresh one with (b-c)/b
    std::map<int, double> dist;
    dist[0] = 1.0;
    for (int p = 0; p < photons; ++p) {
        std::map<int, double> next;
        for (const auto& [c, prob] : dist) {
            if (c > 0) next[c] += prob * c / branches;
            if (c < branches) next[c + 1] += prob * (branches - c) / branches;
        }
        dist = std::move(next);
    }
    return dist;
}

std::map<int, double> DetectorModel::click_distribution(int photons) const {
    validate();
    std::map<int, double> surv;
    if (efficiency >= 1.0) {
        surv[photons] = 1.0;
    } else {
        for (int s = 0; s <= photons; ++s) {
            surv[s] = binom(photons, s) * std::pow(efficiency, s) *
                      std::pow(1.0 - efficiency, photons - s);
        }
    }
    std::map<int, double> clicks;
    for (const auto& [s, p] : surv) {
        if (p == 0.0) continue;
        switch (kind) {
            case DetectorKind::IdealPnr:
                clicks[s] += p;
                break;
            case DetectorKind::Threshold:
                clicks[s > 0 ? 1 : 0] += p;
                break;
            case DetectorKind::FanoutPnr: {
                for (const auto& [c, q] : fanout_click_distribution(s, branches)) {
                    clicks[c] += p * q;
                }
                break;
            }
        }
    }
    if (dark_count_prob <= 0.0) return clicks;
    // at most one extra click per window, capped by what the device can report
    const int cap = kind == DetectorKind::Threshold    ? 1
                    : kind == DetectorKind::FanoutPnr ? branches
                                                      : std::numeric_limits<int>::max();
    std::map<int, double> out;
    for (const auto& [c, p] : clicks) {
        const int bumped = std::min(c + 1, cap);
        out[c] += p * (1.0 - dark_count_prob);
        out[bumped] += p * dark_count_prob;
    }
    return out;
}

namespace {

StateEnsemble loss_one_component(const PureState& state, int mode, double eta) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("apply_loss: η outside [0,1]");
    if (mode < 0 || mode >= state.modes()) throw std::out_of_range("apply_loss: mode index");
    int max_n = 0;
    for (const auto& [occ, amp] : state.terms()) {
        (void)amp;
        max_n = std::max(max_n, occ[mode]);
    }
    StateEnsemble out;
    for (int lost = 0; lost <= max_n; ++lost) {
        PureState::TermMap terms;
        for (const auto& [occ, amp] : state.terms()) {
            const int n = occ[mode];
            if (n < lost) continue;
            const double kraus =
                std::sqrt(binom(n, lost) * std::pow(eta, n - lost) * std::pow(1.0 - eta, lost));
            if (kraus == 0.0) continue;
            terms[occ.with(mode, n - lost)] += amp * kraus;
        }
        if (!terms.empty()) out.add(1.0, PureState(state.modes(), std::move(terms)));
    }
    return out;
}

}  // namespace

StateEnsemble apply_loss(const PureState& state, int mode, double eta) {
    return loss_one_component(state, mode, eta);
}

StateEnsemble apply_loss(const StateEnsemble& state, int mode, double eta) {
    StateEnsemble out;
    for (const auto& c : state.components()) {
        const StateEnsemble branches = loss_one_component(c.state, mode, eta);
        for (const auto& branch : branches.components()) {
            out.add(c.weight * branch.weight, branch.state);
        }
    }
    return out;
}

StateEnsemble apply_loss_all(const StateEnsemble& state, const std::vector<int>& modes,
                             double eta) {
    StateEnsemble cur = state;
    for (int m : modes) cur = apply_loss(cur, m, eta);
    return cur;
}

}  // namespace heraldiq
