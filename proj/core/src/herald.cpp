#include "heraldiq/herald.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace heraldiq {

namespace {

// F(ψ, ρ) for a pure state against a (possibly subnormalized) mixture.
double fidelity_vs_ensemble(const PureState& state, const StateEnsemble& ref) {
    if (state.norm2() <= 0.0) return 0.0;
    double num = 0.0;
    double den = 0.0;
    for (const auto& c : ref.components()) {
        num += c.weight * std::norm(c.state.inner(state));
        den += c.weight * c.state.norm2();
    }
    if (den <= 0.0) return 0.0;
    return num / (den * state.norm2());
}

struct OutcomeBucket {
    double probability = 0.0;
    StateEnsemble conditional;
    double false_positive = 0.0;
};

}  // namespace

bool HeraldSpec::accepts(const std::vector<int>& clicks) const {
    if (const auto* pats = std::get_if<std::vector<HeraldPattern>>(&accepted)) {
        for (const auto& p : *pats) {
            if (p.clicks == clicks) return true;
        }
        return false;
    }
    if (const auto* total = std::get_if<AcceptTotal>(&accepted)) {
        int sum = 0;
        for (int c : clicks) sum += c;
        return sum == total->total;
    }
    return true;  // AcceptAny
}

std::string HeraldSpec::correction_for(const std::vector<int>& clicks) const {
    if (const auto* pats = std::get_if<std::vector<HeraldPattern>>(&accepted)) {
        for (const auto& p : *pats) {
            if (p.clicks == clicks) return p.correction;
        }
    }
    return {};
}

void HeraldSpec::validate(int total_modes) const {
    std::set<int> seen;
    for (int m : herald_modes) {
        if (m < 0 || m >= total_modes) throw std::out_of_range("HeraldSpec: herald mode index");
        if (!seen.insert(m).second) throw std::invalid_argument("HeraldSpec: repeated herald mode");
    }
    if (const auto* pats = std::get_if<std::vector<HeraldPattern>>(&accepted)) {
        for (const auto& p : *pats) {
            if (p.clicks.size() != herald_modes.size()) {
                throw std::invalid_argument(
                    "HeraldSpec: pattern length does not match herald modes");
            }
            for (int c : p.clicks) {
                if (c < 0) throw std::invalid_argument("HeraldSpec: negative click count");
            }
        }
    }
}

HeraldResult herald(const PureState& state, const HeraldSpec& spec,
                    const std::vector<DetectorModel>& detectors, const HeraldOptions& opts) {
    return herald(StateEnsemble(state), spec, detectors, opts);
}

HeraldResult herald(const StateEnsemble& state, const HeraldSpec& spec,
                    const std::vector<DetectorModel>& detectors, const HeraldOptions& opts) {
    if (state.empty()) throw std::invalid_argument("herald: empty input ensemble");
    const int m = state.components().front().state.modes();
    spec.validate(m);
    if (detectors.size() != spec.herald_modes.size()) {
        throw std::invalid_argument("herald: need one detector per herald mode");
    }
    for (const auto& d : detectors) d.validate();

    std::vector<int> target_modes;
    {
        std::set<int> heralds(spec.herald_modes.begin(), spec.herald_modes.end());
        for (int mode = 0; mode < m; ++mode) {
            if (!heralds.count(mode)) target_modes.push_back(mode);
        }
    }

    bool detectors_ideal = true;
    for (const auto& d : detectors) {
        if (d.kind != DetectorKind::IdealPnr || d.efficiency < 1.0 || d.dark_count_prob > 0.0) {
            detectors_ideal = false;
        }
    }

    // herald-occupation sectors: h -> subnormalized conditional on targets,
    // kept per input component (components never interfere)
    struct Sector {
        std::vector<int> h;
        double weight;  // input component weight
        PureState cond; // target-mode amplitude content
    };
    std::vector<Sector> sectors;
    for (const auto& comp : state.components()) {
        if (comp.state.modes() != m) throw std::invalid_argument("herald: mixed mode counts");
        std::map<std::vector<int>, PureState::TermMap> by_herald;
        for (const auto& [occ, amp] : comp.state.terms()) {
            std::vector<int> h;
            h.reserve(spec.herald_modes.size());
            for (int hm : spec.herald_modes) h.push_back(occ[hm]);
            std::vector<int> t;
            t.reserve(target_modes.size());
            for (int tm : target_modes) t.push_back(occ[tm]);
            by_herald[std::move(h)].emplace(ModeOccupation(std::move(t)), amp);
        }
        for (auto& [h, terms] : by_herald) {
            sectors.push_back(
                {h, comp.weight, PureState(static_cast<int>(target_modes.size()), std::move(terms))});
        }
    }

    // ideal-detector reference conditionals per pattern (pattern = occupation)
    std::map<std::vector<int>, StateEnsemble> ideal_ref;
    if (!detectors_ideal) {
        for (const auto& sec : sectors) ideal_ref[sec.h].add(sec.weight, sec.cond);
    }

    std::map<std::vector<int>, OutcomeBucket> buckets;
    double total_mass = 0.0;
    double accepted_mass = 0.0;
    double false_negative = 0.0;

    for (const auto& sec : sectors) {
        const double sector_mass = sec.weight * sec.cond.norm2();
        total_mass += sector_mass;
        if (sector_mass == 0.0) continue;

        // joint click distribution over herald modes
        std::vector<std::pair<std::vector<int>, double>> joint{{{}, 1.0}};
        for (std::size_t i = 0; i < spec.herald_modes.size(); ++i) {
            const auto dist = detectors[i].click_distribution(sec.h[i]);
            std::vector<std::pair<std::vector<int>, double>> next;
            next.reserve(joint.size() * dist.size());
            for (const auto& [prefix, p] : joint) {
                for (const auto& [c, q] : dist) {
                    auto clicks = prefix;
                    clicks.push_back(c);
                    next.emplace_back(std::move(clicks), p * q);
                }
            }
            joint = std::move(next);
        }

        const bool ideally_accepted = spec.accepts(sec.h);
        for (const auto& [clicks, p] : joint) {
            if (p == 0.0) continue;
            if (!spec.accepts(clicks)) {
                if (ideally_accepted) false_negative += sector_mass * p;
                continue;
            }
            auto& bucket = buckets[clicks];
            bucket.probability += sector_mass * p;
            bucket.conditional.add(sec.weight * p, sec.cond);
            accepted_mass += sector_mass * p;
            if (!detectors_ideal) {
                // accepted for the wrong reason? compare against what this
                // pattern claims under ideal detectors
                auto it = ideal_ref.find(clicks);
                bool wrong = true;
                if (it != ideal_ref.end() && spec.accepts(clicks)) {
                    const double f = fidelity_vs_ensemble(sec.cond, it->second);
                    wrong = (1.0 - f) > opts.infidelity_threshold;
                }
                if (wrong) bucket.false_positive += sector_mass * p;
            }
        }
    }

    HeraldResult res;
    res.target_modes = target_modes;
    res.success_prob = accepted_mass;
    res.rejected_prob = total_mass - accepted_mass;
    res.false_negative_prob = detectors_ideal ? 0.0 : false_negative;
    for (auto& [clicks, bucket] : buckets) {
        PatternOutcome out;
        out.clicks = clicks;
        out.probability = bucket.probability;
        out.conditional = std::move(bucket.conditional);
        out.correction = spec.correction_for(clicks);
        res.false_positive_prob += bucket.false_positive;
        res.combined = res.combined.merged(out.conditional);
        res.outcomes.push_back(std::move(out));
    }
    return res;
}

std::pair<double, PureState> postselect(const PureState& state, const DualRailRegister& reg) {
    if (state.modes() < reg.min_modes()) {
        throw std::invalid_argument("postselect: state does not cover the register");
    }
    const PureState kept = state.filtered([&](const ModeOccupation& occ) {
        for (const auto& [a, b] : reg.pairs()) {
            if (occ[a] + occ[b] != 1) return false;
        }
        return true;
    });
    const double prob = kept.norm2();
    if (prob <= 0.0) return {0.0, PureState(state.modes())};
    return {prob, kept.normalized()};
}

EventRates event_accounting(const HeraldResult& ideal, const HeraldResult& noisy,
                            double infidelity_threshold) {
    EventRates rates;
    std::map<std::vector<int>, const PatternOutcome*> ideal_by_pattern;
    for (const auto& out : ideal.outcomes) ideal_by_pattern[out.clicks] = &out;

    std::map<std::vector<int>, double> true_mass;
    for (const auto& out : noisy.outcomes) {
        const auto it = ideal_by_pattern.find(out.clicks);
        for (const auto& comp : out.conditional.components()) {
            const double mass = comp.weight * comp.state.norm2();
            if (mass == 0.0) continue;
            bool wrong = true;
            if (it != ideal_by_pattern.end() && it->second->probability > 0.0) {
                const double f = fidelity_vs_ensemble(comp.state, it->second->conditional);
                wrong = (1.0 - f) > infidelity_threshold;
            }
            if (wrong) {
                rates.false_positive_rate += mass;
            } else {
                true_mass[out.clicks] += mass;
            }
        }
    }
    for (const auto& out : ideal.outcomes) {
        rates.false_negative_rate += std::max(0.0, out.probability - true_mass[out.clicks]);
    }
    return rates;
}

}  // namespace heraldiq
