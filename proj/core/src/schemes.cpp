#include "heraldiq/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>
#include <stdexcept>

#include "heraldiq/detector.hpp"
#include "heraldiq/evolve.hpp"
#include "heraldiq/scheme_io.hpp"

namespace heraldiq {

namespace {

constexpr double kPi = std::numbers::pi;

// pad with vacuum modes so the target covers all target modes
PureState embed(const PureState& s, int modes) {
    if (s.modes() == modes) return s;
    if (s.modes() > modes) throw std::invalid_argument("TargetSpec: register exceeds target modes");
    PureState::TermMap t;
    for (const auto& [occ, amp] : s.terms()) {
        auto counts = occ.counts();
        counts.resize(static_cast<std::size_t>(modes), 0);
        t.emplace(ModeOccupation(std::move(counts)), amp);
    }
    return PureState(modes, std::move(t));
}

}  // namespace

PureState TargetSpec::state(int modes) const {
    switch (kind) {
        case Kind::Bell:
            return embed(target_bell(bell, dual_rail()), modes);
        case Kind::Ghz: {
            QuditRegister reg = register_rails.empty() ? QuditRegister::consecutive(n, d)
                                                       : QuditRegister(d, register_rails);
            return embed(target_ghz(reg), modes);
        }
        case Kind::Noon: {
            if (modes != 2) throw std::invalid_argument("TargetSpec: NOON target needs 2 modes");
            return target_noon(n);
        }
        case Kind::W:
            return embed(target_w(dual_rail()), modes);
        case Kind::PhiAlpha:
            return embed(target_phi_alpha(alpha, dual_rail()), modes);
    }
    throw std::logic_error("TargetSpec: unknown kind");
}

PureState TargetSpec::state_for_tag(int modes, const std::string& tag) const {
    if (tag.empty() || kind != Kind::Bell) return state(modes);
    TargetSpec t = *this;
    t.bell = bell_from_name(tag);
    return t.state(modes);
}

DualRailRegister TargetSpec::dual_rail() const {
    if (register_pairs.empty()) {
        throw std::invalid_argument("TargetSpec: qubit register not set");
    }
    return DualRailRegister(register_pairs);
}

void SchemeDefinition::validate() const {
    if (circuit.modes < 1) throw std::invalid_argument(name + ": circuit has no modes");
    if (input.modes() != circuit.modes) {
        throw std::invalid_argument(name + ": input length does not match circuit modes");
    }
    if (postselected) {
        if (postselect_pairs.empty()) {
            throw std::invalid_argument(name + ": postselected scheme needs register pairs");
        }
        return;
    }
    herald_spec.validate(circuit.modes);
    if (detectors.size() != herald_spec.herald_modes.size()) {
        throw std::invalid_argument(name + ": need one detector per herald mode");
    }
    if (expected_success) {
        const double v = expected_success->value();
        if (v <= 0.0 || v > 1.0) {
            throw std::invalid_argument(name + ": expected_success outside (0,1]");
        }
    }
}

namespace {

// best |Σ_b c_b·e^{i Σ_q δ_q bit_q(b)}|² by coordinate ascent over the
// per-qubit phases; exact for two-term targets, monotone in general
double aligned_overlap2(const std::map<std::string, Complex>& c) {
    if (c.empty()) return 0.0;
    const std::size_t q = c.begin()->first.size();
    std::vector<double> delta(q, 0.0);
    auto total = [&] {
        Complex s = 0.0;
        for (const auto& [bits, coef] : c) {
            double phase = 0.0;
            for (std::size_t i = 0; i < q; ++i) {
                if (bits[i] == '1') phase += delta[i];
            }
            s += coef * std::exp(Complex(0.0, phase));
        }
        return std::norm(s);
    };
    double best = total();
    for (int sweep = 0; sweep < 8; ++sweep) {
        for (std::size_t i = 0; i < q; ++i) {
            Complex s0 = 0.0, s1 = 0.0;
            for (const auto& [bits, coef] : c) {
                double phase = 0.0;
                for (std::size_t j = 0; j < q; ++j) {
                    if (j != i && bits[j] == '1') phase += delta[j];
                }
                const Complex v = coef * std::exp(Complex(0.0, phase));
                (bits[i] == '1' ? s1 : s0) += v;
            }
            if (std::abs(s1) > 0.0 && std::abs(s0) > 0.0) {
                delta[i] = std::arg(s0) - std::arg(s1);
            }
        }
        const double now = total();
        if (now <= best + 1e-15) break;
        best = now;
    }
    return std::max(best, total());
}

double corrected_overlap2_pure(const PureState& cond, const PureState& target,
                               const DualRailRegister& reg, CorrectionClass cls) {
    const auto tdec = decode_qubits(target, reg);
    if (cls == CorrectionClass::None) {
        return std::norm(target.normalized().inner(cond));
    }
    const auto cdec = decode_qubits(cond, reg);
    std::map<std::string, Complex> tmap(tdec.amplitudes.begin(), tdec.amplitudes.end());
    std::map<std::string, Complex> cmap(cdec.amplitudes.begin(), cdec.amplitudes.end());

    const int q = reg.qubits();
    const int flips = cls == CorrectionClass::Paulis ? (1 << q) : 1;
    double best = 0.0;
    for (int x = 0; x < flips; ++x) {
        std::map<std::string, Complex> c;
        for (const auto& [bits, amp] : cmap) {
            std::string flipped = bits;
            for (int i = 0; i < q; ++i) {
                if ((x >> i) & 1) flipped[static_cast<std::size_t>(i)] ^= 1;  // '0' <-> '1'
            }
            auto it = tmap.find(flipped);
            if (it == tmap.end()) continue;
            c[flipped] += std::conj(it->second) * amp;
        }
        best = std::max(best, aligned_overlap2(c));
    }
    return best;
}

}  // namespace

double corrected_fidelity(const StateEnsemble& conditional, const PureState& target,
                          const DualRailRegister& reg, CorrectionClass cls) {
    const PureState t = target.normalized();
    double num = 0.0;
    double den = 0.0;
    for (const auto& comp : conditional.components()) {
        num += comp.weight * corrected_overlap2_pure(comp.state, t, reg, cls);
        den += comp.weight * comp.state.norm2();
    }
    return den > 0.0 ? num / den : 0.0;
}

namespace {

std::vector<DetectorModel> with_overrides(const std::vector<DetectorModel>& base,
                                          const DetectorOverrides& over) {
    auto out = base;
    for (auto& d : out) {
        if (over.kind) d.kind = *over.kind;
        if (over.fanout_branches) d.branches = *over.fanout_branches;
        if (over.efficiency) d.efficiency = *over.efficiency;
        if (over.dark) d.dark_count_prob = *over.dark;
    }
    return out;
}

double pattern_fidelity(const SchemeDefinition& scheme, const PatternOutcome& out,
                        int target_mode_count, CorrectionClass cls) {
    const PureState tgt = scheme.target.state_for_tag(target_mode_count, out.correction);
    if (scheme.target.kind == TargetSpec::Kind::Noon || scheme.target.register_pairs.empty()) {
        return fidelity(out.conditional, tgt);
    }
    return corrected_fidelity(out.conditional, tgt, scheme.target.dual_rail(), cls);
}

}  // namespace

SchemeRunResult run_scheme(const SchemeDefinition& scheme, const DetectorOverrides& over,
                           const EvolveOptions& evolve_opts) {
    scheme.validate();
    SchemeRunResult result;
    result.scheme = scheme.name;
    result.expected_success = scheme.expected_success;

    const Matrix u = compile(scheme.circuit);
    const PureState out = evolve(PureState::ket(scheme.input), u, evolve_opts);

    if (scheme.postselected) {
        const DualRailRegister reg(scheme.postselect_pairs);
        auto [prob, cond] = postselect(out, reg);
        result.success_prob = prob;
        PatternReport rep;
        rep.probability = prob;
        const PureState tgt = scheme.target.state(out.modes());
        rep.fidelity_raw = prob > 0.0 ? fidelity(cond, tgt) : 0.0;
        rep.fidelity_corrected =
            prob > 0.0 ? corrected_fidelity(StateEnsemble(cond), tgt, reg, scheme.correction)
                       : 0.0;
        result.fidelity = rep.fidelity_corrected;
        result.patterns.push_back(std::move(rep));
        return result;
    }

    const bool has_override = over.efficiency || over.dark || over.kind ||
                              over.fanout_branches || over.target_efficiency;

    StateEnsemble final_state{out};
    if (over.target_efficiency && *over.target_efficiency < 1.0) {
        std::set<int> heralds(scheme.herald_spec.herald_modes.begin(),
                              scheme.herald_spec.herald_modes.end());
        std::vector<int> targets;
        for (int m = 0; m < out.modes(); ++m) {
            if (!heralds.count(m)) targets.push_back(m);
        }
        final_state = apply_loss_all(final_state, targets, *over.target_efficiency);
    }

    const auto detectors = with_overrides(scheme.detectors, over);
    result.herald = herald(final_state, scheme.herald_spec, detectors);
    result.success_prob = result.herald.success_prob;
    result.false_positive_prob = result.herald.false_positive_prob;
    result.false_negative_prob = result.herald.false_negative_prob;

    const int tmodes = static_cast<int>(result.herald.target_modes.size());
    double fsum = 0.0;
    double psum = 0.0;
    for (const auto& o : result.herald.outcomes) {
        PatternReport rep;
        rep.clicks = o.clicks;
        rep.probability = o.probability;
        rep.tag = o.correction;
        if (o.probability > 0.0) {
            rep.fidelity_raw = fidelity(o.conditional, scheme.target.state_for_tag(tmodes, o.correction));
            rep.fidelity_corrected = pattern_fidelity(scheme, o, tmodes, scheme.correction);
            fsum += o.probability * rep.fidelity_corrected;
            psum += o.probability;
        }
        result.patterns.push_back(std::move(rep));
    }
    result.fidelity = psum > 0.0 ? fsum / psum : 0.0;

    if (has_override) {
        const auto ideal = herald(StateEnsemble(out), scheme.herald_spec, scheme.detectors);
        const auto rates = event_accounting(ideal, result.herald);
        result.false_positive_prob = rates.false_positive_rate;
        result.false_negative_prob = rates.false_negative_rate;
    }
    return result;
}

namespace {

SchemeDefinition make_postselected_bell() {
    SchemeDefinition s;
    s.name = "bell-postselected";
    s.circuit.modes = 4;
    s.circuit.bs(0, 1, kPi / 4.0).bs(2, 3, kPi / 4.0).swap(1, 2);
    s.input = ModeOccupation({1, 0, 1, 0});
    s.postselected = true;
    s.postselect_pairs = {{0, 1}, {2, 3}};
    s.target.kind = TargetSpec::Kind::Bell;
    s.target.bell = BellKind::PsiPlus;
    s.target.register_pairs = {{0, 1}, {2, 3}};
    s.correction = CorrectionClass::Phases;
    s.expected_success = Rational(1, 2);
    s.provenance = "builtin";
    s.note = "pairwise splitters + inner-rail swap, one photon per pair kept";
    return s;
}

SchemeDefinition make_bell_5p5m() {
    SchemeDefinition s;
    s.name = "bell-5p5m";
    s.circuit.modes = 5;
    s.circuit.dft({0, 1, 2, 3, 4});
    s.input = ModeOccupation({1, 1, 1, 1, 1});
    s.herald_spec.herald_modes = {4};
    s.herald_spec.accepted = std::vector<HeraldPattern>{{{3}, ""}};
    s.detectors = {DetectorModel::ideal_pnr()};
    s.target.kind = TargetSpec::Kind::Bell;
    s.target.bell = BellKind::PsiPlus;
    s.target.register_pairs = {{0, 1}, {2, 3}};
    s.correction = CorrectionClass::Phases;
    s.expected_success = Rational(12, 125);
    s.provenance = "builtin";
    s.note = "five-mode Fourier interferometer, three photons heralded in one mode";
    return s;
}

SchemeDefinition make_bell_6p6m() {
    SchemeDefinition s;
    s.name = "bell-6p6m-sms";
    s.circuit.modes = 6;
    s.circuit.dft({0, 1, 2}).dft({3, 4, 5}).bs(0, 3, kPi / 4.0);
    s.input = ModeOccupation({1, 1, 1, 1, 1, 1});
    s.herald_spec.herald_modes = {0, 3};
    // any four-photon pattern on the splitter outputs; the Bell variant
    // produced depends on the pattern (tags fixed by simulation)
    s.herald_spec.accepted = std::vector<HeraldPattern>{
        {{4, 0}, "phi-"}, {{3, 1}, "phi+"}, {{2, 2}, ""}, {{1, 3}, "phi+"}, {{0, 4}, "phi-"}};
    s.detectors = {DetectorModel::ideal_pnr(), DetectorModel::ideal_pnr()};
    s.target.kind = TargetSpec::Kind::Bell;
    s.target.bell = BellKind::PhiPlus;
    // qubit rails pair the matching outputs of the two 3-mode multiports:
    // full modes (1,4) and (2,5) → positions (0,2) and (1,3) of the targets
    s.target.register_pairs = {{0, 2}, {1, 3}};
    s.correction = CorrectionClass::Phases;
    s.expected_success = Rational(4, 27);
    s.provenance = "builtin";
    s.note = "two 3-mode multiports + balanced splitter on their top modes";
    return s;
}

SchemeDefinition make_hom_noon2() {
    SchemeDefinition s;
    s.name = "hom-noon2";
    s.circuit.modes = 2;
    s.circuit.bs(0, 1, kPi / 4.0);
    s.input = ModeOccupation({1, 1});
    s.herald_spec.herald_modes = {};
    s.herald_spec.accepted = AcceptAny{};
    s.target.kind = TargetSpec::Kind::Noon;
    s.target.n = 2;
    s.expected_success = Rational(1, 1);
    s.provenance = "builtin";
    s.note = "two-photon bunching at a balanced splitter, deterministic";
    return s;
}

}  // namespace

std::vector<SchemeDefinition> builtin_registry(const std::string& scheme_dir) {
    std::vector<SchemeDefinition> reg;
    reg.push_back(make_postselected_bell());
    reg.push_back(make_bell_5p5m());
    reg.push_back(make_bell_6p6m());
    reg.push_back(make_hom_noon2());
    if (!scheme_dir.empty() && std::filesystem::is_directory(scheme_dir)) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(scheme_dir)) {
            if (e.path().extension() == ".json") files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            reg.push_back(read_scheme_file(f.string()));
        }
    }
    return reg;
}

std::optional<SchemeDefinition> find_scheme(const std::string& name,
                                            const std::string& scheme_dir) {
    for (auto& s : builtin_registry(scheme_dir)) {
        if (s.name == name) return s;
    }
    return std::nullopt;
}

}  // namespace heraldiq
