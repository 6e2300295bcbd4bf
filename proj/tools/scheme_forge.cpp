// Regenerates the bundled scheme reconstructions in share/schemes/.
//
// Each published generator whose explicit circuit is not part of the built-in
// registry is reconstructed by numerical search, pinned to its published
// success probability, validated end to end, and written out as a scheme
// file. Run from the repository root:
//
//   build/tools/scheme_forge share/schemes
//
// The searches are deterministic; the seeds below are the ones the bundled
// files were produced with.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "heraldiq/discover.hpp"
#include "heraldiq/scheme_io.hpp"
#include "heraldiq/schemes.hpp"

using namespace heraldiq;

namespace {

constexpr double kPi = std::numbers::pi;

SearchResult two_stage(SearchProblem problem) {
    problem.pin_success = true;
    problem.polish_iterations = 4000;
    SearchResult first = optimize(problem);
    if (!first.solved) return first;
    // re-polish with the success term dominant to pin p onto the table value
    SearchProblem tight = problem;
    tight.seed_params = first.params;
    tight.restarts = 1;
    tight.max_iterations = 50;
    tight.weight_success = 500.0;
    tight.polish_iterations = 8000;
    SearchResult second = optimize(tight);
    return second.cost <= first.cost ? second : first;
}

bool validate_and_write(SchemeDefinition scheme, const Rational& expected,
                        const std::string& path) {
    scheme.expected_success = expected;
    const auto res = run_scheme(scheme);
    const double dp = std::abs(res.success_prob - expected.value());
    const double df = 1.0 - res.fidelity;
    std::printf("  %-14s p=%.15f (Δ%.2e vs %s)  F=%.15f (Δ%.2e)\n", scheme.name.c_str(),
                res.success_prob, dp, expected.str().c_str(), res.fidelity, df);
    if (dp > 1e-10 || df > 1e-10) {
        std::printf("  REJECTED: outside the 1e-10 verification margin\n");
        return false;
    }
    write_scheme_file(path, scheme);
    std::printf("  wrote %s\n", path.c_str());
    return true;
}

bool forge_bell_4p6m(const std::string& dir) {
    std::printf("bell-4p6m: four photons, six modes, heralds (1,1) on the last two\n");
    SearchProblem p;
    p.modes = 6;
    p.input = ModeOccupation({1, 1, 1, 1, 0, 0});
    p.herald_spec.herald_modes = {4, 5};
    p.herald_spec.accepted = std::vector<HeraldPattern>{{{1, 1}, ""}};
    p.target.kind = TargetSpec::Kind::Bell;
    p.target.bell = BellKind::PhiPlus;
    p.target.register_pairs = {{0, 1}, {2, 3}};
    p.correction = CorrectionClass::Paulis;
    p.p_ref = 2.0 / 27.0;
    p.weight_success = 0.5;
    p.seed = 42;
    p.fidelity_goal = 0.999;
    const auto r = two_stage(p);
    if (!r.solved) {
        std::printf("  search failed\n");
        return false;
    }
    auto scheme = to_scheme(p, r, "bell-4p6m");
    scheme.note = "reconstructed by mesh search (seed 42), pinned to the published 2/27";
    return validate_and_write(std::move(scheme), Rational(2, 27), dir + "/bell-4p6m.json");
}

bool forge_bell_4p5m(const std::string& dir) {
    std::printf("bell-4p5m: four photons, five modes, two photons heralded in the last\n");
    SearchProblem p;
    p.modes = 5;
    p.input = ModeOccupation({1, 1, 1, 1, 0});
    p.herald_spec.herald_modes = {4};
    p.herald_spec.accepted = std::vector<HeraldPattern>{{{2}, ""}};
    p.target.kind = TargetSpec::Kind::Bell;
    p.target.bell = BellKind::PhiPlus;
    p.target.register_pairs = {{0, 1}, {2, 3}};
    p.correction = CorrectionClass::Paulis;
    p.p_ref = 1.0 / 9.0;
    p.weight_success = 0.5;
    p.seed = 7;
    p.fidelity_goal = 0.999;
    const auto r = two_stage(p);
    if (!r.solved) {
        std::printf("  search failed\n");
        return false;
    }
    auto scheme = to_scheme(p, r, "bell-4p5m");
    scheme.note = "reconstructed by mesh search (seed 7), pinned to the published 1/9";
    return validate_and_write(std::move(scheme), Rational(1, 9), dir + "/bell-4p5m.json");
}

// Four photons in eight modes with a fixed final tap layer: a 4-mode mesh on
// the rails followed by a 50:50 tap from each rail to its own herald mode.
// Keeping the taps explicit preserves the structure that iterated weak
// detection (bleeding) relies on.
bool forge_bell_4p8m(const std::string& dir) {
    std::printf("bell-4p8m: rail mesh + per-rail taps, six two-click patterns\n");
    const MeshLayout rail_layout = MeshLayout::rectangular(4);

    const std::vector<std::vector<int>> patterns = {{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1},
                                                    {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}};

    auto build_scheme = [&](const std::vector<double>& rail_params) {
        SchemeDefinition s;
        s.name = "bell-4p8m";
        s.circuit.modes = 8;
        s.circuit.block({0, 1, 2, 3}, mesh_unitary(rail_layout, rail_params));
        for (int i = 0; i < 4; ++i) s.circuit.bs(i, 4 + i, kPi / 4.0, 0.0);
        s.input = ModeOccupation({1, 1, 1, 1, 0, 0, 0, 0});
        std::vector<HeraldPattern> pats;
        for (const auto& clicks : patterns) pats.push_back({clicks, ""});
        s.herald_spec.herald_modes = {4, 5, 6, 7};
        s.herald_spec.accepted = std::move(pats);
        s.detectors.assign(4, DetectorModel::ideal_pnr());
        s.target.kind = TargetSpec::Kind::Bell;
        s.target.bell = BellKind::PhiPlus;
        s.target.register_pairs = {{0, 1}, {2, 3}};
        s.correction = CorrectionClass::Paulis;
        return s;
    };

    // cost over the rail-mesh parameters only
    auto evaluate = [&](const std::vector<double>& rail_params, double mu_s) {
        const auto s = build_scheme(rail_params);
        const auto res = run_scheme(s);
        const double rel = res.success_prob / (3.0 / 16.0);
        return std::tuple<double, double, double>(
            (1.0 - res.fidelity) + mu_s * (rel - 1.0) * (rel - 1.0), res.fidelity,
            res.success_prob);
    };

    std::mt19937_64 rng(2025);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<double> best;
    double best_cost = 1e9;
    for (int restart = 0; restart < 40; ++restart) {
        std::vector<double> x(static_cast<std::size_t>(rail_layout.parameter_count()));
        for (auto& v : x) v = angle(rng);
        double fx = std::get<0>(evaluate(x, 0.5));
        // plain descent + a crude polish, all on numerical gradients
        for (int stage = 0; stage < 2; ++stage) {
            const double mu = stage == 0 ? 0.5 : 500.0;
            fx = std::get<0>(evaluate(x, mu));
            for (int iter = 0; iter < (stage == 0 ? 250 : 2500); ++iter) {
                std::vector<double> g(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double o = x[i];
                    x[i] = o + 1e-6;
                    const double fp = std::get<0>(evaluate(x, mu));
                    x[i] = o - 1e-6;
                    const double fm = std::get<0>(evaluate(x, mu));
                    x[i] = o;
                    g[i] = (fp - fm) / 2e-6;
                }
                double g2 = 0.0;
                for (double v : g) g2 += v * v;
                if (g2 < 1e-22) break;
                double step = 1.0;
                bool moved = false;
                while (step > 1e-14) {
                    auto y = x;
                    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= step * g[i];
                    const double fy = std::get<0>(evaluate(y, mu));
                    if (fy < fx - 1e-4 * step * g2) {
                        x = std::move(y);
                        fx = fy;
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!moved || fx < 1e-16) break;
            }
        }
        if (fx < best_cost) {
            best_cost = fx;
            best = x;
            std::printf("  restart %d: cost %.3e\n", restart, fx);
        }
        if (best_cost < 1e-16) break;
    }
    if (best.empty()) return false;
    auto [cost, fid, succ] = evaluate(best, 500.0);
    std::printf("  best: cost=%.3e F=%.12f p=%.12f (3/16=%.12f)\n", cost, fid, succ, 3.0 / 16.0);
    if (1.0 - fid > 1e-10 || std::abs(succ - 3.0 / 16.0) > 1e-10) {
        std::printf("  REJECTED\n");
        return false;
    }
    auto scheme = build_scheme(best);
    // fix the per-pattern Bell tags from the solved circuit
    auto res = run_scheme(scheme);
    std::vector<HeraldPattern> tagged;
    for (const auto& rep : res.patterns) {
        std::string tag;
        double best_f = -1.0;
        for (const char* name : {"phi+", "phi-", "psi+", "psi-"}) {
            TargetSpec t = scheme.target;
            t.bell = bell_from_name(name);
            const auto* outcome = [&]() -> const PatternOutcome* {
                for (const auto& o : res.herald.outcomes) {
                    if (o.clicks == rep.clicks) return &o;
                }
                return nullptr;
            }();
            const double f = fidelity(outcome->conditional, t.state(4));
            if (f > best_f) {
                best_f = f;
                tag = name;
            }
        }
        std::printf("  pattern (%d,%d,%d,%d): p=%.9f raw-best=%s F=%.9f\n", rep.clicks[0],
                    rep.clicks[1], rep.clicks[2], rep.clicks[3], rep.probability, tag.c_str(),
                    best_f);
        tagged.push_back({rep.clicks, best_f > 1.0 - 1e-9 ? tag : std::string{}});
    }
    scheme.herald_spec.accepted = std::move(tagged);
    scheme.provenance = "discovered";
    scheme.note = "rail mesh + per-rail 50:50 taps (seed 2025), pinned to the published 3/16";
    return validate_and_write(std::move(scheme), Rational(3, 16), dir + "/bell-4p8m.json");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "share/schemes";
    bool ok = true;
    ok &= forge_bell_4p6m(dir);
    ok &= forge_bell_4p5m(dir);
    ok &= forge_bell_4p8m(dir);
    return ok ? 0 : 1;
}
