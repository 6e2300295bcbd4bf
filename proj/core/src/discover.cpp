#include "heraldiq/discover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "heraldiq/evolve.hpp"
#include "heraldiq/permanent.hpp"

namespace heraldiq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGradStep = 1e-6;

std::vector<int> target_modes_of(const SearchProblem& p) {
    std::set<int> heralds(p.herald_spec.herald_modes.begin(), p.herald_spec.herald_modes.end());
    std::vector<int> t;
    for (int m = 0; m < p.modes; ++m) {
        if (!heralds.count(m)) t.push_back(m);
    }
    return t;
}

// Amplitudes of outputs whose herald occupation equals `pattern`, over the
// target modes only. Enumerating just that slice keeps the inner loop of the
// search cheap.
PureState projected_amplitudes(const ModeOccupation& input, const Matrix& u,
                               const std::vector<int>& herald_modes,
                               const std::vector<int>& herald_pattern,
                               const std::vector<int>& target_modes) {
    const int n = input.total();
    int herald_photons = 0;
    for (int c : herald_pattern) herald_photons += c;
    const int target_photons = n - herald_photons;
    if (target_photons < 0) return PureState(static_cast<int>(target_modes.size()));

    std::vector<int> in_modes;
    double in_fact = 1.0;
    for (int m = 0; m < input.modes(); ++m) {
        for (int k = 0; k < input[m]; ++k) in_modes.push_back(m);
        for (int k = 2; k <= input[m]; ++k) in_fact *= k;
    }

    double herald_fact = 1.0;
    for (int c : herald_pattern) {
        for (int k = 2; k <= c; ++k) herald_fact *= k;
    }

    PureState::TermMap terms;
    for (const auto& treduced : enumerate_occupations(target_photons,
                                                      static_cast<int>(target_modes.size()))) {
        // full output mode list: herald pattern photons + target photons
        std::vector<int> out_modes;
        out_modes.reserve(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < herald_modes.size(); ++i) {
            for (int k = 0; k < herald_pattern[i]; ++k) out_modes.push_back(herald_modes[i]);
        }
        double out_fact = herald_fact;
        for (std::size_t i = 0; i < target_modes.size(); ++i) {
            const int c = treduced[static_cast<int>(i)];
            for (int k = 0; k < c; ++k) out_modes.push_back(target_modes[i]);
            for (int k = 2; k <= c; ++k) out_fact *= k;
        }
        Eigen::MatrixXcd sub(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                sub(r, c) = u(out_modes[static_cast<std::size_t>(r)],
                              in_modes[static_cast<std::size_t>(c)]);
            }
        }
        const Complex amp = permanent(sub) / std::sqrt(in_fact * out_fact);
        if (amp != Complex(0.0)) terms.emplace(treduced, amp);
    }
    return PureState(static_cast<int>(target_modes.size()), std::move(terms));
}

}  // namespace

void SearchProblem::validate() const {
    if (modes < 2) throw std::invalid_argument("SearchProblem: need at least two modes");
    if (input.modes() != modes) throw std::invalid_argument("SearchProblem: input length");
    herald_spec.validate(modes);
    if (!std::holds_alternative<std::vector<HeraldPattern>>(herald_spec.accepted)) {
        throw std::invalid_argument("SearchProblem: search needs explicit herald patterns");
    }
    if (weight_fidelity <= 0.0 || weight_success < 0.0) {
        throw std::invalid_argument("SearchProblem: weights must be positive");
    }
    if (p_ref <= 0.0) throw std::invalid_argument("SearchProblem: p_ref must be positive");
    if (restarts < 1 || max_iterations < 1) {
        throw std::invalid_argument("SearchProblem: empty budget");
    }
}

MeshEvaluation evaluate_mesh(const SearchProblem& problem, const MeshLayout& layout,
                             const std::vector<double>& params) {
    const Matrix u = mesh_unitary(layout, params);
    const auto tmodes = target_modes_of(problem);
    const auto& patterns = std::get<std::vector<HeraldPattern>>(problem.herald_spec.accepted);

    MeshEvaluation ev;
    double fsum = 0.0;
    for (const auto& pat : patterns) {
        const PureState cond = projected_amplitudes(problem.input, u,
                                                    problem.herald_spec.herald_modes, pat.clicks,
                                                    tmodes);
        const double p = cond.norm2();
        if (p <= 0.0) continue;
        ev.success += p;
        const PureState tgt =
            problem.target.state_for_tag(static_cast<int>(tmodes.size()), pat.correction);
        double f;
        if (problem.target.kind == TargetSpec::Kind::Noon ||
            problem.target.register_pairs.empty()) {
            f = fidelity(cond, tgt);
        } else {
            f = corrected_fidelity(StateEnsemble(cond), tgt, problem.target.dual_rail(),
                                   problem.correction);
        }
        fsum += p * f;
    }
    ev.fidelity = ev.success > 0.0 ? fsum / ev.success : 0.0;
    const double rel = ev.success / problem.p_ref;
    const double success_term =
        problem.pin_success ? (rel - 1.0) * (rel - 1.0) : 1.0 - std::min(1.0, rel);
    ev.cost = problem.weight_fidelity * (1.0 - ev.fidelity) +
              problem.weight_success * success_term;
    return ev;
}

double search_cost(const SearchProblem& problem, const MeshLayout& layout,
                   const std::vector<double>& params) {
    return evaluate_mesh(problem, layout, params).cost;
}

namespace {

struct Descent {
    const SearchProblem& problem;
    const MeshLayout& layout;
    long long evaluations = 0;

    double cost(const std::vector<double>& x) {
        ++evaluations;
        return search_cost(problem, layout, x);
    }

    // central-difference gradient
    std::vector<double> gradient(std::vector<double> x) {
        std::vector<double> g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double orig = x[i];
            x[i] = orig + kGradStep;
            const double fp = cost(x);
            x[i] = orig - kGradStep;
            const double fm = cost(x);
            x[i] = orig;
            g[i] = (fp - fm) / (2.0 * kGradStep);
        }
        return g;
    }

    // returns iterations used
    int run(std::vector<double>& x, double& fx, int max_iterations) {
        fx = cost(x);
        int iter = 0;
        for (; iter < max_iterations; ++iter) {
            const auto g = gradient(x);
            double g2 = 0.0;
            for (double v : g) g2 += v * v;
            if (g2 < 1e-18) break;
            double step = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<double> y = x;
                for (std::size_t i = 0; i < y.size(); ++i) y[i] -= step * g[i];
                const double fy = cost(y);
                if (fy < fx - 1e-4 * step * g2) {
                    x = std::move(y);
                    fx = fy;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
            if (fx < 1e-14) break;
        }
        return iter;
    }

    // BFGS refinement; plain descent converges too slowly for the 1e-9
    // exactness the scheme registry asks of reconstructed circuits
    int polish(std::vector<double>& x, double& fx, int max_iterations) {
        using Vec = Eigen::VectorXd;
        using Mat = Eigen::MatrixXd;
        const auto n = static_cast<Eigen::Index>(x.size());
        Mat hinv = Mat::Identity(n, n);
        Vec xv = Eigen::Map<const Vec>(x.data(), n);
        auto to_std = [&](const Vec& v) { return std::vector<double>(v.data(), v.data() + n); };
        fx = cost(x);
        Vec g = Eigen::Map<const Vec>(gradient(x).data(), n);
        int iter = 0;
        for (; iter < max_iterations; ++iter) {
            if (g.norm() < 1e-12 || fx < 1e-18) break;
            Vec d = -hinv * g;
            if (d.dot(g) >= 0.0) {
                hinv = Mat::Identity(n, n);
                d = -g;
            }
            double step = 1.0;
            double fy = fx;
            Vec y = xv;
            bool moved = false;
            for (int bt = 0; bt < 50; ++bt) {
                y = xv + step * d;
                fy = cost(to_std(y));
                if (fy < fx + 1e-4 * step * d.dot(g)) {
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
            const Vec gy = Eigen::Map<const Vec>(gradient(to_std(y)).data(), n);
            const Vec s = y - xv;
            const Vec dg = gy - g;
            const double sy = s.dot(dg);
            if (sy > 1e-14) {
                const Mat syt = s * dg.transpose();
                const Mat id = Mat::Identity(n, n);
                hinv = (id - syt / sy) * hinv * (id - syt.transpose() / sy) +
                       s * s.transpose() / sy;
            }
            xv = y;
            fx = fy;
            g = gy;
        }
        x = to_std(xv);
        return iter;
    }
};

}  // namespace

SearchResult optimize(const SearchProblem& problem) {
    problem.validate();
    const MeshLayout layout = MeshLayout::rectangular(problem.modes);

    SearchResult best;
    best.cost = std::numeric_limits<double>::infinity();
    Descent descent{problem, layout};

    for (int r = 0; r < problem.restarts; ++r) {
        // independent deterministic stream per restart
        std::seed_seq seq{problem.seed, static_cast<std::uint64_t>(r) + 1};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> angle(-kPi, kPi);
        std::vector<double> x(static_cast<std::size_t>(layout.parameter_count()));
        for (auto& v : x) v = angle(rng);
        if (r == 0 && !problem.seed_params.empty()) {
            if (problem.seed_params.size() != x.size()) {
                throw std::invalid_argument("SearchProblem: seed_params length mismatch");
            }
            x = problem.seed_params;
        }

        RestartTrace trace;
        trace.sub_seed = problem.seed + static_cast<std::uint64_t>(r) + 1;
        trace.initial_cost = search_cost(problem, layout, x);
        double fx = 0.0;
        trace.iterations = descent.run(x, fx, problem.max_iterations);
        if (problem.polish_iterations > 0) {
            MeshEvaluation probe = evaluate_mesh(problem, layout, x);
            if (probe.fidelity >= problem.fidelity_goal - 5e-3) {
                trace.iterations += descent.polish(x, fx, problem.polish_iterations);
            }
        }
        trace.final_cost = fx;

        const MeshEvaluation ev = evaluate_mesh(problem, layout, x);
        trace.solved = ev.fidelity >= problem.fidelity_goal && ev.success >= problem.success_goal;
        best.trace.push_back(trace);

        // argmin with fixed tie-break on restart index
        if (fx < best.cost) {
            best.cost = fx;
            best.params = x;
            best.fidelity = ev.fidelity;
            best.success = ev.success;
            best.best_restart = r;
            best.solved = trace.solved;
        }
        if (best.solved) break;
    }
    best.cost_evaluations = descent.evaluations;
    if (!best.params.empty()) best.circuit = mesh_circuit(layout, best.params);
    return best;
}

ImproveReport improve_scheme(const SchemeDefinition& scheme, int max_iterations,
                             double fidelity_floor) {
    scheme.validate();
    if (scheme.postselected) {
        throw std::invalid_argument("improve_scheme: postselected schemes are not searchable");
    }
    SearchProblem problem;
    problem.modes = scheme.circuit.modes;
    problem.input = scheme.input;
    problem.herald_spec = scheme.herald_spec;
    problem.target = scheme.target;
    problem.correction = scheme.correction;
    problem.restarts = 1;
    problem.max_iterations = max_iterations;
    // push success hard while keeping fidelity pinned
    problem.weight_fidelity = 100.0;
    problem.weight_success = 1.0;
    problem.p_ref = 1.0;
    if (!std::holds_alternative<std::vector<HeraldPattern>>(problem.herald_spec.accepted)) {
        throw std::invalid_argument("improve_scheme: scheme needs explicit herald patterns");
    }
    problem.validate();

    const MeshLayout layout = MeshLayout::rectangular(problem.modes);
    std::vector<double> x = mesh_params_from_unitary(layout, compile(scheme.circuit));

    ImproveReport rep;
    rep.baseline = evaluate_mesh(problem, layout, x);
    Descent descent{problem, layout};
    double fx = 0.0;
    const int gd_iters = std::max(1, max_iterations / 2);
    descent.run(x, fx, gd_iters);
    descent.polish(x, fx, max_iterations - gd_iters);
    rep.best = evaluate_mesh(problem, layout, x);
    rep.params = x;
    rep.improved = rep.best.fidelity >= fidelity_floor &&
                   rep.best.success > rep.baseline.success + 1e-9;
    return rep;
}

SchemeDefinition to_scheme(const SearchProblem& problem, const SearchResult& result,
                           const std::string& name) {
    if (result.params.empty()) throw std::invalid_argument("to_scheme: empty search result");
    SchemeDefinition s;
    s.name = name;
    s.circuit = result.circuit;
    s.input = problem.input;
    s.herald_spec = problem.herald_spec;
    s.detectors.assign(problem.herald_spec.herald_modes.size(), DetectorModel::ideal_pnr());
    s.target = problem.target;
    s.correction = problem.correction;
    s.provenance = "discovered";
    return s;
}

}  // namespace heraldiq
