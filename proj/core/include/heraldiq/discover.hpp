#pragma once

#include <cstdint>

#include "heraldiq/decompose.hpp"
#include "heraldiq/schemes.hpp"

namespace heraldiq {

/// Circuit-discovery problem: find mesh parameters whose compiled unitary
/// turns `input` into `target` on the target modes when the herald pattern
/// fires. Cost = μ_f·(1−F) + μ_s·(1−p/p_ref) with F maximized over the
/// declared correction class.
struct SearchProblem {
    int modes = 0;
    ModeOccupation input;
    HeraldSpec herald_spec;
    TargetSpec target;
    CorrectionClass correction = CorrectionClass::Phases;

    double weight_fidelity = 1.0;  // μ_f
    double weight_success = 0.2;   // μ_s
    double p_ref = 1.0;            // success normalization (best known value)
    /// false: reward any success up to p_ref (search mode);
    /// true: pull success onto p_ref exactly (reconstruction mode)
    bool pin_success = false;

    int restarts = 64;
    int max_iterations = 200;
    std::uint64_t seed = 0;
    /// a restart counts as solved when F ≥ fidelity_goal and p ≥ success_goal
    double fidelity_goal = 0.999;
    double success_goal = 0.0;
    /// quasi-Newton refinement budget applied to a solved restart
    int polish_iterations = 0;
    /// optional warm start: restart 0 begins here instead of at random angles
    std::vector<double> seed_params;

    void validate() const;
};

struct MeshEvaluation {
    double fidelity = 0.0;
    double success = 0.0;
    double cost = 0.0;
};

/// Deterministic evaluation of one parameter vector (herald projection plus
/// corrected fidelity against the target).
MeshEvaluation evaluate_mesh(const SearchProblem& problem, const MeshLayout& layout,
                             const std::vector<double>& params);

double search_cost(const SearchProblem& problem, const MeshLayout& layout,
                   const std::vector<double>& params);

struct RestartTrace {
    std::uint64_t sub_seed = 0;
    int iterations = 0;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    bool solved = false;
};

struct SearchResult {
    bool solved = false;
    std::vector<double> params;
    Circuit circuit;
    double fidelity = 0.0;
    double success = 0.0;
    double cost = 0.0;
    int best_restart = -1;
    long long cost_evaluations = 0;
    std::vector<RestartTrace> trace;
};

/// Multi-restart descent on numerical gradients (central differences,
/// step 1e-6, backtracking line search). Deterministic for a fixed seed.
/// Exhausting the budget without reaching the goals is reported through
/// `solved` = false, not an exception.
SearchResult optimize(const SearchProblem& problem);

struct ImproveReport {
    MeshEvaluation baseline;
    MeshEvaluation best;
    bool improved = false;       // higher success at preserved fidelity
    std::vector<double> params;  // best parameters found
};

/// Seeds the descent at an existing scheme's compiled unitary and reports
/// any success-probability improvement that keeps the fidelity.
ImproveReport improve_scheme(const SchemeDefinition& scheme, int max_iterations = 200,
                             double fidelity_floor = 1.0 - 1e-9);

/// Renders a search solution as a scheme definition (provenance
/// "discovered"), ready for the scheme-file writer.
SchemeDefinition to_scheme(const SearchProblem& problem, const SearchResult& result,
                           const std::string& name);

}  // namespace heraldiq
