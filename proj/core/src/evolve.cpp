#include "heraldiq/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace heraldiq {

namespace {

double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        t[0] = 1.0;
        for (int i = 1; i < 171; ++i) t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i - 1)] * i;
        return t;
    }();
    return table.at(static_cast<std::size_t>(n));
}

std::vector<int> expand_modes(const ModeOccupation& occ) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(occ.total()));
    for (int m = 0; m < occ.modes(); ++m) {
        for (int k = 0; k < occ[m]; ++k) out.push_back(m);
    }
    return out;
}

double occ_factorial(const ModeOccupation& occ) {
    double f = 1.0;
    for (int m = 0; m < occ.modes(); ++m) f *= factorial(occ[m]);
    return f;
}

// ⟨T|U|S⟩ for one input/output occupation pair.
Complex transition_amplitude(const std::vector<int>& in_modes, double in_fact,
                             const ModeOccupation& out, const Matrix& u, int max_photons) {
    const int n = static_cast<int>(in_modes.size());
    const std::vector<int> out_modes = expand_modes(out);
    Eigen::MatrixXcd sub(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            sub(r, c) = u(out_modes[static_cast<std::size_t>(r)], in_modes[static_cast<std::size_t>(c)]);
        }
    }
    return permanent(sub, max_photons) / std::sqrt(in_fact * occ_factorial(out));
}

}  // namespace

PureState evolve(const PureState& s, const Matrix& u, const EvolveOptions& opts) {
    const int m = s.modes();
    if (u.rows() != m || u.cols() != m) {
        throw std::invalid_argument("evolve: unitary size does not match state modes");
    }
    if (m > opts.max_modes) {
        throw std::domain_error("evolve: mode count " + std::to_string(m) +
                                " exceeds configured maximum " + std::to_string(opts.max_modes));
    }

    // group input terms by total photon number; sectors evolve independently
    std::map<int, std::vector<std::pair<ModeOccupation, Complex>>> sectors;
    for (const auto& [occ, amp] : s.terms()) {
        if (occ.total() > opts.max_photons) {
            throw std::domain_error("evolve: photon number " + std::to_string(occ.total()) +
                                    " exceeds configured maximum " +
                                    std::to_string(opts.max_photons));
        }
        sectors[occ.total()].emplace_back(occ, amp);
    }

    PureState::TermMap out_terms;
    for (const auto& [n, terms] : sectors) {
        if (n == 0) {
            for (const auto& [occ, amp] : terms) out_terms[occ] += amp;
            continue;
        }
        // modes reachable from the occupied input modes
        std::set<int> reachable_set;
        for (const auto& [occ, amp] : terms) {
            (void)amp;
            for (int c = 0; c < m; ++c) {
                if (occ[c] == 0) continue;
                for (int r = 0; r < m; ++r) {
                    if (std::abs(u(r, c)) > 1e-14) reachable_set.insert(r);
                }
            }
        }
        const std::vector<int> reachable(reachable_set.begin(), reachable_set.end());
        const auto reduced_outputs = enumerate_occupations(n, static_cast<int>(reachable.size()));

        // precompute expanded input mode lists
        std::vector<std::vector<int>> in_modes;
        std::vector<double> in_fact;
        for (const auto& [occ, amp] : terms) {
            (void)amp;
            in_modes.push_back(expand_modes(occ));
            in_fact.push_back(occ_factorial(occ));
        }

        std::vector<std::pair<ModeOccupation, Complex>> results(reduced_outputs.size());
        auto worker = [&](std::size_t begin, std::size_t end) {
            for (std::size_t oi = begin; oi < end; ++oi) {
                std::vector<int> counts(static_cast<std::size_t>(m), 0);
                for (std::size_t k = 0; k < reachable.size(); ++k) {
                    counts[static_cast<std::size_t>(reachable[k])] =
                        reduced_outputs[oi][static_cast<int>(k)];
                }
                ModeOccupation out_occ{std::move(counts)};
                Complex amp = 0.0;
                for (std::size_t ti = 0; ti < terms.size(); ++ti) {
                    amp += terms[ti].second * transition_amplitude(in_modes[ti], in_fact[ti],
                                                                   out_occ, u, opts.max_photons);
                }
                results[oi] = {std::move(out_occ), amp};
            }
        };
        const int threads = std::max(1, opts.threads);
        if (threads == 1 || reduced_outputs.size() < 64) {
            worker(0, reduced_outputs.size());
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (reduced_outputs.size() + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                const std::size_t b = static_cast<std::size_t>(t) * chunk;
                if (b >= reduced_outputs.size()) break;
                pool.emplace_back(worker, b, std::min(b + chunk, reduced_outputs.size()));
            }
            for (auto& th : pool) th.join();
        }
        for (auto& [occ, amp] : results) {
            if (std::abs(amp) > opts.amplitude_threshold && amp != Complex(0.0)) {
                out_terms[occ] += amp;
            }
        }
    }
    return PureState(m, std::move(out_terms));
}

StateEnsemble evolve(const StateEnsemble& s, const Matrix& u, const EvolveOptions& opts) {
    StateEnsemble out;
    for (const auto& c : s.components()) out.add(c.weight, evolve(c.state, u, opts));
    return out;
}

StateEnsemble LabeledEnsemble::as_ensemble() const {
    StateEnsemble e;
    for (const auto& c : components) e.add(c.weight, c.state);
    return e;
}

double LabeledEnsemble::probability(const ModeOccupation& occ) const {
    double p = 0.0;
    for (const auto& c : components) p += c.weight * std::norm(c.state.amplitude(occ));
    return p;
}

double LabeledEnsemble::total_weight() const {
    double p = 0.0;
    for (const auto& c : components) p += c.weight * c.state.norm2();
    return p;
}

LabeledEnsemble evolve_labeled(const LabeledInput& input, const Matrix& u,
                               const EvolveOptions& opts) {
    const int m = static_cast<int>(u.rows());
    const int n = static_cast<int>(input.photons.size());
    if (n > opts.max_photons) throw std::domain_error("evolve_labeled: too many photons");

    // validate the orthogonal-bad-bits structure
    std::set<int> bad_owner;
    for (const auto& ph : input.photons) {
        if (ph.mode < 0 || ph.mode >= m) throw std::out_of_range("evolve_labeled: photon mode");
        double norm2 = 0.0;
        int nonzero = 0;
        for (std::size_t b = 0; b < ph.internal.size(); ++b) {
            const double a2 = std::norm(ph.internal[b]);
            norm2 += a2;
            if (a2 > 0.0) {
                ++nonzero;
                if (b > 0 && !bad_owner.insert(static_cast<int>(b)).second) {
                    throw std::invalid_argument(
                        "evolve_labeled: bad-bit basis index shared between photons");
                }
            }
        }
        if (std::abs(norm2 - 1.0) > 1e-12) {
            throw std::invalid_argument("evolve_labeled: internal state not normalized");
        }
        if (nonzero > 2) {
            throw std::invalid_argument("evolve_labeled: more than two internal components");
        }
    }

    // enumerate label assignments: each photon picks one internal basis index
    LabeledEnsemble out;
    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    auto assignment = [&](auto&& self, int photon, Complex coeff) -> void {
        if (photon == n) {
            // reference group evolves coherently; each bad photon is alone
            std::vector<int> ref_counts(static_cast<std::size_t>(m), 0);
            std::vector<int> bad_modes;
            for (int j = 0; j < n; ++j) {
                if (choice[static_cast<std::size_t>(j)] == 0) {
                    ++ref_counts[static_cast<std::size_t>(input.photons[static_cast<std::size_t>(j)].mode)];
                } else {
                    bad_modes.push_back(input.photons[static_cast<std::size_t>(j)].mode);
                }
            }
            PureState ref_out(m);
            ModeOccupation ref_in{ref_counts};
            if (ref_in.total() > 0) {
                ref_out = evolve(PureState::ket(ref_in), u, opts);
            } else {
                ref_out = PureState::ket(ModeOccupation::vacuum(m));
            }
            const double w = std::norm(coeff);
            if (w == 0.0) return;
            // expand bad photons over their output modes; distinct tuples are
            // orthogonal internal sectors and stay separate components
            std::vector<int> tuple(bad_modes.size(), 0);
            auto expand = [&](auto&& inner, std::size_t k, Complex bad_amp) -> void {
                if (k == bad_modes.size()) {
                    if (std::norm(bad_amp) == 0.0) return;
                    PureState::TermMap terms;
                    for (const auto& [occ, amp] : ref_out.terms()) {
                        auto counts = occ.counts();
                        for (std::size_t i = 0; i < tuple.size(); ++i) {
                            ++counts[static_cast<std::size_t>(tuple[i])];
                        }
                        terms[ModeOccupation(std::move(counts))] += amp * bad_amp;
                    }
                    if (!terms.empty()) {
                        out.components.push_back(
                            {w, PureState(m, std::move(terms)), static_cast<int>(bad_modes.size())});
                    }
                    return;
                }
                for (int q = 0; q < m; ++q) {
                    tuple[k] = q;
                    inner(inner, k + 1, bad_amp * u(q, bad_modes[k]));
                }
            };
            expand(expand, 0, 1.0);
            return;
        }
        const auto& ph = input.photons[static_cast<std::size_t>(photon)];
        for (std::size_t b = 0; b < ph.internal.size(); ++b) {
            if (std::norm(ph.internal[b]) == 0.0) continue;
            choice[static_cast<std::size_t>(photon)] = b;
            self(self, photon + 1, coeff * ph.internal[b]);
        }
    };
    assignment(assignment, 0, 1.0);
    return out;
}

double labeled_fidelity(const LabeledEnsemble& ens, const PureState& target) {
    const PureState t = target.normalized();
    double num = 0.0;
    double den = 0.0;
    for (const auto& c : ens.components) {
        den += c.weight * c.state.norm2();
        if (c.bad_photons == 0) num += c.weight * std::norm(t.inner(c.state));
    }
    return den > 0.0 ? num / den : 0.0;
}

NsGateReport ns_gate_check(const std::array<Complex, 3>& input, const Matrix& u3, double tol) {
    if (u3.rows() != 3 || u3.cols() != 3) {
        throw std::invalid_argument("ns_gate_check: need a 3-mode unitary");
    }
    PureState in(3);
    PureState::TermMap terms;
    for (int k = 0; k < 3; ++k) {
        if (input[static_cast<std::size_t>(k)] != Complex(0.0)) {
            terms.emplace(ModeOccupation({k, 1, 0}), input[static_cast<std::size_t>(k)]);
        }
    }
    in = PureState(3, std::move(terms));
    const PureState out = evolve(in, u3);

    NsGateReport rep;
    for (int k = 0; k < 3; ++k) {
        rep.output[static_cast<std::size_t>(k)] = out.amplitude(ModeOccupation({k, 1, 0}));
        rep.success_prob += std::norm(rep.output[static_cast<std::size_t>(k)]);
    }
    // compare against (α, β, −γ) up to one global phase
    const std::array<Complex, 3> want = {input[0], input[1], -input[2]};
    Complex phase = 0.0;
    double want_norm = 0.0;
    for (int k = 0; k < 3; ++k) {
        phase += std::conj(want[static_cast<std::size_t>(k)]) * rep.output[static_cast<std::size_t>(k)];
        want_norm += std::norm(want[static_cast<std::size_t>(k)]);
    }
    rep.sign_flipped = false;
    if (want_norm > 0.0 && std::abs(phase) > 0.0) {
        const Complex scale = phase / want_norm;
        double dev = 0.0;
        for (int k = 0; k < 3; ++k) {
            dev = std::max(dev, std::abs(rep.output[static_cast<std::size_t>(k)] -
                                         scale * want[static_cast<std::size_t>(k)]));
        }
        rep.sign_flipped = dev <= tol;
    }
    return rep;
}

Matrix optimal_ns_unitary() {
    const double r2 = std::sqrt(2.0);
    Matrix u(3, 3);
    u << 1.0 - r2, std::pow(2.0, -0.25), std::sqrt(3.0 / r2 - 2.0),
        std::pow(2.0, -0.25), 0.5, 0.5 - 1.0 / r2,
        std::sqrt(3.0 / r2 - 2.0), 0.5 - 1.0 / r2, r2 - 0.5;
    return u;
}

}  // namespace heraldiq
