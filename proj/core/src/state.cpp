#include "heraldiq/state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heraldiq {

namespace {

double sum_norm2(const PureState::TermMap& terms) {
    double s = 0.0;
    for (const auto& [occ, amp] : terms) s += std::norm(amp);
    return s;
}

}  // namespace

PureState::PureState(int modes, TermMap terms) : m_(modes), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.modes() != m_) {
            throw std::invalid_argument("PureState: term has wrong mode count " + it->first.str());
        }
        it = it->second == Complex(0.0) ? terms_.erase(it) : std::next(it);
    }
    norm2_ = sum_norm2(terms_);
}

PureState PureState::ket(const ModeOccupation& occ, Complex amp) {
    TermMap t;
    t.emplace(occ, amp);
    return PureState(occ.modes(), std::move(t));
}

Complex PureState::amplitude(const ModeOccupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

int PureState::definite_photon_number() const {
    int n = -1;
    for (const auto& [occ, amp] : terms_) {
        (void)amp;
        if (n < 0) {
            n = occ.total();
        } else if (occ.total() != n) {
            return -1;
        }
    }
    return n;
}

PureState PureState::normalized() const {
    if (norm2_ <= 0.0) throw std::domain_error("PureState: cannot normalize a zero state");
    return scaled(1.0 / std::sqrt(norm2_));
}

PureState PureState::scaled(Complex factor) const {
    TermMap t = terms_;
    for (auto& [occ, amp] : t) {
        (void)occ;
        amp *= factor;
    }
    return PureState(m_, std::move(t));
}

PureState PureState::operator+(const PureState& other) const {
    if (other.m_ != m_) throw std::invalid_argument("PureState: mode count mismatch in +");
    TermMap t = terms_;
    for (const auto& [occ, amp] : other.terms_) t[occ] += amp;
    return PureState(m_, std::move(t));
}

Complex PureState::inner(const PureState& other) const {
    if (other.m_ != m_) throw std::invalid_argument("PureState: mode count mismatch in inner");
    // iterate over the smaller map
    const PureState* a = this;
    const PureState* b = &other;
    bool swapped = false;
    if (b->terms_.size() < a->terms_.size()) {
        std::swap(a, b);
        swapped = true;
    }
    Complex s = 0.0;
    for (const auto& [occ, amp] : a->terms_) {
        auto it = b->terms_.find(occ);
        if (it == b->terms_.end()) continue;
        s += swapped ? it->second * std::conj(amp) : std::conj(amp) * it->second;
    }
    // s accumulated as ⟨a|b⟩; fix orientation if we swapped
    return swapped ? std::conj(s) : s;
}

PureState PureState::tensor(const PureState& other) const {
    TermMap t;
    for (const auto& [occ1, amp1] : terms_) {
        for (const auto& [occ2, amp2] : other.terms_) {
            t.emplace(occ1.append(occ2), amp1 * amp2);
        }
    }
    return PureState(m_ + other.m_, std::move(t));
}

PureState PureState::filtered(const std::function<bool(const ModeOccupation&)>& pred) const {
    TermMap t;
    for (const auto& [occ, amp] : terms_) {
        if (pred(occ)) t.emplace(occ, amp);
    }
    return PureState(m_, std::move(t));
}

PureState PureState::pruned(double eps) const {
    TermMap t;
    for (const auto& [occ, amp] : terms_) {
        if (std::abs(amp) > eps) t.emplace(occ, amp);
    }
    return PureState(m_, std::move(t));
}

std::string PureState::str(double eps) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [occ, amp] : terms_) {
        if (std::abs(amp) <= eps) continue;
        if (!first) os << " + ";
        os << "(" << amp.real() << (amp.imag() < 0 ? "-" : "+") << std::abs(amp.imag()) << "i)"
           << "|" << occ.str() << ">";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

StateEnsemble::StateEnsemble(std::vector<Component> components)
    : components_(std::move(components)) {
    for (const auto& c : components_) {
        if (c.weight < 0.0) throw std::invalid_argument("StateEnsemble: negative weight");
    }
}

void StateEnsemble::add(double weight, PureState state) {
    if (weight < 0.0) throw std::invalid_argument("StateEnsemble: negative weight");
    components_.push_back({weight, std::move(state)});
}

double StateEnsemble::total_weight() const {
    double s = 0.0;
    for (const auto& c : components_) s += c.weight * c.state.norm2();
    return s;
}

double StateEnsemble::mean_photon_number() const {
    double num = 0.0;
    double den = 0.0;
    for (const auto& c : components_) {
        for (const auto& [occ, amp] : c.state.terms()) {
            double p = c.weight * std::norm(amp);
            num += p * occ.total();
            den += p;
        }
    }
    return den > 0.0 ? num / den : 0.0;
}

std::map<int, double> StateEnsemble::photon_number_distribution() const {
    std::map<int, double> dist;
    double den = 0.0;
    for (const auto& c : components_) {
        for (const auto& [occ, amp] : c.state.terms()) {
            double p = c.weight * std::norm(amp);
            dist[occ.total()] += p;
            den += p;
        }
    }
    if (den > 0.0) {
        for (auto& [n, p] : dist) {
            (void)n;
            p /= den;
        }
    }
    return dist;
}

StateEnsemble StateEnsemble::scaled(double factor) const {
    auto cs = components_;
    for (auto& c : cs) c.weight *= factor;
    return StateEnsemble(std::move(cs));
}

StateEnsemble StateEnsemble::merged(const StateEnsemble& other) const {
    auto cs = components_;
    cs.insert(cs.end(), other.components_.begin(), other.components_.end());
    return StateEnsemble(std::move(cs));
}

double fidelity(const PureState& state, const PureState& target) {
    if (state.norm2() <= 0.0) return 0.0;
    const PureState t = target.normalized();
    return std::norm(t.inner(state)) / state.norm2();
}

double fidelity(const StateEnsemble& state, const PureState& target) {
    const PureState t = target.normalized();
    double num = 0.0;
    double den = 0.0;
    for (const auto& c : state.components()) {
        num += c.weight * std::norm(t.inner(c.state));
        den += c.weight * c.state.norm2();
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace heraldiq
