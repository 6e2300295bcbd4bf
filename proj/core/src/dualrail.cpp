#include "heraldiq/dualrail.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace heraldiq {

DualRailRegister::DualRailRegister(std::vector<std::pair<int, int>> pairs)
    : pairs_(std::move(pairs)) {
    std::set<int> seen;
    for (const auto& [a, b] : pairs_) {
        if (a < 0 || b < 0) throw std::invalid_argument("DualRailRegister: negative mode index");
        if (!seen.insert(a).second || !seen.insert(b).second) {
            throw std::invalid_argument("DualRailRegister: overlapping modes");
        }
    }
}

DualRailRegister DualRailRegister::consecutive(int qubits, int first_mode) {
    std::vector<std::pair<int, int>> p;
    p.reserve(static_cast<std::size_t>(qubits));
    for (int q = 0; q < qubits; ++q) p.emplace_back(first_mode + 2 * q, first_mode + 2 * q + 1);
    return DualRailRegister(std::move(p));
}

int DualRailRegister::min_modes() const {
    int hi = -1;
    for (const auto& [a, b] : pairs_) hi = std::max({hi, a, b});
    return hi + 1;
}

std::vector<int> DualRailRegister::all_modes() const {
    std::vector<int> ms;
    for (const auto& [a, b] : pairs_) {
        ms.push_back(a);
        ms.push_back(b);
    }
    return ms;
}

QuditRegister::QuditRegister(int dim, std::vector<std::vector<int>> rails)
    : dim_(dim), rails_(std::move(rails)) {
    if (dim_ < 2) throw std::invalid_argument("QuditRegister: dim must be >= 2");
    std::set<int> seen;
    for (const auto& r : rails_) {
        if (static_cast<int>(r.size()) != dim_) {
            throw std::invalid_argument("QuditRegister: rail group size != dim");
        }
        for (int m : r) {
            if (m < 0 || !seen.insert(m).second) {
                throw std::invalid_argument("QuditRegister: invalid or overlapping modes");
            }
        }
    }
}

QuditRegister QuditRegister::consecutive(int qudits, int dim, int first_mode) {
    std::vector<std::vector<int>> rails;
    for (int q = 0; q < qudits; ++q) {
        std::vector<int> r;
        for (int i = 0; i < dim; ++i) r.push_back(first_mode + q * dim + i);
        rails.push_back(std::move(r));
    }
    return QuditRegister(dim, std::move(rails));
}

int QuditRegister::min_modes() const {
    int hi = -1;
    for (const auto& r : rails_) {
        for (int m : r) hi = std::max(hi, m);
    }
    return hi + 1;
}

PureState encode_qubits(const std::string& bits, const DualRailRegister& reg,
                        std::optional<int> total_modes) {
    if (static_cast<int>(bits.size()) != reg.qubits()) {
        throw std::invalid_argument("encode_qubits: bit count does not match register size");
    }
    const int m = total_modes.value_or(reg.min_modes());
    if (m < reg.min_modes()) throw std::invalid_argument("encode_qubits: total_modes too small");
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    for (int q = 0; q < reg.qubits(); ++q) {
        const char b = bits[static_cast<std::size_t>(q)];
        const auto& [a, bm] = reg.pairs()[static_cast<std::size_t>(q)];
        if (b == '0') {
            counts[static_cast<std::size_t>(a)] = 1;
        } else if (b == '1') {
            counts[static_cast<std::size_t>(bm)] = 1;
        } else {
            throw std::invalid_argument("encode_qubits: bits must be 0 or 1");
        }
    }
    return PureState::ket(ModeOccupation(std::move(counts)));
}

DecodeResult decode_qubits(const PureState& state, const DualRailRegister& reg) {
    if (state.modes() < reg.min_modes()) {
        throw std::invalid_argument("decode_qubits: state does not cover register modes");
    }
    DecodeResult res;
    std::map<std::string, Complex> amps;
    for (const auto& [occ, amp] : state.terms()) {
        std::string bits;
        bits.reserve(static_cast<std::size_t>(reg.qubits()));
        bool computational = true;
        int in_register = 0;
        for (const auto& [a, b] : reg.pairs()) {
            const int na = occ[a];
            const int nb = occ[b];
            in_register += na + nb;
            if (na + nb != 1 || na > 1 || nb > 1) {
                computational = false;
                break;
            }
            bits.push_back(nb == 1 ? '1' : '0');
        }
        if (computational && in_register != occ.total()) computational = false;  // photons outside register
        if (computational) {
            amps[bits] += amp;
            res.computational_weight += std::norm(amp);
        } else {
            res.leakage_weight += std::norm(amp);
        }
    }
    res.amplitudes.assign(amps.begin(), amps.end());
    return res;
}

}  // namespace heraldiq
