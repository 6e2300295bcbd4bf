#include "heraldiq/targets.hpp"

#include <cmath>
#include <stdexcept>

namespace heraldiq {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

const char* bell_name(BellKind kind) {
    switch (kind) {
        case BellKind::PhiPlus: return "phi+";
        case BellKind::PhiMinus: return "phi-";
        case BellKind::PsiPlus: return "psi+";
        case BellKind::PsiMinus: return "psi-";
    }
    return "?";
}

BellKind bell_from_name(const std::string& name) {
    if (name == "phi+") return BellKind::PhiPlus;
    if (name == "phi-") return BellKind::PhiMinus;
    if (name == "psi+") return BellKind::PsiPlus;
    if (name == "psi-") return BellKind::PsiMinus;
    throw std::invalid_argument("unknown Bell state name: " + name);
}

PureState target_bell(BellKind kind, const DualRailRegister& reg) {
    if (reg.qubits() != 2) throw std::invalid_argument("target_bell: register must hold 2 qubits");
    std::string b1, b2;
    double sign = 1.0;
    switch (kind) {
        case BellKind::PhiPlus: b1 = "00"; b2 = "11"; break;
        case BellKind::PhiMinus: b1 = "00"; b2 = "11"; sign = -1.0; break;
        case BellKind::PsiPlus: b1 = "01"; b2 = "10"; break;
        case BellKind::PsiMinus: b1 = "01"; b2 = "10"; sign = -1.0; break;
    }
    return encode_qubits(b1, reg).scaled(kInvSqrt2) +
           encode_qubits(b2, reg).scaled(sign * kInvSqrt2);
}

PureState target_ghz(const QuditRegister& reg, bool allow_small) {
    const int n = reg.qudits();
    const int d = reg.dim();
    if (n < (allow_small ? 2 : 3)) throw std::invalid_argument("target_ghz: need N >= 3 qudits");
    const int m = reg.min_modes();
    PureState::TermMap terms;
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int level = 0; level < d; ++level) {
        std::vector<int> counts(static_cast<std::size_t>(m), 0);
        for (const auto& rail : reg.rails()) {
            counts[static_cast<std::size_t>(rail[static_cast<std::size_t>(level)])] = 1;
        }
        terms.emplace(ModeOccupation(std::move(counts)), amp);
    }
    return PureState(m, std::move(terms));
}

PureState target_noon(int n) {
    if (n < 1) throw std::invalid_argument("target_noon: need N >= 1");
    PureState::TermMap terms;
    terms.emplace(ModeOccupation({n, 0}), kInvSqrt2);
    terms.emplace(ModeOccupation({0, n}), kInvSqrt2);
    return PureState(2, std::move(terms));
}

PureState target_w(const DualRailRegister& reg) {
    const int n = reg.qubits();
    if (n < 2) throw std::invalid_argument("target_w: need N >= 2 qubits");
    PureState out(reg.min_modes());
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int q = 0; q < n; ++q) {
        std::string bits(static_cast<std::size_t>(n), '0');
        bits[static_cast<std::size_t>(q)] = '1';
        out = out + encode_qubits(bits, reg).scaled(amp);
    }
    return out;
}

PureState target_phi_alpha(double alpha, const DualRailRegister& reg) {
    if (reg.qubits() != 2) throw std::invalid_argument("target_phi_alpha: need 2 qubits");
    return encode_qubits("11", reg).scaled(std::cos(alpha)) +
           encode_qubits("00", reg).scaled(std::sin(alpha));
}

StateEnsemble werner_ensemble(double lambda, const DualRailRegister& reg) {
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("werner_ensemble: λ ∉ [0,1]");
    StateEnsemble e;
    if (lambda > 0.0) e.add(lambda, target_bell(BellKind::PsiMinus, reg));
    if (lambda < 1.0) {
        const double w = (1.0 - lambda) / 4.0;
        for (const char* bits : {"00", "01", "10", "11"}) {
            e.add(w, encode_qubits(bits, reg));
        }
    }
    return e;
}

}  // namespace heraldiq
