#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "heraldiq/dualrail.hpp"
#include "heraldiq/targets.hpp"

using namespace heraldiq;

TEST_CASE("occupation basics") {
    ModeOccupation a{1, 0, 2};
    CHECK(a.modes() == 3);
    CHECK(a.total() == 3);
    CHECK(a[2] == 2);
    CHECK_THROWS(ModeOccupation({-1, 0}));
    CHECK(fock_dimension(6, 12) == 12376);
    CHECK(enumerate_occupations(2, 3).size() == 6);
    CHECK(enumerate_occupations(0, 4).size() == 1);
}

TEST_CASE("encode_qubits produces the expected product kets") {
    DualRailRegister one({{0, 1}});
    auto s = encode_qubits("0", one);
    CHECK(s.amplitude(ModeOccupation({1, 0})) == Complex(1.0));
    CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-14));

    DualRailRegister two = DualRailRegister::consecutive(2);
    CHECK(encode_qubits("01", two).amplitude(ModeOccupation({1, 0, 0, 1})) == Complex(1.0));
    CHECK(encode_qubits("11", two).amplitude(ModeOccupation({0, 1, 0, 1})) == Complex(1.0));

    CHECK_THROWS(encode_qubits("001", two));
    CHECK_THROWS(DualRailRegister({{0, 1}, {1, 2}}));
}

TEST_CASE("decode_qubits splits computational and leakage weight") {
    DualRailRegister reg = DualRailRegister::consecutive(2);
    SUBCASE("Bell-type state decodes with zero leakage") {
        PureState::TermMap t;
        t.emplace(ModeOccupation({1, 0, 0, 1}), 1.0 / std::sqrt(2.0));
        t.emplace(ModeOccupation({0, 1, 1, 0}), 1.0 / std::sqrt(2.0));
        auto res = decode_qubits(PureState(4, t), reg);
        CHECK(res.leakage_weight == doctest::Approx(0.0));
        REQUIRE(res.amplitudes.size() == 2);
        CHECK(res.amplitudes[0].first == "01");
        CHECK(res.amplitudes[1].first == "10");
        CHECK(std::abs(res.amplitudes[0].second) == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    SUBCASE("two photons in one pair are pure leakage") {
        auto res = decode_qubits(PureState::ket(ModeOccupation({1, 1, 0, 0})), reg);
        CHECK(res.leakage_weight == doctest::Approx(1.0));
        CHECK(res.amplitudes.empty());
    }
    SUBCASE("|1010> decodes to |00>") {
        auto res = decode_qubits(PureState::ket(ModeOccupation({1, 0, 1, 0})), reg);
        CHECK(res.leakage_weight == doctest::Approx(0.0));
        REQUIRE(res.amplitudes.size() == 1);
        CHECK(res.amplitudes[0].first == "00");
    }
}

TEST_CASE("encode/decode round trip is the identity up to 6 qubits") {
    for (int q = 1; q <= 6; ++q) {
        DualRailRegister reg = DualRailRegister::consecutive(q);
        for (int bits = 0; bits < (1 << q); ++bits) {
            std::string s;
            for (int i = 0; i < q; ++i) s.push_back((bits >> i) & 1 ? '1' : '0');
            auto res = decode_qubits(encode_qubits(s, reg), reg);
            REQUIRE(res.amplitudes.size() == 1);
            CHECK(res.amplitudes[0].first == s);
            CHECK(res.amplitudes[0].second == Complex(1.0));
            CHECK(res.leakage_weight == 0.0);
        }
    }
}

TEST_CASE("decode weight accounting") {
    // leakage + computational = norm² also on subnormalized mixed-support states
    DualRailRegister reg = DualRailRegister::consecutive(2);
    PureState::TermMap t;
    t.emplace(ModeOccupation({1, 0, 0, 1}), 0.5);
    t.emplace(ModeOccupation({2, 0, 0, 0}), Complex(0.0, 0.3));
    t.emplace(ModeOccupation({0, 1, 1, 0}), -0.2);
    PureState s(4, t);
    auto res = decode_qubits(s, reg);
    CHECK(res.computational_weight + res.leakage_weight == doctest::Approx(s.norm2()).epsilon(1e-14));
}

TEST_CASE("bell targets") {
    DualRailRegister reg = DualRailRegister::consecutive(2);
    auto phip = target_bell(BellKind::PhiPlus, reg);
    CHECK(phip.amplitude(ModeOccupation({1, 0, 1, 0})).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(phip.amplitude(ModeOccupation({0, 1, 0, 1})).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    auto psim = target_bell(BellKind::PsiMinus, reg);
    CHECK(psim.amplitude(ModeOccupation({1, 0, 0, 1})).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(psim.amplitude(ModeOccupation({0, 1, 1, 0})).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(fidelity(phip, target_bell(BellKind::PsiPlus, reg)) == doctest::Approx(0.0));
    for (auto kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus}) {
        CHECK(target_bell(kind, reg).norm2() == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("ghz targets") {
    auto ghz32 = target_ghz(QuditRegister::consecutive(3, 2));
    CHECK(ghz32.amplitude(ModeOccupation({1, 0, 1, 0, 1, 0})).real() ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(ghz32.amplitude(ModeOccupation({0, 1, 0, 1, 0, 1})).real() ==
          doctest::Approx(1.0 / std::sqrt(2.0)));

    auto ghz33 = target_ghz(QuditRegister::consecutive(3, 3));
    CHECK(ghz33.term_count() == 3);
    CHECK(ghz33.norm2() == doctest::Approx(1.0).epsilon(1e-13));

    // hand-expansion oracle: ⟨GHZ|Φ+⊗|0⟩⟩ keeps exactly the |101010⟩ term,
    // (1/√2)·(1/√2) = 1/2
    DualRailRegister pair2 = DualRailRegister::consecutive(2);
    auto phi_plus = target_bell(BellKind::PhiPlus, pair2);
    auto third = encode_qubits("0", DualRailRegister({{4, 5}}), 6);
    PureState embedded(6);
    {
        PureState::TermMap t;
        for (const auto& [occ, amp] : phi_plus.terms()) {
            auto counts = occ.counts();
            counts.push_back(0);
            counts.push_back(0);
            t.emplace(ModeOccupation(counts), amp);
        }
        embedded = PureState(6, t);
    }
    auto product = embedded.terms().begin();
    (void)product;
    PureState phi0(6);
    {
        PureState::TermMap t;
        t.emplace(ModeOccupation({1, 0, 1, 0, 1, 0}), 1.0 / std::sqrt(2.0));
        t.emplace(ModeOccupation({0, 1, 0, 1, 1, 0}), 1.0 / std::sqrt(2.0));
        phi0 = PureState(6, t);
    }
    CHECK(std::abs(ghz32.inner(phi0)) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("noon and w targets") {
    auto noon2 = target_noon(2);
    CHECK(noon2.amplitude(ModeOccupation({2, 0})).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(target_noon(1).amplitude(ModeOccupation({0, 1})).real() ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(target_noon(4).amplitude(ModeOccupation({4, 0})).real() ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(target_noon(4).norm2() == doctest::Approx(1.0).epsilon(1e-13));

    DualRailRegister reg3 = DualRailRegister::consecutive(3);
    auto w3 = target_w(reg3);
    CHECK(w3.amplitude(ModeOccupation({0, 1, 1, 0, 1, 0})).real() ==
          doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(w3.norm2() == doctest::Approx(1.0).epsilon(1e-13));

    // W_2 coincides with Ψ+
    DualRailRegister reg2 = DualRailRegister::consecutive(2);
    CHECK(fidelity(target_w(reg2), target_bell(BellKind::PsiPlus, reg2)) == doctest::Approx(1.0));

    // GHZ_3 and W_3 have disjoint supports
    auto ghz32 = target_ghz(QuditRegister::consecutive(3, 2));
    CHECK(std::abs(w3.inner(ghz32)) == doctest::Approx(0.0));
}

TEST_CASE("phi_alpha target") {
    DualRailRegister reg = DualRailRegister::consecutive(2);
    const double pi = 3.14159265358979323846;
    auto bell_like = target_phi_alpha(pi / 4.0, reg);
    CHECK(fidelity(bell_like, target_bell(BellKind::PhiPlus, reg)) > 0.999999);

    auto product = target_phi_alpha(0.0, reg);
    CHECK(product.amplitude(ModeOccupation({0, 1, 0, 1})).real() == doctest::Approx(1.0));
    CHECK(product.term_count() == 1);

    auto third = target_phi_alpha(pi / 6.0, reg);
    CHECK(std::abs(third.amplitude(ModeOccupation({0, 1, 0, 1}))) ==
          doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(std::abs(third.amplitude(ModeOccupation({1, 0, 1, 0}))) == doctest::Approx(0.5));
}

TEST_CASE("werner ensemble") {
    DualRailRegister reg = DualRailRegister::consecutive(2);
    auto psim = target_bell(BellKind::PsiMinus, reg);

    auto pure = werner_ensemble(1.0, reg);
    CHECK(fidelity(pure, psim) == doctest::Approx(1.0));

    auto mixed = werner_ensemble(0.0, reg);
    CHECK(mixed.components().size() == 4);
    CHECK(mixed.total_weight() == doctest::Approx(1.0));

    // ensemble-sum oracle: F = λ + (1−λ)/4, the identity component overlaps
    // Ψ− only through |01⟩ and |10⟩ at weight 1/2 each
    auto half = werner_ensemble(0.5, reg);
    CHECK(fidelity(half, psim) == doctest::Approx(0.625).epsilon(1e-13));
}

TEST_CASE("fidelity properties") {
    DualRailRegister reg = DualRailRegister::consecutive(2);
    auto phip = target_bell(BellKind::PhiPlus, reg);
    CHECK(fidelity(phip, phip) == doctest::Approx(1.0));
    CHECK(fidelity(phip, target_bell(BellKind::PhiMinus, reg)) == doctest::Approx(0.0));

    // global-phase invariance and range, on random two-qubit states
    std::mt19937_64 rng(20240229);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        PureState::TermMap t;
        for (const char* bits : {"00", "01", "10", "11"}) {
            t[encode_qubits(bits, reg).terms().begin()->first] = Complex(g(rng), g(rng));
        }
        PureState s(4, t);
        const double f = fidelity(s, phip);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
        const Complex phase = std::exp(Complex(0.0, g(rng)));
        CHECK(fidelity(s.scaled(phase), phip) == doctest::Approx(f).epsilon(1e-12));
        // subnormalized states compare their conditionals
        CHECK(fidelity(s.scaled(0.3), phip) == doctest::Approx(f).epsilon(1e-12));
    }
}
