#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "heraldiq/circuit.hpp"
#include "heraldiq/evolve.hpp"
#include "oracles.hpp"

using namespace heraldiq;

namespace {
constexpr double kPi = std::numbers::pi;

Matrix bs5050(int m, int i, int j) {
    Circuit c;
    c.modes = m;
    c.bs(i, j, kPi / 4.0, 0.0);
    return compile(c);
}
}  // namespace

TEST_CASE("permanent small cases") {
    CHECK(std::abs(permanent(Eigen::MatrixXcd::Identity(3, 3)) - Complex(1.0)) < 1e-14);
    Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(2, 2);
    CHECK(std::abs(permanent(ones) - Complex(2.0)) < 1e-14);
    Eigen::MatrixXcd empty(0, 0);
    CHECK(std::abs(permanent(empty) - Complex(1.0)) < 1e-14);
    Eigen::MatrixXcd rect(2, 3);
    CHECK_THROWS(permanent(rect));
    CHECK_THROWS(permanent(Eigen::MatrixXcd::Identity(5, 5), 4));
}

TEST_CASE("permanent matches the factorial oracle") {
    std::mt19937_64 rng(101);
    std::normal_distribution<double> g;
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 8; ++trial) {
            Eigen::MatrixXcd a(n, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
            }
            const Complex expect = oracles::permanent_naive(a);
            const double scale = std::max(1.0, std::abs(expect));
            CHECK(std::abs(permanent(a) - expect) / scale < 1e-10);
            CHECK(std::abs(permanent_ryser(a) - expect) / scale < 1e-10);
        }
    }
}

TEST_CASE("two photons bunch at a 50:50 splitter") {
    const Matrix u = bs5050(2, 0, 1);
    const PureState out = evolve(PureState::ket(ModeOccupation({1, 1})), u);
    CHECK(std::abs(out.amplitude(ModeOccupation({1, 1}))) < 1e-14);
    CHECK(std::abs(out.amplitude(ModeOccupation({2, 0}))) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(out.amplitude(ModeOccupation({0, 2}))) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(out.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("postselected Bell generator front end gives four equal terms") {
    // |1010⟩ through the pairwise splitters and the inner-mode swap; the four
    // surviving terms all carry magnitude 1/2, as unitarity requires.
    Circuit c;
    c.modes = 4;
    c.bs(0, 1, kPi / 4.0).bs(2, 3, kPi / 4.0).swap(1, 2);
    const PureState out = evolve(PureState::ket(ModeOccupation({1, 0, 1, 0})), compile(c));
    for (auto occ : {ModeOccupation({1, 1, 0, 0}), ModeOccupation({1, 0, 0, 1}),
                     ModeOccupation({0, 1, 1, 0}), ModeOccupation({0, 0, 1, 1})}) {
        CHECK(std::abs(out.amplitude(occ)) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(out.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single photon amplitudes are a column of U") {
    std::mt19937_64 rng(55);
    const Matrix u = oracles::random_unitary(4, rng);
    const PureState out = evolve(PureState::ket(ModeOccupation({1, 0, 0, 0})), u);
    for (int j = 0; j < 4; ++j) {
        ModeOccupation occ = ModeOccupation::vacuum(4).with(j, 1);
        CHECK(std::abs(out.amplitude(occ) - u(j, 0)) < 1e-12);
    }
}

TEST_CASE("evolve agrees with the creation-operator oracle") {
    std::mt19937_64 rng(20240302);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 5);  // up to 6 modes
        const int n = 1 + static_cast<int>(rng() % 4);  // up to 4 photons
        const Matrix u = oracles::random_unitary(m, rng);
        // random sparse input state over 2 occupations
        auto occs = enumerate_occupations(n, m);
        std::uniform_int_distribution<std::size_t> pick(0, occs.size() - 1);
        PureState::TermMap t;
        t[occs[pick(rng)]] = Complex(0.8, -0.1);
        t[occs[pick(rng)]] += Complex(-0.2, 0.5);
        const PureState in(m, t);
        const PureState got = evolve(in, u);
        const PureState want = oracles::evolve_bruteforce(in, u);
        double max_dev = 0.0;
        for (const auto& [occ, amp] : want.terms()) {
            max_dev = std::max(max_dev, std::abs(amp - got.amplitude(occ)));
        }
        for (const auto& [occ, amp] : got.terms()) {
            max_dev = std::max(max_dev, std::abs(amp - want.amplitude(occ)));
        }
        CHECK(max_dev < 1e-10);
        CHECK(got.norm2() == doctest::Approx(in.norm2()).epsilon(1e-10));
    }
}

TEST_CASE("evolve preserves photon number and inverts under U†") {
    std::mt19937_64 rng(20240303);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 3);
        const Matrix u = oracles::random_unitary(m, rng);
        auto occs = enumerate_occupations(3, m);
        const PureState in = PureState::ket(occs[rng() % occs.size()]);
        const PureState out = evolve(in, u);
        for (const auto& [occ, amp] : out.terms()) {
            (void)amp;
            CHECK(occ.total() == 3);
        }
        const PureState back = evolve(out, Matrix(u.adjoint()));
        for (const auto& [occ, amp] : in.terms()) {
            CHECK(std::abs(back.amplitude(occ) - amp) < 1e-9);
        }
        CHECK(back.norm2() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("evolve respects caps") {
    Matrix u = Matrix::Identity(2, 2);
    EvolveOptions opts;
    opts.max_photons = 3;
    CHECK_THROWS(evolve(PureState::ket(ModeOccupation({2, 2})), u, opts));
    EvolveOptions opts2;
    opts2.max_modes = 3;
    CHECK_THROWS(evolve(PureState::ket(ModeOccupation({1, 0, 0, 0})), Matrix::Identity(4, 4), opts2));
}

TEST_CASE("evolve is deterministic across thread counts") {
    std::mt19937_64 rng(777);
    const Matrix u = oracles::random_unitary(6, rng);
    const PureState in = PureState::ket(ModeOccupation({1, 1, 1, 1, 0, 0}));
    EvolveOptions serial;
    EvolveOptions parallel;
    parallel.threads = 4;
    const PureState a = evolve(in, u, serial);
    const PureState b = evolve(in, u, parallel);
    REQUIRE(a.term_count() == b.term_count());
    for (const auto& [occ, amp] : a.terms()) {
        CHECK(b.amplitude(occ) == amp);  // bit-identical per output
    }
}

TEST_CASE("labeled evolution: HOM dip against the analytic oracle") {
    const Matrix u = bs5050(2, 0, 1);
    auto coincidence = [&](double good1, double good2) {
        LabeledInput in;
        in.photons.push_back({0, {Complex(good1), Complex(std::sqrt(1.0 - good1 * good1)), 0.0}});
        in.photons.push_back({1, {Complex(good2), 0.0, Complex(std::sqrt(1.0 - good2 * good2))}});
        const auto ens = evolve_labeled(in, u);
        return ens.probability(ModeOccupation({1, 1}));
    };
    // identical photons: no coincidences
    CHECK(coincidence(1.0, 1.0) == doctest::Approx(0.0));
    // orthogonal internal states: classical 1/2
    CHECK(coincidence(0.0, 1.0) == doctest::Approx(0.5));
    // overlap ⟨φ1|φ2⟩ = √V ⇒ coincidence (1−V)/2 (2-photon analytic oracle)
    for (double v : {0.25, 0.5, 0.81}) {
        const double c = std::sqrt(std::sqrt(v));  // per-photon reference amplitude v^{1/4}
        CHECK(coincidence(c, c) == doctest::Approx((1.0 - v) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("labeled evolution with identical labels equals plain evolve") {
    std::mt19937_64 rng(31);
    const Matrix u = oracles::random_unitary(3, rng);
    LabeledInput in;
    in.photons.push_back({0, {Complex(1.0)}});
    in.photons.push_back({1, {Complex(1.0)}});
    in.photons.push_back({1, {Complex(1.0)}});
    const auto ens = evolve_labeled(in, u);
    REQUIRE(ens.components.size() == 1);
    CHECK(ens.components[0].bad_photons == 0);
    const PureState direct = evolve(PureState::ket(ModeOccupation({1, 2, 0})), u);
    for (const auto& [occ, amp] : direct.terms()) {
        CHECK(std::abs(ens.components[0].state.amplitude(occ) - amp) < 1e-12);
    }
}

TEST_CASE("labeled evolution rejects malformed internal states") {
    const Matrix u = Matrix::Identity(2, 2);
    LabeledInput shared_bad;
    shared_bad.photons.push_back({0, {Complex(0.6), Complex(0.8)}});
    shared_bad.photons.push_back({1, {Complex(0.6), Complex(0.8)}});  // same bad bit
    CHECK_THROWS(evolve_labeled(shared_bad, u));

    LabeledInput unnormalized;
    unnormalized.photons.push_back({0, {Complex(0.4)}});
    CHECK_THROWS(evolve_labeled(unnormalized, u));
}

TEST_CASE("labeled fidelity separates reference and bad sectors") {
    const Matrix u = bs5050(2, 0, 1);
    LabeledInput in;
    const double c = std::sqrt(0.9);
    in.photons.push_back({0, {Complex(c), Complex(std::sqrt(0.1)), 0.0}});
    in.photons.push_back({1, {Complex(c), 0.0, Complex(std::sqrt(0.1))}});
    const auto ens = evolve_labeled(in, u);
    PureState::TermMap t;
    t.emplace(ModeOccupation({2, 0}), Complex(0, 1.0 / std::sqrt(2.0)));
    t.emplace(ModeOccupation({0, 2}), Complex(0, 1.0 / std::sqrt(2.0)));
    const PureState bunched(2, t);
    // only the 0.81-weight reference branch overlaps the bunched target
    CHECK(labeled_fidelity(ens, bunched) == doctest::Approx(0.81).epsilon(1e-12));
}

TEST_CASE("ns gate check validates the optimal gate") {
    const Matrix u = optimal_ns_unitary();
    CHECK(verify_unitarity(u) < 1e-10);

    SUBCASE("vacuum component is untouched") {
        auto rep = ns_gate_check({1.0, 0.0, 0.0}, u);
        CHECK(rep.sign_flipped);
        CHECK(std::abs(rep.output[0]) == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("two-photon component flips sign") {
        auto rep = ns_gate_check({0.0, 0.0, 1.0}, u);
        CHECK(rep.sign_flipped);
        // conditional amplitude −γ/2
        CHECK(rep.output[2].real() == doctest::Approx(-0.5).epsilon(1e-10));
        CHECK(rep.success_prob == doctest::Approx(0.25).epsilon(1e-10));
    }
    SUBCASE("success probability is 1/4 on generic input") {
        const Complex a(0.5, 0.1), b(-0.3, 0.4), g(0.2, -0.6);
        const double n2 = std::norm(a) + std::norm(b) + std::norm(g);
        const double s = 1.0 / std::sqrt(n2);
        auto rep = ns_gate_check({a * s, b * s, g * s}, u);
        CHECK(rep.sign_flipped);
        CHECK(rep.success_prob == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("a non-ns unitary is flagged") {
        auto rep = ns_gate_check({0.5, 0.5, std::sqrt(0.5)}, dft_matrix(3));
        CHECK_FALSE(rep.sign_flipped);
    }
}
