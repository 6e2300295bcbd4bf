// Independent reference implementations used to freeze expected values.
// Everything here is deliberately naive and kept free of the library's
// production code paths (no permanent(), no evolve()).
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "heraldiq/occupation.hpp"
#include "heraldiq/state.hpp"

namespace oracles {

using Complex = std::complex<double>;

// O(n!) permutation-sum permanent.
inline Complex permanent_naive(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= a(i, perm[static_cast<std::size_t>(i)]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Brute-force evolution by expanding the creation-operator polynomial
//   ∏_i ( Σ_j U_ji a†_j )^{S_i} |vac⟩
// term by term, with explicit bosonic normalization factors.
inline heraldiq::PureState evolve_bruteforce(const heraldiq::PureState& s,
                                             const Eigen::MatrixXcd& u) {
    using heraldiq::ModeOccupation;
    using heraldiq::PureState;
    const int m = s.modes();
    PureState::TermMap out;
    for (const auto& [occ, amp] : s.terms()) {
        // polynomial over occupations: start with the vacuum monomial
        std::map<ModeOccupation, Complex> poly;
        poly.emplace(ModeOccupation::vacuum(m), 1.0);
        for (int mode = 0; mode < m; ++mode) {
            for (int k = 0; k < occ[mode]; ++k) {
                std::map<ModeOccupation, Complex> next;
                for (const auto& [mono, coeff] : poly) {
                    for (int j = 0; j < m; ++j) {
                        if (u(j, mode) == Complex(0.0)) continue;
                        auto counts = mono.counts();
                        ++counts[static_cast<std::size_t>(j)];
                        next[ModeOccupation(counts)] += coeff * u(j, mode);
                    }
                }
                poly = std::move(next);
            }
        }
        // |n1,n2,...⟩ = ∏ (a†)^{n}/√(n!) |vac⟩: monomial coefficient c contributes
        // amplitude c·√(∏T_j!) to |T⟩; the input normalization divides √(∏S_i!).
        double in_fact = 1.0;
        for (int mode = 0; mode < m; ++mode) {
            for (int k = 2; k <= occ[mode]; ++k) in_fact *= k;
        }
        for (const auto& [mono, coeff] : poly) {
            double out_fact = 1.0;
            for (int j = 0; j < m; ++j) {
                for (int k = 2; k <= mono[j]; ++k) out_fact *= k;
            }
            out[mono] += amp * coeff * std::sqrt(out_fact / in_fact);
        }
    }
    return heraldiq::PureState(m, std::move(out));
}

// Haar-ish random unitary via QR of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : 1.0;
    }
    return q;
}

// Binomial loss branch weights: P(k of n survive at transmissivity eta).
inline std::vector<double> binomial_survival(int n, double eta) {
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        double c = 1.0;
        for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
        p[static_cast<std::size_t>(k)] = c * std::pow(eta, k) * std::pow(1.0 - eta, n - k);
    }
    return p;
}

// Distribution of distinct branches hit when k photons are assigned uniformly
// and independently to b fan-out branches.
inline std::map<int, double> fanout_clicks_naive(int k, int b) {
    std::map<int, double> dist;
    const double p_each = std::pow(1.0 / b, k);
    std::vector<int> assign(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int idx) -> void {
        if (idx == k) {
            std::vector<bool> hit(static_cast<std::size_t>(b), false);
            for (int a : assign) hit[static_cast<std::size_t>(a)] = true;
            int clicks = 0;
            for (bool h : hit) clicks += h ? 1 : 0;
            dist[clicks] += p_each;
            return;
        }
        for (int a = 0; a < b; ++a) {
            assign[static_cast<std::size_t>(idx)] = a;
            self(self, idx + 1);
        }
    };
    if (k == 0) {
        dist[0] = 1.0;
    } else {
        rec(rec, 0);
    }
    return dist;
}

}  // namespace oracles
