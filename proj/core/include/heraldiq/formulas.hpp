#pragma once

#include "heraldiq/rational.hpp"

namespace heraldiq {

// Closed-form success probabilities of the published generation schemes that
// are too large to simulate here, plus the small ones used as cross-checks.
// All exact rationals unless noted.

/// d-dimensional Bell generation from 3d photons over chained symmetric
/// multiports: d·2^{d−1} / 3^{2d−1}. d = 2 reproduces the 6P6M value 4/27.
Rational sms_bell_success(int d);
/// Same scheme with bleeding: d·(2 + 2^{d−1}) / 3^d.
Rational sms_bell_bled_success(int d);

/// d-dimensional N=3 GHZ from 4d photons over symmetric multiports:
/// d·3^{d−1} / 2^{5d−3}; bled variant d·3^{d−1} / 2^{3d−1}.
Rational sms_ghz_success(int d);
Rational sms_ghz_bled_success(int d);

/// N-partite qubit GHZ via boson-subtraction circuits (Chin et al.):
/// 1/2^{2N} without feed-forward, 1/2^{2N−1} with.
Rational chin_ghz_success(int n, bool feed_forward);

/// N-photon qubit GHZ over 4-mode symmetric multiports (Bhatti/Barz): the
/// even-N formula (1/2)^{2Ne−1} and the odd-N formula (1/2)^{2No}. Both are
/// recorded; tabulated comparisons at N = 3 use the odd form (1/64).
Rational bhatti_ghz_even_success(int n_even);
Rational bhatti_ghz_odd_success(int n_odd);

/// N-photon qubit GHZ from 2N photons via per-pair interferometer cells
/// (Bartolucci et al.): 1/2^{2n−1}, bled 1/2^{n−1}.
Rational pairwise_cell_ghz_success(int n, bool bled);

/// N-photon W state via subtractor networks (Chin et al.):
/// 1/(N·2^{2N+1}) without feed-forward, 1/2^{2N} with.
Rational w_state_success(int n, bool feed_forward);

/// 3-photon GHZ from 25 photons on a 25-mode Fourier interferometer
/// (Paesani et al.): quoted order of magnitude only.
double dft_ghz_25_success();

/// Bell-state measurement success: 1/2 bare, 3/4 with a Bell-pair ancilla.
Rational bsm_success(bool boosted);

/// At-least-one success over N multiplexed attempts: 1 − (1−p)^N.
double multiplex(double p_single, long long attempts);

}  // namespace heraldiq
