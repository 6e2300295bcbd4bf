#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "heraldiq/detector.hpp"
#include "heraldiq/state.hpp"

namespace heraldiq {

/// Two-mode squeezed vacuum source. Fock weights follow
/// sech²|ξ|·tanh^{2k}|ξ| and the pump phase enters as e^{ikθ}.
struct TmsvSource {
    double squeeze = 0.0;    // |ξ|
    double pump_phase = 0.0; // θ
    int n_max = 10;          // truncation (pairs)
};

struct TmsvState {
    PureState state;         // two modes (signal, idler)
    double truncation_error; // 1 − norm²
};

TmsvState tmsv_state(const TmsvSource& src);

/// Joint spectral amplitude on a discretized (signal, idler) frequency grid,
/// normalized to unit Frobenius norm.
struct JsaGrid {
    Eigen::MatrixXcd amplitude;
    std::vector<double> signal_axis;
    std::vector<double> idler_axis;

    JsaGrid normalized() const;
};

struct SourceMetrics {
    double schmidt_number = 1.0; // K
    double purity = 1.0;         // P = 1/K
    double g2_unheralded = 2.0;  // 1 + 1/K
};

/// Schmidt pipeline: singular values λ_i (Σλ² = 1), K = 1/Σλ⁴, P = 1/K,
/// g2u = 1 + 1/K.
SourceMetrics schmidt_metrics(const JsaGrid& jsa);

/// Purity estimate from intensity-only data (entrywise √ of |JSA|², then the
/// Schmidt pipeline). Phase correlations are invisible to the JSI, so this
/// can only overestimate the true purity; report it as a bound.
double jsi_purity_bound(const Eigen::MatrixXd& jsi);

/// Double-Gaussian JSA with a correlation parameter rho in (−1, 1); rho = 0
/// is a rank-1 product. An optional quadratic joint spectral phase
/// phase_corr·ω_s·ω_i leaves the JSI untouched while degrading the purity.
JsaGrid gaussian_jsa(int bins, double rho, double phase_corr = 0.0, double width = 1.0);

/// CSV I/O: header row "signal,idler,re,im", one line per grid entry.
JsaGrid read_jsa_csv(std::istream& in);
void write_jsa_csv(std::ostream& out, const JsaGrid& jsa);

struct HeraldedSingle {
    double herald_prob = 0.0;
    /// Signal-mode ensemble conditioned on the herald outcome "1",
    /// component states normalized and weighted by probability.
    StateEnsemble signal;
};

/// Heralds a single photon off a TMSV source by detecting the idler mode;
/// the detector model decides how multi-pair terms contaminate the signal.
HeraldedSingle herald_single(const TmsvSource& src, const DetectorModel& det);

/// |⟨φ1|φ2⟩|² of two pure internal states.
double hom_visibility(const std::vector<Complex>& internal1,
                      const std::vector<Complex>& internal2);

/// ⟨n(n−1)⟩ / ⟨n⟩² over the photon-number distribution of a single-mode
/// ensemble.
double g2_heralded(const StateEnsemble& single_mode);

}  // namespace heraldiq
