#include "heraldiq/sources.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace heraldiq {

TmsvState tmsv_state(const TmsvSource& src) {
    if (src.squeeze < 0.0) throw std::invalid_argument("tmsv_state: |ξ| must be >= 0");
    if (src.n_max < 0) throw std::invalid_argument("tmsv_state: n_max must be >= 0");
    const double t = std::tanh(src.squeeze);
    const double sech = 1.0 / std::cosh(src.squeeze);
    PureState::TermMap terms;
    for (int k = 0; k <= src.n_max; ++k) {
        const Complex amp = sech * std::pow(t, k) * std::exp(Complex(0.0, k * src.pump_phase));
        terms.emplace(ModeOccupation({k, k}), amp);
    }
    PureState state(2, std::move(terms));
    return {state, 1.0 - state.norm2()};
}

JsaGrid JsaGrid::normalized() const {
    const double n = amplitude.norm();
    if (n <= 0.0) throw std::domain_error("JsaGrid: zero amplitude grid");
    JsaGrid out = *this;
    out.amplitude /= n;
    return out;
}

SourceMetrics schmidt_metrics(const JsaGrid& jsa) {
    const JsaGrid g = jsa.normalized();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(g.amplitude);
    const auto& sv = svd.singularValues();
    double sum4 = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) sum4 += std::pow(sv(i), 4);
    SourceMetrics m;
    m.schmidt_number = 1.0 / sum4;
    m.purity = sum4;
    m.g2_unheralded = 1.0 + sum4;
    return m;
}

double jsi_purity_bound(const Eigen::MatrixXd& jsi) {
    if ((jsi.array() < 0.0).any()) {
        throw std::invalid_argument("jsi_purity_bound: intensities must be non-negative");
    }
    JsaGrid phantom;
    phantom.amplitude = jsi.array().sqrt().matrix().cast<Complex>();
    return schmidt_metrics(phantom).purity;
}

JsaGrid gaussian_jsa(int bins, double rho, double phase_corr, double width) {
    if (bins < 2) throw std::invalid_argument("gaussian_jsa: need at least 2 bins");
    if (std::abs(rho) >= 1.0) throw std::invalid_argument("gaussian_jsa: |rho| must be < 1");
    JsaGrid g;
    g.amplitude.resize(bins, bins);
    g.signal_axis.resize(static_cast<std::size_t>(bins));
    g.idler_axis.resize(static_cast<std::size_t>(bins));
    const double span = 3.0 * width;
    for (int i = 0; i < bins; ++i) {
        const double w = -span + 2.0 * span * i / (bins - 1);
        g.signal_axis[static_cast<std::size_t>(i)] = w;
        g.idler_axis[static_cast<std::size_t>(i)] = w;
    }
    const double s2 = width * width;
    for (int i = 0; i < bins; ++i) {
        for (int j = 0; j < bins; ++j) {
            const double ws = g.signal_axis[static_cast<std::size_t>(i)];
            const double wi = g.idler_axis[static_cast<std::size_t>(j)];
            const double quad =
                (ws * ws - 2.0 * rho * ws * wi + wi * wi) / (2.0 * s2 * (1.0 - rho * rho));
            g.amplitude(i, j) = std::exp(-quad) * std::exp(Complex(0.0, phase_corr * ws * wi));
        }
    }
    return g.normalized();
}

JsaGrid read_jsa_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_jsa_csv: empty input");
    if (line.find("signal") == std::string::npos) {
        throw std::runtime_error("read_jsa_csv: missing header row");
    }
    std::map<double, std::size_t> sig_idx, idl_idx;
    struct Entry {
        double s, i, re, im;
    };
    std::vector<Entry> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        Entry e{};
        char comma;
        if (!(ss >> e.s >> comma >> e.i >> comma >> e.re >> comma >> e.im)) {
            throw std::runtime_error("read_jsa_csv: malformed line: " + line);
        }
        sig_idx.emplace(e.s, 0);
        idl_idx.emplace(e.i, 0);
        entries.push_back(e);
    }
    if (entries.empty()) throw std::runtime_error("read_jsa_csv: no grid entries");
    JsaGrid g;
    std::size_t k = 0;
    for (auto& [v, idx] : sig_idx) {
        idx = k++;
        g.signal_axis.push_back(v);
    }
    k = 0;
    for (auto& [v, idx] : idl_idx) {
        idx = k++;
        g.idler_axis.push_back(v);
    }
    g.amplitude = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(sig_idx.size()),
                                         static_cast<Eigen::Index>(idl_idx.size()));
    for (const auto& e : entries) {
        g.amplitude(static_cast<Eigen::Index>(sig_idx[e.s]),
                    static_cast<Eigen::Index>(idl_idx[e.i])) = Complex(e.re, e.im);
    }
    return g;
}

void write_jsa_csv(std::ostream& out, const JsaGrid& jsa) {
    out << "signal,idler,re,im\n";
    for (Eigen::Index i = 0; i < jsa.amplitude.rows(); ++i) {
        for (Eigen::Index j = 0; j < jsa.amplitude.cols(); ++j) {
            out << jsa.signal_axis.at(static_cast<std::size_t>(i)) << ','
                << jsa.idler_axis.at(static_cast<std::size_t>(j)) << ','
                << jsa.amplitude(i, j).real() << ',' << jsa.amplitude(i, j).imag() << '\n';
        }
    }
}

HeraldedSingle herald_single(const TmsvSource& src, const DetectorModel& det) {
    det.validate();
    const TmsvState tmsv = tmsv_state(src);
    HeraldedSingle out;
    // condition the idler (mode 1) on exactly one registered click/count
    for (const auto& [occ, amp] : tmsv.state.terms()) {
        const int pairs = occ[0];
        const auto clicks = det.click_distribution(pairs);
        const auto it = clicks.find(1);
        if (it == clicks.end() || it->second == 0.0) continue;
        const double p = std::norm(amp) * it->second;
        out.herald_prob += p;
        out.signal.add(p, PureState::ket(ModeOccupation({pairs})));
    }
    return out;
}

double hom_visibility(const std::vector<Complex>& internal1,
                      const std::vector<Complex>& internal2) {
    double n1 = 0.0, n2 = 0.0;
    Complex ov = 0.0;
    const std::size_t len = std::max(internal1.size(), internal2.size());
    for (std::size_t i = 0; i < len; ++i) {
        const Complex a = i < internal1.size() ? internal1[i] : Complex(0.0);
        const Complex b = i < internal2.size() ? internal2[i] : Complex(0.0);
        ov += std::conj(a) * b;
        n1 += std::norm(a);
        n2 += std::norm(b);
    }
    if (n1 <= 0.0 || n2 <= 0.0) {
        throw std::invalid_argument("hom_visibility: zero internal state");
    }
    return std::norm(ov) / (n1 * n2);
}

double g2_heralded(const StateEnsemble& single_mode) {
    const auto dist = single_mode.photon_number_distribution();
    double mean = 0.0;
    double pairs = 0.0;
    for (const auto& [n, p] : dist) {
        mean += p * n;
        pairs += p * n * (n - 1.0);
    }
    if (mean <= 0.0) return 0.0;
    return pairs / (mean * mean);
}

}  // namespace heraldiq
