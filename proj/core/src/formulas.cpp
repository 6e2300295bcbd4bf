#include "heraldiq/formulas.hpp"

#include <cmath>
#include <stdexcept>

namespace heraldiq {

namespace {
void need(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}
}  // namespace

Rational sms_bell_success(int d) {
    need(d >= 2, "sms_bell_success: d >= 2");
    return Rational(d * Rational::ipow(2, d - 1), Rational::ipow(3, 2 * d - 1));
}

Rational sms_bell_bled_success(int d) {
    need(d >= 2, "sms_bell_bled_success: d >= 2");
    return Rational(d * (2 + Rational::ipow(2, d - 1)), Rational::ipow(3, d));
}

Rational sms_ghz_success(int d) {
    need(d >= 2, "sms_ghz_success: d >= 2");
    return Rational(d * Rational::ipow(3, d - 1), Rational::ipow(2, 5 * d - 3));
}

Rational sms_ghz_bled_success(int d) {
    need(d >= 2, "sms_ghz_bled_success: d >= 2");
    return Rational(d * Rational::ipow(3, d - 1), Rational::ipow(2, 3 * d - 1));
}

Rational chin_ghz_success(int n, bool feed_forward) {
    need(n >= 2, "chin_ghz_success: N >= 2");
    return Rational::pow2(feed_forward ? -(2 * n - 1) : -(2 * n));
}

Rational bhatti_ghz_even_success(int n_even) {
    need(n_even >= 2 && n_even % 2 == 0, "bhatti_ghz_even_success: even N >= 2");
    return Rational::pow2(-(2 * n_even - 1));
}

Rational bhatti_ghz_odd_success(int n_odd) {
    need(n_odd >= 3 && n_odd % 2 == 1, "bhatti_ghz_odd_success: odd N >= 3");
    return Rational::pow2(-(2 * n_odd));
}

Rational pairwise_cell_ghz_success(int n, bool bled) {
    need(n >= 2, "pairwise_cell_ghz_success: n >= 2");
    return Rational::pow2(bled ? -(n - 1) : -(2 * n - 1));
}

Rational w_state_success(int n, bool feed_forward) {
    need(n >= 2, "w_state_success: N >= 2");
    if (feed_forward) return Rational::pow2(-(2 * n));
    return Rational(1, n * Rational::ipow(2, 2 * n + 1));
}

double dft_ghz_25_success() { return 1e-10; }

Rational bsm_success(bool boosted) { return boosted ? Rational(3, 4) : Rational(1, 2); }

double multiplex(double p_single, long long attempts) {
    if (p_single < 0.0 || p_single > 1.0) {
        throw std::invalid_argument("multiplex: p outside [0,1]");
    }
    if (attempts < 1) throw std::invalid_argument("multiplex: need at least one attempt");
    return 1.0 - std::pow(1.0 - p_single, static_cast<double>(attempts));
}

}  // namespace heraldiq
