#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace heraldiq {

/// Exact rational arithmetic for scheme success probabilities.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }
    explicit Rational(std::int64_t num) : num_(num), den_(1) {}

    static Rational pow2(int exponent) {
        if (exponent >= 0) return Rational(ipow(2, exponent), 1);
        return Rational(1, ipow(2, -exponent));
    }
    static std::int64_t ipow(std::int64_t base, int exp) {
        std::int64_t r = 1;
        for (int i = 0; i < exp; ++i) {
            if (r > (std::int64_t(1) << 62) / base) throw std::overflow_error("Rational: overflow");
            r *= base;
        }
        return r;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }
    Rational operator/(const Rational& o) const { return Rational(num_ * o.den_, den_ * o.num_); }
    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Best rational p/q with q <= max_den matching x within tol, if any
/// (continued-fraction expansion). Used for presenting simulated
/// probabilities next to their exact counterparts.
inline bool approximate_rational(double x, Rational& out, std::int64_t max_den = 1'000'000,
                                 double tol = 1e-9) {
    if (x < 0.0) return false;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    for (int iter = 0; iter < 64; ++iter) {
        const auto a = static_cast<std::int64_t>(frac);
        const std::int64_t p2 = a * p1 + p0;
        const std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - x) <= tol) {
            out = Rational(p1, q1);
            return true;
        }
        const double rem = frac - static_cast<double>(a);
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    return false;
}

}  // namespace heraldiq
