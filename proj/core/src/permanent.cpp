#include "heraldiq/permanent.hpp"

#include <stdexcept>
#include <vector>

namespace heraldiq {

namespace {

using Complex = std::complex<double>;

void check(const Eigen::MatrixXcd& a, int max_n) {
    if (a.rows() != a.cols()) throw std::invalid_argument("permanent: matrix must be square");
    if (a.rows() > max_n) {
        throw std::domain_error("permanent: size " + std::to_string(a.rows()) +
                                " exceeds configured maximum " + std::to_string(max_n));
    }
}

}  // namespace

Complex permanent(const Eigen::MatrixXcd& a, int max_n) {
    check(a, max_n);
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    if (n == 1) return a(0, 0);

    // Glynn: Per(A) = 2^{1-n} Σ_δ (∏δ_i) ∏_j Σ_i δ_i A_ij with δ_1 fixed to +1.
    std::vector<Complex> col(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (int i = 0; i < n; ++i) s += a(i, j);
        col[static_cast<std::size_t>(j)] = s;
    }
    Complex total = 0.0;
    double sign = 1.0;
    {
        Complex prod = 1.0;
        for (int j = 0; j < n; ++j) prod *= col[static_cast<std::size_t>(j)];
        total += prod;
    }
    std::vector<int> delta(static_cast<std::size_t>(n), 1);
    const std::uint64_t steps = 1ull << (n - 1);
    for (std::uint64_t g = 1; g < steps; ++g) {
        // index of the bit flipped by the Gray code, offset past the fixed δ_1
        const int bit = __builtin_ctzll(g) + 1;
        const double flip = delta[static_cast<std::size_t>(bit)] > 0 ? -2.0 : 2.0;
        delta[static_cast<std::size_t>(bit)] = -delta[static_cast<std::size_t>(bit)];
        for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] += flip * a(bit, j);
        sign = -sign;
        Complex prod = 1.0;
        for (int j = 0; j < n; ++j) prod *= col[static_cast<std::size_t>(j)];
        total += sign * prod;
    }
    return total / static_cast<double>(1ull << (n - 1));
}

Complex permanent_ryser(const Eigen::MatrixXcd& a, int max_n) {
    check(a, max_n);
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    if (n == 1) return a(0, 0);

    // Ryser: Per(A) = (-1)^n Σ_{S≠∅} (-1)^{|S|} ∏_j Σ_{i∈S} A_ij, Gray-coded over S.
    std::vector<Complex> col(static_cast<std::size_t>(n), 0.0);
    Complex total = 0.0;
    std::uint64_t gray = 0;
    int popcount = 0;
    const std::uint64_t steps = 1ull << n;
    for (std::uint64_t g = 1; g < steps; ++g) {
        const std::uint64_t next = g ^ (g >> 1);
        const std::uint64_t diff = next ^ gray;
        const int bit = __builtin_ctzll(diff);
        const bool added = (next & diff) != 0;
        popcount += added ? 1 : -1;
        const double f = added ? 1.0 : -1.0;
        for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] += f * a(bit, j);
        gray = next;
        Complex prod = 1.0;
        for (int j = 0; j < n; ++j) prod *= col[static_cast<std::size_t>(j)];
        total += (popcount % 2 == 0 ? 1.0 : -1.0) * prod;
    }
    return (n % 2 == 0 ? 1.0 : -1.0) * total;
}

}  // namespace heraldiq
