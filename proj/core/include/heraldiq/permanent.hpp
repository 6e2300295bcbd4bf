#pragma once

#include <Eigen/Dense>
#include <complex>

namespace heraldiq {

inline constexpr int kDefaultMaxPermanentSize = 12;

/// Per(A) via Glynn's formula with Gray-coded sign flips, O(2^n · n).
/// Throws for non-square input or n > max_n.
std::complex<double> permanent(const Eigen::MatrixXcd& a, int max_n = kDefaultMaxPermanentSize);

/// Ryser's inclusion-exclusion formula, Gray-coded. Same contract.
std::complex<double> permanent_ryser(const Eigen::MatrixXcd& a,
                                     int max_n = kDefaultMaxPermanentSize);

}  // namespace heraldiq
