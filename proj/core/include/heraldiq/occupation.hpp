#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace heraldiq {

/// Photon counts per optical mode; the Fock basis label.
/// Ordered lexicographically so that sparse maps over occupations iterate
/// deterministically.
class ModeOccupation {
public:
    ModeOccupation() = default;
    explicit ModeOccupation(std::vector<int> counts);
    ModeOccupation(std::initializer_list<int> counts);

    /// Vacuum over m modes.
    static ModeOccupation vacuum(int m);

    int modes() const { return static_cast<int>(counts_.size()); }
    int total() const;
    int operator[](int mode) const { return counts_.at(static_cast<std::size_t>(mode)); }
    const std::vector<int>& counts() const { return counts_; }

    ModeOccupation with(int mode, int count) const;
    /// Occupation restricted to the given modes, in the given order.
    ModeOccupation restrict_to(const std::vector<int>& modes) const;
    /// Concatenation (this ⊗ other).
    ModeOccupation append(const ModeOccupation& other) const;

    bool operator==(const ModeOccupation& o) const { return counts_ == o.counts_; }
    bool operator!=(const ModeOccupation& o) const { return counts_ != o.counts_; }
    bool operator<(const ModeOccupation& o) const;

    std::string str() const;

private:
    std::vector<int> counts_;
};

/// All occupations of n photons over m modes, lexicographically descending
/// from (n,0,...,0). Size C(n+m-1, n).
std::vector<ModeOccupation> enumerate_occupations(int n, int m);

/// Number of occupations of n photons over m modes.
std::uint64_t fock_dimension(int n, int m);

}  // namespace heraldiq
