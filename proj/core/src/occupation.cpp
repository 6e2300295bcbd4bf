#include "heraldiq/occupation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace heraldiq {

ModeOccupation::ModeOccupation(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        if (c < 0) throw std::invalid_argument("ModeOccupation: negative photon count");
    }
}

ModeOccupation::ModeOccupation(std::initializer_list<int> counts)
    : ModeOccupation(std::vector<int>(counts)) {}

ModeOccupation ModeOccupation::vacuum(int m) {
    if (m < 0) throw std::invalid_argument("ModeOccupation: negative mode count");
    return ModeOccupation(std::vector<int>(static_cast<std::size_t>(m), 0));
}

int ModeOccupation::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
}

ModeOccupation ModeOccupation::with(int mode, int count) const {
    auto c = counts_;
    c.at(static_cast<std::size_t>(mode)) = count;
    return ModeOccupation(std::move(c));
}

ModeOccupation ModeOccupation::restrict_to(const std::vector<int>& modes) const {
    std::vector<int> c;
    c.reserve(modes.size());
    for (int m : modes) c.push_back(counts_.at(static_cast<std::size_t>(m)));
    return ModeOccupation(std::move(c));
}

ModeOccupation ModeOccupation::append(const ModeOccupation& other) const {
    auto c = counts_;
    c.insert(c.end(), other.counts_.begin(), other.counts_.end());
    return ModeOccupation(std::move(c));
}

bool ModeOccupation::operator<(const ModeOccupation& o) const {
    if (counts_.size() != o.counts_.size()) return counts_.size() < o.counts_.size();
    return counts_ < o.counts_;
}

std::string ModeOccupation::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) os << ',';
        os << counts_[i];
    }
    os << ')';
    return os.str();
}

std::vector<ModeOccupation> enumerate_occupations(int n, int m) {
    if (m <= 0) {
        if (n == 0) return {ModeOccupation(std::vector<int>{})};
        return {};
    }
    std::vector<ModeOccupation> out;
    out.reserve(fock_dimension(n, m));
    std::vector<int> cur(static_cast<std::size_t>(m), 0);
    // recursive lexicographic enumeration, first mode takes the most photons first
    auto rec = [&](auto&& self, int mode, int left) -> void {
        if (mode == m - 1) {
            cur[static_cast<std::size_t>(mode)] = left;
            out.emplace_back(cur);
            return;
        }
        for (int k = left; k >= 0; --k) {
            cur[static_cast<std::size_t>(mode)] = k;
            self(self, mode + 1, left - k);
        }
    };
    rec(rec, 0, n);
    return out;
}

std::uint64_t fock_dimension(int n, int m) {
    if (m <= 0) return n == 0 ? 1 : 0;
    // C(n+m-1, n)
    std::uint64_t r = 1;
    for (int i = 1; i <= n; ++i) {
        r = r * static_cast<std::uint64_t>(m - 1 + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

}  // namespace heraldiq
