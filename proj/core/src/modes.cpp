#include "bosonstar/modes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

ModeSet::ModeSet(std::vector<std::array<int, 3>> triples, double L) : triples_(std::move(triples)), L_(L) {
    if (!(L > 0.0)) throw parameter_error("ModeSet: box length must be positive");
    if (triples_.empty()) throw parameter_error("ModeSet: empty mode list");
    const double unit = kTwoPi / L_;
    dispersion_.reserve(triples_.size());
    for (int a = 0; a < static_cast<int>(triples_.size()); ++a) {
        const auto& m = triples_[a];
        const double k2 = unit * unit * (static_cast<double>(m[0]) * m[0] + static_cast<double>(m[1]) * m[1] +
                                         static_cast<double>(m[2]) * m[2]);
        dispersion_.push_back(std::sqrt(1.0 + k2));
        if (!lookup_.emplace(m, a).second)
            throw parameter_error("ModeSet: duplicate mode triple");
    }
}

ModeSet ModeSet::ball(int radius, double L) {
    if (radius < 0) throw parameter_error("ModeSet::ball: radius must be >= 0");
    std::vector<std::array<int, 3>> triples;
    const long r2 = static_cast<long>(radius) * radius;
    for (int x = -radius; x <= radius; ++x)
        for (int y = -radius; y <= radius; ++y)
            for (int z = -radius; z <= radius; ++z)
                if (static_cast<long>(x) * x + static_cast<long>(y) * y + static_cast<long>(z) * z <= r2)
                    triples.push_back({x, y, z});
    // Deterministic order: by shell, then lexicographic.
    std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
        const long na = static_cast<long>(a[0]) * a[0] + static_cast<long>(a[1]) * a[1] + static_cast<long>(a[2]) * a[2];
        const long nb = static_cast<long>(b[0]) * b[0] + static_cast<long>(b[1]) * b[1] + static_cast<long>(b[2]) * b[2];
        if (na != nb) return na < nb;
        return a < b;
    });
    return ModeSet(std::move(triples), L);
}

ModeSet ModeSet::from_triples(std::vector<std::array<int, 3>> triples, double L) {
    return ModeSet(std::move(triples), L);
}

int ModeSet::find(const std::array<int, 3>& m) const {
    auto it = lookup_.find(m);
    return it == lookup_.end() ? -1 : it->second;
}

} // namespace bosonstar
