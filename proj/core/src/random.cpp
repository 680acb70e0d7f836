#include "bosonstar/random.hpp"

#include <cmath>

namespace bosonstar {

Rng Rng::for_purpose(std::uint64_t seed, std::string_view purpose) {
    // FNV-1a over the purpose tag, mixed into the base seed.
    std::uint64_t h = 14695981039346656037ull;
    for (char c : purpose) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return Rng(seed ^ h);
}

double Rng::uniform() {
    // 53-bit mantissa from the top bits of one 64-bit draw.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

} // namespace bosonstar
