#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bosonstar {

// Deterministic RNG utilities. std::mt19937_64 is fully specified by the
// standard; the distribution helpers below are hand-rolled (Box-Muller etc.)
// because std::normal_distribution is implementation-defined and would break
// byte-identical reruns across toolchains.

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derive an independent stream for a named purpose from a base seed, so
    // unrelated consumers of randomness do not perturb each other.
    static Rng for_purpose(std::uint64_t seed, std::string_view purpose);

    std::uint64_t raw() { return engine_(); }

    // Uniform in [0, 1).
    double uniform();
    // Uniform in [lo, hi).
    double uniform(double lo, double hi);
    // Standard normal via Box-Muller (one value per call, cached pair).
    double normal();

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace bosonstar
