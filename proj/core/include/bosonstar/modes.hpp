#pragma once

#include <array>
#include <map>
#include <vector>

namespace bosonstar {

// Finite set of plane-wave modes on the box of side L. Mode a carries the
// integer triple m_a, momentum k_a = (2*pi/L) m_a and relativistic dispersion
// eps_a = sqrt(1 + |k_a|^2).
class ModeSet {
  public:
    // All integer triples with |m|^2 <= radius^2. Contains m = 0 and is
    // closed under negation. radius 0 -> 1 mode, 1 -> 7, 2 -> 33.
    static ModeSet ball(int radius, double L);

    // Explicit list (test/toy sets; closure under negation is not enforced).
    static ModeSet from_triples(std::vector<std::array<int, 3>> triples, double L);

    int size() const { return static_cast<int>(triples_.size()); }
    double L() const { return L_; }
    const std::array<int, 3>& triple(int a) const { return triples_[a]; }
    double dispersion(int a) const { return dispersion_[a]; }

    // Index of the mode with integer triple m, or -1 if absent.
    int find(const std::array<int, 3>& m) const;

  private:
    ModeSet(std::vector<std::array<int, 3>> triples, double L);

    std::vector<std::array<int, 3>> triples_;
    std::vector<double> dispersion_;
    std::map<std::array<int, 3>, int> lookup_;
    double L_;
};

} // namespace bosonstar
