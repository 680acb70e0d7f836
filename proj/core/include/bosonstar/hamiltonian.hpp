#pragma once

#include <array>
#include <vector>

#include "bosonstar/fock_basis.hpp"
#include "bosonstar/modes.hpp"
#include "bosonstar/sparse_hermitian.hpp"

namespace bosonstar {

// Fourier multiplier W(q) of the pair potential, evaluated on integer
// momentum triples q = (2*pi/L) dm. W(0) = 0 in both variants.
class PairPotential {
  public:
    // W(q) = 4*pi/|q|^2.
    static PairPotential exact(double L);
    // Continuum multiplier of the length-a regularization 1/(|x| + a):
    //   W_a(q) = (4*pi/q^2) * (1 - s*f(s)),  s = a*q,
    // with f the sine auxiliary integral f(s) = integral_0^inf sin(t)/(t+s) dt.
    // The deficit s*f(s) grows monotonically from 0 to 1, so W_a increases to
    // the exact multiplier at every q as a -> 0.
    static PairPotential regularized(double L, double a);

    double L() const { return L_; }
    double regularization() const { return a_; }
    double w(const std::array<int, 3>& dm) const;

  private:
    PairPotential(double L, double a) : L_(L), a_(a) {}
    double L_;
    double a_; // 0 for the exact variant
};

// One scattering channel (a, b) -> (a_out, b_out) with momentum conservation
// m_a + m_b = m_aout + m_bout and weight w = W(k_aout - k_a).
struct InteractionChannel {
    int a, b, a_out, b_out;
    double w;
};

// Channels with all four modes inside the set. Quadruples whose outgoing
// momentum leaves the set are dropped symmetrically (same truncation in the
// Hamiltonian and in the mode-space mean-field equation) and counted.
struct InteractionTable {
    std::vector<InteractionChannel> channels;
    long dropped_quadruples = 0;
};

InteractionTable build_interaction_table(const ModeSet& modes, const PairPotential& potential);

struct HamiltonianBuild {
    SparseHermitian H;
    long dropped_quadruples = 0;
    std::size_t channels = 0;
};

// H = sum_a eps_a n_a + (lambda / 2N) (1/L^3) sum_channels W a+_{aout} a+_{bout} a_b a_a
// on the N-particle sector of the basis.
HamiltonianBuild build_hamiltonian(const FockBasis& basis, const ModeSet& modes,
                                   const PairPotential& potential, double lambda);

} // namespace bosonstar
