#include "bosonstar/spectral_ops.hpp"

#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

SpectralField sobolev_apply(const SpectralField& phi, double r) {
    if (!(r >= -2.0 && r <= 2.0))
        throw parameter_error("sobolev_apply: order r must lie in [-2, 2], got r=" + std::to_string(r));
    phi.check_finite("sobolev_apply");
    const Grid3& g = phi.grid();
    std::vector<cd> out = phi.spectrum();
    const int n = g.n();
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                out[g.index(x, y, z)] *= std::pow(1.0 + g.k_squared(x, y, z), r);
    return SpectralField::from_spectrum(g, std::move(out));
}

namespace {

// (V * |phi|^2) without the coupling factor.
RealField bare_convolution(const SpectralField& phi, const CoulombKernel& kernel) {
    const Grid3& g = phi.grid();
    if (kernel.grid() != g)
        throw parameter_error("hartree_potential: kernel grid (n=" + std::to_string(kernel.grid().n()) +
                              ") does not match field grid (n=" + std::to_string(g.n()) + ")");
    std::vector<double> rho = density(phi);
    std::vector<cd> rho_c(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho_c[i] = cd(rho[i], 0.0);
    std::vector<cd> rho_hat = detail::dft_forward(g, rho_c);
    const std::vector<double>& w = kernel.multiplier();
    for (std::size_t i = 0; i < rho_hat.size(); ++i) rho_hat[i] *= w[i];
    std::vector<cd> pot = detail::dft_backward(g, rho_hat);

    // Result must be real up to round-off; verify and project.
    double max_abs = 0.0, max_imag = 0.0;
    for (const cd& v : pot) {
        max_abs = std::max(max_abs, std::abs(v));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    if (max_abs > 0.0 && max_imag > 1e-8 * max_abs)
        throw invalid_state_error("hartree_potential: imaginary residue " +
                                  std::to_string(max_imag / max_abs) + " exceeds 1e-8");
    RealField out{g, std::vector<double>(pot.size())};
    for (std::size_t i = 0; i < pot.size(); ++i) out.values[i] = pot[i].real();
    return out;
}

} // namespace

RealField hartree_potential(const SpectralField& phi, const CoulombKernel& kernel, double lambda) {
    phi.check_finite("hartree_potential");
    RealField out = bare_convolution(phi, kernel);
    for (double& v : out.values) v *= lambda;
    return out;
}

EnergyBreakdown energy(const SpectralField& phi, const CoulombKernel& kernel, double lambda) {
    phi.check_finite("energy");
    const Grid3& g = phi.grid();
    const std::vector<cd>& hat = phi.spectrum();
    const int n = g.n();
    double kinetic = 0.0;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                kinetic += std::sqrt(1.0 + g.k_squared(x, y, z)) * std::norm(hat[g.index(x, y, z)]);
    kinetic /= g.volume();

    const RealField pot = bare_convolution(phi, kernel);
    const std::vector<double> rho = density(phi);
    double coulomb = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) coulomb += pot.values[i] * rho[i];
    coulomb *= g.cell_volume();

    EnergyBreakdown out;
    out.kinetic = kinetic;
    out.coulomb = coulomb;
    out.total = kinetic + 0.5 * lambda * coulomb;
    return out;
}

SpectralField smooth_kappa(const SpectralField& phi, double kappa, double N) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw parameter_error("smooth_kappa: kappa must be >= 0, got " + std::to_string(kappa));
    if (!(N >= 1.0) || !std::isfinite(N))
        throw parameter_error("smooth_kappa: N must be >= 1, got " + std::to_string(N));
    phi.check_finite("smooth_kappa");
    const Grid3& g = phi.grid();
    std::vector<cd> out = phi.spectrum();
    const int n = g.n();
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const double kk = std::sqrt(g.k_squared(x, y, z));
                out[g.index(x, y, z)] *= std::exp(-kappa * kk / N);
            }
    return SpectralField::from_spectrum(g, std::move(out));
}

double field_norm(const SpectralField& phi, NormKind kind) {
    phi.check_finite("field_norm");
    const Grid3& g = phi.grid();
    const std::vector<cd>& hat = phi.spectrum();
    const int n = g.n();
    double acc = 0.0;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                double w = 1.0;
                if (kind == NormKind::Hhalf)
                    w = std::sqrt(1.0 + g.k_squared(x, y, z));
                else if (kind == NormKind::H1)
                    w = 1.0 + g.k_squared(x, y, z);
                acc += w * std::norm(hat[g.index(x, y, z)]);
            }
    return std::sqrt(acc / g.volume());
}

cd inner_product(const SpectralField& phi, const SpectralField& psi) {
    if (phi.grid() != psi.grid()) throw parameter_error("inner_product: grid mismatch");
    const std::vector<cd>& a = phi.values();
    const std::vector<cd>& b = psi.values();
    cd acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc * phi.grid().cell_volume();
}

std::vector<double> density(const SpectralField& phi) {
    const std::vector<cd>& v = phi.values();
    std::vector<double> rho(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rho[i] = std::norm(v[i]);
    return rho;
}

double homogeneous_half_energy(const SpectralField& phi) {
    const Grid3& g = phi.grid();
    const std::vector<cd>& hat = phi.spectrum();
    const int n = g.n();
    double acc = 0.0;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                acc += std::sqrt(g.k_squared(x, y, z)) * std::norm(hat[g.index(x, y, z)]);
    return acc / g.volume();
}

double spectral_tail_fraction(const SpectralField& phi, double frac) {
    const Grid3& g = phi.grid();
    const std::vector<cd>& hat = phi.spectrum();
    const int n = g.n();
    const int cut = static_cast<int>(frac * (n / 2));
    double total = 0.0, tail = 0.0;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const double p = std::norm(hat[g.index(x, y, z)]);
                total += p;
                const int mx = std::abs(g.signed_mode(x));
                const int my = std::abs(g.signed_mode(y));
                const int mz = std::abs(g.signed_mode(z));
                if (std::max(mx, std::max(my, mz)) > cut) tail += p;
            }
    return total > 0.0 ? tail / total : 0.0;
}

} // namespace bosonstar
