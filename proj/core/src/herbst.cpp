#include "bosonstar/herbst.hpp"

#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p1 = 0.0, p0 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = xi;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * xi * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
}

void require_real(const SpectralField& f) {
    double max_abs = 0.0, max_imag = 0.0;
    for (const cd& v : f.values()) {
        max_abs = std::max(max_abs, std::abs(v));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    if (max_imag > 1e-12 * std::max(1.0, max_abs))
        throw parameter_error("low-rank factors must be real-valued fields");
}

void validate_powers(double a, double alpha, double beta) {
    if (!(a > 0.0) || !(a < 3.0))
        throw parameter_error("power a must lie in (0, 3)");
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw parameter_error("powers alpha and beta must be strictly positive");
    if (std::abs(alpha + beta - 2.0 * a) > 1e-9)
        throw parameter_error("powers must satisfy alpha + beta = 2a");
}

double ratio_impl(const std::vector<double>& multiplier, const std::vector<double>& sigma,
                  const std::vector<SpectralField>& factors, double alpha, double beta) {
    const Grid3& grid = factors.front().grid();
    const std::size_t size = grid.size();
    const int rank = static_cast<int>(factors.size());
    const double inv_vol = 1.0 / grid.volume();
    const int n = grid.n();

    std::vector<double> wa(size), wb(size);
    {
        std::size_t i = 0;
        for (int z = 0; z < n; ++z)
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x, ++i) {
                    const double s2 = 1.0 + grid.k_squared(x, y, z);
                    wa[i] = std::pow(s2, alpha / 2.0);
                    wb[i] = std::pow(s2, beta / 2.0);
                }
    }

    double num = 0.0, den = 0.0;
    std::vector<cd> rho(size);
    for (int r = 0; r < rank; ++r) {
        for (int s = r; s < rank; ++s) {
            const double factor = (r == s ? 1.0 : 2.0) * sigma[r] * sigma[s];
            const std::vector<cd>& vr = factors[r].values();
            const std::vector<cd>& vs = factors[s].values();
            for (std::size_t i = 0; i < size; ++i)
                rho[i] = cd(vr[i].real() * vs[i].real(), 0.0);
            const std::vector<cd> rho_hat = detail::dft_forward(grid, rho);
            double pair_num = 0.0;
            for (std::size_t i = 0; i < size; ++i)
                pair_num += multiplier[i] * std::norm(rho_hat[i]);
            pair_num *= inv_vol;

            const std::vector<cd>& fr = factors[r].spectrum();
            const std::vector<cd>& fs = factors[s].spectrum();
            double sa = 0.0, sb = 0.0;
            for (std::size_t i = 0; i < size; ++i) {
                const double cross = (std::conj(fr[i]) * fs[i]).real();
                sa += wa[i] * cross;
                sb += wb[i] * cross;
            }
            sa *= inv_vol;
            sb *= inv_vol;

            num += factor * pair_num;
            den += factor * sa * sb;
        }
    }
    if (!(den > 0.0) || !std::isfinite(num) || !std::isfinite(den))
        throw invalid_state_error("degenerate two-particle quadratic form");
    return num / den;
}

} // namespace

HerbstReport herbst_check(int samples, Rng& rng, const RadialQuadrature& quadrature, double tol) {
    if (samples < 1)
        throw parameter_error("need at least one sample");
    HerbstReport report;
    report.critical = M_PI / 2.0;
    for (int s = 0; s < samples; ++s) {
        const GaussianSumProfile profile = random_profile(rng);
        CheckedMoments cm;
        try {
            cm = radial_moments_checked(profile, quadrature, tol);
        } catch (const parameter_error&) {
            ++report.rejected; // degenerate draw (numerically zero profile)
            continue;
        }
        if (!cm.converged) {
            ++report.rejected;
            continue;
        }
        const double ratio = cm.value.inv_r / cm.value.half_kinetic;
        report.ratios.push_back(ratio);
        report.max_ratio = std::max(report.max_ratio, ratio);
    }
    report.samples = samples;
    return report;
}

double unit_cell_average_inverse_power(double a) {
    if (!(a > 0.0) || !(a < 3.0))
        throw parameter_error("power a must lie in (0, 3)");
    static std::vector<double> gx, gw;
    if (gx.empty())
        gauss_legendre(32, gx, gw);
    double inner = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
        const double y = 0.5 * gx[i];
        for (std::size_t j = 0; j < gx.size(); ++j) {
            const double z = 0.5 * gx[j];
            inner += 0.25 * gw[i] * gw[j] * std::pow(0.25 + y * y + z * z, -0.5 * a);
        }
    }
    return 3.0 / (3.0 - a) * inner;
}

std::vector<double> power_kernel_multiplier(const Grid3& grid, double a) {
    if (!(a > 0.0) || !(a < 3.0))
        throw parameter_error("power a must lie in (0, 3)");
    const int n = grid.n();
    std::vector<cd> values(grid.size());
    std::size_t i = 0;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x, ++i) {
                const double d = grid.min_image_distance(x, y, z);
                values[i] = cd(d > 0.0 ? std::pow(d, -a) : 0.0, 0.0);
            }
    values[0] = cd(std::pow(grid.spacing(), -a) * unit_cell_average_inverse_power(a), 0.0);

    const std::vector<cd> spectrum = detail::dft_forward(grid, values);
    double max_real = 0.0, max_imag = 0.0;
    for (const cd& v : spectrum) {
        max_real = std::max(max_real, std::abs(v.real()));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    if (max_imag > 1e-8 * std::max(1.0, max_real))
        throw invalid_state_error("power kernel transform has an imaginary residue");
    std::vector<double> multiplier(spectrum.size());
    for (std::size_t j = 0; j < spectrum.size(); ++j)
        multiplier[j] = spectrum[j].real();
    return multiplier;
}

double mixed_power_ratio(const std::vector<double>& sigma,
                         const std::vector<SpectralField>& factors, double a, double alpha,
                         double beta) {
    validate_powers(a, alpha, beta);
    if (factors.empty() || sigma.size() != factors.size())
        throw parameter_error("need one weight per low-rank factor");
    const Grid3& grid = factors.front().grid();
    for (const SpectralField& f : factors) {
        if (f.grid() != grid)
            throw parameter_error("low-rank factors must share one grid");
        require_real(f);
    }
    const std::vector<double> multiplier = power_kernel_multiplier(grid, a);
    return ratio_impl(multiplier, sigma, factors, alpha, beta);
}

MixedPowerReport mixed_power_check(double a, double alpha, double beta, int samples, Rng& rng,
                                   const MixedPowerOptions& options) {
    validate_powers(a, alpha, beta);
    if (samples < 1)
        throw parameter_error("need at least one sample");
    if (options.max_rank < 1)
        throw parameter_error("max rank must be at least 1");

    const Grid3 grid(options.grid_n, options.box_L);
    const std::vector<double> multiplier = power_kernel_multiplier(grid, a);

    MixedPowerReport report;
    report.a = a;
    report.alpha = alpha;
    report.beta = beta;
    report.samples = samples;

    const int n = grid.n();
    for (int s = 0; s < samples; ++s) {
        // Rank and radial Gaussian-sum parameters are drawn independently of
        // the grid, so one seed fixes the same family across resolutions.
        const int rank = 1 + static_cast<int>(rng.uniform() * options.max_rank);
        std::vector<double> sigma;
        std::vector<SpectralField> factors;
        bool degenerate = false;
        for (int r = 0; r < std::min(rank, options.max_rank); ++r) {
            sigma.push_back((rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.3 + 0.7 * rng.uniform()));
            GaussianSumProfile profile;
            const int terms = 1 + static_cast<int>(rng.uniform() * 3.0);
            for (int t = 0; t < std::min(terms, 3); ++t) {
                GaussianSumProfile::Term term;
                term.center = 1.5 * rng.uniform();
                term.width = 0.8 * std::pow(2.5, rng.uniform()); // log-uniform [0.8, 2]
                term.amp = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.2 + 0.8 * rng.uniform());
                profile.terms.push_back(term);
            }
            std::vector<cd> values(grid.size());
            std::size_t i = 0;
            double norm2 = 0.0;
            for (int z = 0; z < n; ++z)
                for (int y = 0; y < n; ++y)
                    for (int x = 0; x < n; ++x, ++i) {
                        const double v = profile(grid.min_image_distance(x, y, z));
                        values[i] = cd(v, 0.0);
                        norm2 += v * v;
                    }
            norm2 *= grid.cell_volume();
            if (!(norm2 > 1e-12)) {
                degenerate = true;
                break;
            }
            const double inv = 1.0 / std::sqrt(norm2);
            for (cd& v : values)
                v *= inv;
            factors.push_back(SpectralField::from_values(grid, std::move(values)));
        }
        if (degenerate) {
            ++report.rejected;
            continue;
        }
        double ratio = 0.0;
        try {
            ratio = ratio_impl(multiplier, sigma, factors, alpha, beta);
        } catch (const invalid_state_error&) {
            ++report.rejected;
            continue;
        }
        report.ratios.push_back(ratio);
        report.max_ratio = std::max(report.max_ratio, ratio);
    }
    return report;
}

} // namespace bosonstar
