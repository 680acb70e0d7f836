#include "bosonstar/radial.hpp"

#include <cmath>

#include "bosonstar/errors.hpp"

namespace bosonstar {

RadialGrid RadialGrid::geometric(double r_min, double r_max, int nodes) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw parameter_error("radial grid needs 0 < r_min < r_max");
    if (nodes < 8)
        throw parameter_error("radial grid needs at least 8 nodes");
    RadialGrid g;
    g.r.resize(nodes);
    g.w.resize(nodes);
    const double step = std::log(r_max / r_min) / (nodes - 1);
    for (int i = 0; i < nodes; ++i) {
        g.r[i] = r_min * std::exp(step * i);
        // trapezoid for integral f(e^s) e^s ds on the uniform log grid
        g.w[i] = step * g.r[i] * ((i == 0 || i == nodes - 1) ? 0.5 : 1.0);
    }
    return g;
}

RadialState make_radial_state(const std::function<double(double)>& u, const RadialGrid& grid) {
    RadialState s;
    s.grid = grid;
    s.u.resize(grid.r.size());
    double norm2 = 0.0;
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
        s.u[i] = u(grid.r[i]);
        norm2 += grid.w[i] * s.u[i] * s.u[i] * grid.r[i] * grid.r[i];
    }
    if (!(norm2 > 0.0))
        throw parameter_error("radial profile has zero norm on the grid");
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : s.u)
        v *= inv;
    return s;
}

RadialMoments radial_moments(const std::function<double(double)>& u, const RadialQuadrature& q) {
    const RadialGrid rg = RadialGrid::geometric(q.r_min, q.r_max, q.nodes);
    RadialMoments m;
    double inv_r_raw = 0.0;
    for (std::size_t i = 0; i < rg.r.size(); ++i) {
        const double ui = u(rg.r[i]);
        const double d = rg.w[i] * ui * ui * rg.r[i];
        inv_r_raw += d;          // u^2 r
        m.norm2 += d * rg.r[i];  // u^2 r^2
    }
    if (!(m.norm2 > 0.0))
        throw parameter_error("radial profile has zero norm on the grid");
    m.inv_r = inv_r_raw / m.norm2;

    // Reduced wave function f = r u on a uniform grid; spherical (l = 0)
    // Hankel transform is the sine transform fs(k) = sqrt(2/pi) int f sin(kr).
    if (q.transform_nodes < 8)
        throw parameter_error("transform grid needs at least 8 nodes");
    const int nt = q.transform_nodes;
    const double dr = q.r_max / nt;
    std::vector<double> f(nt + 1);
    for (int j = 0; j <= nt; ++j) {
        const double r = dr * j;
        f[j] = r * u(r);
    }
    f[0] = 0.0;

    const RadialGrid kg = RadialGrid::geometric(q.k_min, q.k_max, q.k_nodes);
    const double scale = std::sqrt(2.0 / M_PI) * dr;
    double half_raw = 0.0, hom_raw = 0.0;
    for (std::size_t i = 0; i < kg.r.size(); ++i) {
        const double k = kg.r[i];
        // sin(k j dr) by the stable three-term recurrence on the uniform grid
        const double c2 = 2.0 * std::cos(k * dr);
        double s_prev = -std::sin(k * dr); // j = -1
        double s_cur = 0.0;                // j = 0
        double acc = 0.0;
        for (int j = 1; j <= nt; ++j) {
            const double s_next = c2 * s_cur - s_prev;
            s_prev = s_cur;
            s_cur = s_next;
            acc += f[j] * s_cur * (j == nt ? 0.5 : 1.0);
        }
        const double fs = scale * acc;
        const double fs2 = kg.w[i] * fs * fs;
        half_raw += fs2 * std::sqrt(1.0 + k * k);
        hom_raw += fs2 * k;
    }
    m.half_kinetic = half_raw / m.norm2;
    m.half_kinetic_hom = hom_raw / m.norm2;
    return m;
}

CheckedMoments radial_moments_checked(const std::function<double(double)>& u,
                                      const RadialQuadrature& q, double tol) {
    RadialQuadrature fine = q;
    fine.nodes *= 2;
    fine.k_nodes *= 2;
    fine.transform_nodes *= 2;

    const RadialMoments coarse = radial_moments(u, q);
    CheckedMoments out;
    out.value = radial_moments(u, fine);

    auto rel = [](double a, double b) {
        const double s = std::max(std::abs(a), std::abs(b));
        return s > 0.0 ? std::abs(a - b) / s : 0.0;
    };
    out.rel_change = std::max({rel(coarse.inv_r, out.value.inv_r),
                               rel(coarse.half_kinetic, out.value.half_kinetic),
                               rel(coarse.half_kinetic_hom, out.value.half_kinetic_hom)});
    out.converged = out.rel_change <= tol;
    return out;
}

double GaussianSumProfile::operator()(double r) const {
    double v = 0.0;
    for (const Term& t : terms) {
        const double z = (r - t.center) / t.width;
        v += t.amp * std::exp(-0.5 * z * z);
    }
    return v;
}

GaussianSumProfile random_profile(Rng& rng, int min_terms, int max_terms) {
    if (min_terms < 1 || max_terms < min_terms)
        throw parameter_error("profile term bounds must satisfy 1 <= min <= max");
    GaussianSumProfile p;
    const int count = min_terms + static_cast<int>(rng.uniform() * (max_terms - min_terms + 1));
    for (int j = 0; j < std::min(count, max_terms); ++j) {
        GaussianSumProfile::Term t;
        t.center = 4.0 * rng.uniform();
        t.width = 0.3 * std::pow(10.0, rng.uniform()); // log-uniform in [0.3, 3]
        t.amp = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.2 + 0.8 * rng.uniform());
        p.terms.push_back(t);
    }
    return p;
}

} // namespace bosonstar
