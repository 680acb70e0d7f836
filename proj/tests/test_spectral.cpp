#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "bosonstar/coulomb_kernel.hpp"
#include "bosonstar/errors.hpp"
#include "bosonstar/field_io.hpp"
#include "bosonstar/grid.hpp"
#include "bosonstar/random.hpp"
#include "bosonstar/spectral_field.hpp"
#include "bosonstar/spectral_ops.hpp"
#include "bosonstar/trial_fields.hpp"

using namespace bosonstar;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Unit-norm plane wave with integer mode m on the grid: the spectrum is a
// single spike of height L^{3/2}.
SpectralField plane_wave(const Grid3& g, int mx, int my, int mz) {
    std::vector<cd> hat(g.size(), cd(0.0, 0.0));
    const int n = g.n();
    auto wrap = [n](int m) { return (m % n + n) % n; };
    hat[g.index(wrap(mx), wrap(my), wrap(mz))] = cd(std::pow(g.L(), 1.5), 0.0);
    return SpectralField::from_spectrum(g, std::move(hat));
}

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("grid validates shape and exposes mode bookkeeping") {
    CHECK_THROWS_AS(Grid3(3, 1.0), parameter_error);
    CHECK_THROWS_AS(Grid3(0, 1.0), parameter_error);
    CHECK_THROWS_AS(Grid3(7, 1.0), parameter_error);
    CHECK_THROWS_AS(Grid3(16, -1.0), parameter_error);
    CHECK_THROWS_AS(Grid3(16, 0.0), parameter_error);

    Grid3 g(8, 4.0);
    CHECK(g.n() == 8);
    CHECK(g.spacing() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.size() == 512);
    CHECK(g.signed_mode(0) == 0);
    CHECK(g.signed_mode(3) == 3);
    CHECK(g.signed_mode(4) == -4);
    CHECK(g.signed_mode(7) == -1);
    CHECK(g.k_axis(1) == doctest::Approx(kTwoPi / 4.0).epsilon(1e-15));
    CHECK(g.k_axis(7) == doctest::Approx(-kTwoPi / 4.0).epsilon(1e-15));
    // Index 7 along one axis sits one spacing left of the origin periodically.
    CHECK(g.min_image_distance(7, 0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.min_image_distance(4, 4, 0) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
    CHECK(g.index(1, 2, 3) == 1 + 8 * (2 + 8 * 3));
}

TEST_CASE("transform pair satisfies Parseval and round-trips") {
    Grid3 g(16, 8.0);
    Rng rng(7);
    SpectralField phi = random_smooth_field(g, rng, 3.0);

    double pos = 0.0;
    for (const cd& v : phi.values()) pos += std::norm(v);
    pos *= g.cell_volume();
    double mom = 0.0;
    for (const cd& v : phi.spectrum()) mom += std::norm(v);
    mom /= g.volume();
    CHECK(pos == doctest::Approx(mom).epsilon(1e-12));
    CHECK(pos == doctest::Approx(1.0).epsilon(1e-12)); // random_smooth_field normalizes

    // values -> spectrum -> values round trip
    const std::vector<cd> orig = phi.values();
    SpectralField back = SpectralField::from_spectrum(g, phi.spectrum());
    CHECK(max_abs_diff(back.values(), orig) < 1e-12);
}

TEST_CASE("plane wave at |k| = 1 carries kinetic energy sqrt(2)") {
    Grid3 g(16, kTwoPi);
    SpectralField phi = plane_wave(g, 1, 0, 0);
    CHECK(field_norm(phi, NormKind::L2) == doctest::Approx(1.0).epsilon(1e-12));
    const CoulombKernel kernel = CoulombKernel::make_exact(g);
    const EnergyBreakdown e = energy(phi, kernel, 0.0);
    CHECK(e.kinetic == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(e.total == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(homogeneous_half_energy(phi) == doctest::Approx(1.0).epsilon(1e-12));
    // H^{1/2} norm squared equals the kinetic quadratic form
    const double hh = field_norm(phi, NormKind::Hhalf);
    CHECK(hh * hh == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("sobolev weights compose and validate the exponent") {
    Grid3 g(8, 5.0);
    Rng rng(11);
    SpectralField phi = random_smooth_field(g, rng, 2.0);

    SpectralField same = sobolev_apply(phi, 0.0);
    CHECK(max_abs_diff(same.spectrum(), phi.spectrum()) < 1e-13);

    SpectralField twice = sobolev_apply(sobolev_apply(phi, 1.0), 1.0);
    SpectralField once = sobolev_apply(phi, 2.0);
    CHECK(max_abs_diff(twice.spectrum(), once.spectrum()) < 1e-10);

    SpectralField inv = sobolev_apply(sobolev_apply(phi, -1.0), 1.0);
    CHECK(max_abs_diff(inv.spectrum(), phi.spectrum()) < 1e-11);

    CHECK_THROWS_AS(sobolev_apply(phi, 2.5), parameter_error);
    CHECK_THROWS_AS(sobolev_apply(phi, -2.5), parameter_error);
}

TEST_CASE("exact kernel multiplier is 4 pi / k^2 with the zero mode dropped") {
    Grid3 g(16, 16.0);
    const CoulombKernel kernel = CoulombKernel::make_exact(g);
    const std::vector<double>& w = kernel.multiplier();
    CHECK(w[g.index(0, 0, 0)] == 0.0);
    const double k1 = kTwoPi / 16.0;
    CHECK(w[g.index(1, 0, 0)] == doctest::Approx(4.0 * kPi / (k1 * k1)).epsilon(1e-13));
    CHECK(w[g.index(0, 2, 0)] == doctest::Approx(4.0 * kPi / (4.0 * k1 * k1)).epsilon(1e-13));
    CHECK(w[g.index(1, 1, 1)] == doctest::Approx(4.0 * kPi / (3.0 * k1 * k1)).epsilon(1e-13));
    // negation symmetry
    CHECK(w[g.index(15, 0, 0)] == doctest::Approx(w[g.index(1, 0, 0)]).epsilon(1e-13));
}

TEST_CASE("regularized kernel multiplier is even and drops the zero mode") {
    Grid3 g(16, 16.0);
    const CoulombKernel kernel = CoulombKernel::make_regularized(g, 0.5);
    const std::vector<double>& w = kernel.multiplier();
    CHECK(w[g.index(0, 0, 0)] == 0.0);
    CHECK(w[g.index(1, 2, 3)] == doctest::Approx(w[g.index(15, 14, 13)]).epsilon(1e-10));
    CHECK(w[g.index(5, 0, 0)] == doctest::Approx(w[g.index(11, 0, 0)]).epsilon(1e-10));
    CHECK_THROWS_AS(CoulombKernel::make_regularized(g, -0.1), parameter_error);
}

// The zero-mode-dropped convolution equals the free-space one shifted by the
// neutralizing-background constant xi/L plus the leading lattice quadrupole
// term (2 pi / 3 L^3) <|x|^2>. For a width-1 Gaussian on L = 16 both
// corrections are known in closed form, giving an absolute oracle.
TEST_CASE("Hartree potential of a Gaussian matches the corrected free-space value") {
    const double xi = -2.8372974794806; // simple-cubic background constant
    const double L = 16.0;
    Grid3 g(64, L);
    SpectralField phi = make_centered_gaussian(g, 1.0);
    const CoulombKernel kernel = CoulombKernel::make_exact(g);

    const RealField pot = hartree_potential(phi, kernel, 1.0);
    const double center = pot.values[g.index(32, 32, 32)];
    // free space: 2/sqrt(pi); second moment of the density: 3/2
    const double expected =
        2.0 / std::sqrt(kPi) + xi / L + (kTwoPi / (3.0 * L * L * L)) * 1.5;
    CHECK(center == doctest::Approx(expected).epsilon(1e-2));

    // lambda scales the potential linearly
    const RealField pot2 = hartree_potential(phi, kernel, -0.5);
    CHECK(pot2.values[g.index(32, 32, 32)] ==
          doctest::Approx(-0.5 * center).epsilon(1e-12));
}

TEST_CASE("Gaussian self-interaction matches the corrected free-space value") {
    const double xi = -2.8372974794806;
    const double L = 16.0;
    Grid3 g(64, L);
    SpectralField phi = make_centered_gaussian(g, 1.0);
    const CoulombKernel kernel = CoulombKernel::make_exact(g);

    const EnergyBreakdown e = energy(phi, kernel, -1.0);
    // free space: sqrt(2/pi); mean square separation of two densities: 3
    const double expected =
        std::sqrt(2.0 / kPi) + xi / L + (kTwoPi / (3.0 * L * L * L)) * 3.0;
    CHECK(e.coulomb == doctest::Approx(expected).epsilon(1e-2));
    CHECK(e.total == doctest::Approx(e.kinetic - 0.5 * e.coulomb).epsilon(1e-12));
}

TEST_CASE("momentum damping acts per mode") {
    Grid3 g(16, kTwoPi);
    SpectralField phi = plane_wave(g, 1, 0, 0);

    SpectralField damped = smooth_kappa(phi, 0.1, 1.0);
    // single mode at |k| = 1: the field shrinks by exactly e^{-0.1}
    double diff2 = 0.0;
    for (std::size_t i = 0; i < phi.values().size(); ++i)
        diff2 += std::norm(damped.values()[i] - phi.values()[i]);
    diff2 *= g.cell_volume();
    CHECK(std::sqrt(diff2) == doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-12));

    SpectralField same = smooth_kappa(phi, 0.0, 5.0);
    CHECK(max_abs_diff(same.spectrum(), phi.spectrum()) < 1e-13);
    CHECK_THROWS_AS(smooth_kappa(phi, -1.0, 1.0), parameter_error);
    CHECK_THROWS_AS(smooth_kappa(phi, 1.0, 0.5), parameter_error);
}

TEST_CASE("spectral tail fraction separates low and high modes") {
    Grid3 g(16, 8.0);
    SpectralField low = plane_wave(g, 1, 0, 0);
    CHECK(spectral_tail_fraction(low, 0.5) == doctest::Approx(0.0));
    SpectralField high = plane_wave(g, 7, 0, 0);
    CHECK(spectral_tail_fraction(high, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("density integrates to the squared norm") {
    Grid3 g(16, 8.0);
    Rng rng(3);
    SpectralField phi = random_smooth_field(g, rng, 2.5);
    const std::vector<double> rho = density(phi);
    double total = 0.0;
    for (double v : rho) total += v;
    total *= g.cell_volume();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inner product is conjugate-linear on the left") {
    Grid3 g(8, 4.0);
    Rng rng(5);
    SpectralField a = random_smooth_field(g, rng, 2.0);
    SpectralField b = random_smooth_field(g, rng, 2.0);
    const cd ab = inner_product(a, b);
    const cd ba = inner_product(b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-13);
    CHECK(std::abs(inner_product(a, a).real() - 1.0) < 1e-12);
    CHECK(std::abs(inner_product(a, a).imag()) < 1e-13);
}

TEST_CASE("mutation invalidates the cached twin representation") {
    Grid3 g(8, 4.0);
    Rng rng(9);
    SpectralField phi = random_smooth_field(g, rng, 2.0);
    (void)phi.spectrum();
    CHECK(phi.has_spectrum());
    phi.mutable_values()[0] += cd(1.0, 0.0);
    CHECK(!phi.has_spectrum());
    // re-materialized spectrum still satisfies Parseval
    double pos = 0.0;
    for (const cd& v : phi.values()) pos += std::norm(v);
    pos *= g.cell_volume();
    double mom = 0.0;
    for (const cd& v : phi.spectrum()) mom += std::norm(v);
    mom /= g.volume();
    CHECK(pos == doctest::Approx(mom).epsilon(1e-12));
}

TEST_CASE("non-finite data is rejected") {
    Grid3 g(8, 4.0);
    SpectralField phi = SpectralField::zero(g);
    phi.mutable_values()[3] = cd(std::nan(""), 0.0);
    CHECK_THROWS_AS(phi.check_finite("test"), invalid_state_error);
    CHECK_THROWS_AS(normalized(SpectralField::zero(g)), invalid_state_error);
}

TEST_CASE("field files round-trip bit for bit") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bosonstar_io_test";
    fs::create_directories(dir);

    Grid3 g(8, 4.0);
    Rng rng(21);
    SpectralField phi = random_smooth_field(g, rng, 2.0);

    for (Representation rep : {Representation::Position, Representation::Momentum}) {
        const fs::path p = dir / (rep == Representation::Position ? "pos.bin" : "mom.bin");
        write_field(phi, rep, p);
        SpectralField back = read_field(p);
        CHECK(back.grid() == g);
        if (rep == Representation::Position) {
            CHECK(max_abs_diff(back.values(), phi.values()) == 0.0);
        } else {
            CHECK(max_abs_diff(back.spectrum(), phi.spectrum()) == 0.0);
        }
    }

    // serialization matches what the writer puts on disk
    const std::string bytes = field_to_bytes(phi, Representation::Position);
    std::ifstream in(dir / "pos.bin", std::ios::binary);
    std::string disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(bytes == disk);

    // corrupted magic is rejected
    const fs::path bad = dir / "bad.bin";
    atomic_write_file(bad, std::string("XXXXGARBAGE"));
    CHECK_THROWS_AS(read_field(bad), invalid_state_error);
    CHECK_THROWS_AS(read_field(dir / "missing.bin"), parameter_error);
    fs::remove_all(dir);
}

TEST_CASE("density slice export has a header and n^2 rows") {
    Grid3 g(8, 4.0);
    Rng rng(2);
    SpectralField phi = random_smooth_field(g, rng, 2.0);
    const std::string csv = density_slice_csv(phi, 4);
    CHECK(csv.rfind("x,y,density\n", 0) == 0);
    long rows = 0;
    for (char c : csv) rows += c == '\n';
    CHECK(rows == 1 + 8 * 8);
}

TEST_CASE("g17 formatting round-trips doubles exactly") {
    CHECK(format_g17(1.0) == "1");
    CHECK(format_g17(0.1) == "0.10000000000000001");
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-20.0, 20.0));
        const std::string s = format_g17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("content fingerprints match the reference function") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("hello") == "a430d84680aabd0b");
}

TEST_CASE("atomic writes leave no temporary behind") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bosonstar_atomic_test";
    fs::create_directories(dir);
    atomic_write_file(dir / "f.txt", "payload");
    std::ifstream in(dir / "f.txt");
    std::string got((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(got == "payload");
    bool tmp_left = false;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".tmp") tmp_left = true;
    CHECK(!tmp_left);
    fs::remove_all(dir);
}

TEST_CASE("purpose-derived random streams are stable and distinct") {
    Rng a = Rng::for_purpose(42, "alpha");
    Rng b = Rng::for_purpose(42, "alpha");
    Rng c = Rng::for_purpose(42, "beta");
    const std::uint64_t a0 = a.raw();
    CHECK(a0 == b.raw());
    CHECK(a0 != c.raw());

    // uniform stays in range; normal has roughly unit variance
    Rng d(123);
    double mean = 0.0, var = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = d.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double z = d.normal();
        mean += z;
        var += z * z;
    }
    mean /= n;
    var = var / n - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
