#include "bosonstar/spectral_field.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace detail {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void run_dft(const Grid3& grid, std::vector<cd>& data, int sign) {
    // Storage is x-fastest, so FFTW (last dimension fastest) sees (z, y, x);
    // all dimensions are equal so the call is symmetric anyway.
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_3d(grid.n(), grid.n(), grid.n(), ptr, ptr, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw invalid_state_error("fftw_plan_dft_3d failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}
} // namespace

std::vector<cd> dft_forward(const Grid3& grid, const std::vector<cd>& values) {
    std::vector<cd> out = values;
    run_dft(grid, out, FFTW_FORWARD);
    const double scale = grid.cell_volume();
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<cd> dft_backward(const Grid3& grid, const std::vector<cd>& spectrum) {
    std::vector<cd> out = spectrum;
    run_dft(grid, out, FFTW_BACKWARD);
    const double scale = 1.0 / grid.volume();
    for (auto& v : out) v *= scale;
    return out;
}

} // namespace detail

SpectralField::SpectralField(const Grid3& grid) : grid_(grid) {}

SpectralField SpectralField::zero(const Grid3& grid) {
    SpectralField f(grid);
    f.values_.assign(grid.size(), cd(0.0, 0.0));
    f.spectrum_.assign(grid.size(), cd(0.0, 0.0));
    f.valid_values_ = true;
    f.valid_spectrum_ = true;
    return f;
}

SpectralField SpectralField::from_values(const Grid3& grid, std::vector<cd> values) {
    if (values.size() != grid.size())
        throw parameter_error("SpectralField::from_values: size " + std::to_string(values.size()) +
                              " does not match grid (" + std::to_string(grid.size()) + ")");
    SpectralField f(grid);
    f.values_ = std::move(values);
    f.valid_values_ = true;
    return f;
}

SpectralField SpectralField::from_spectrum(const Grid3& grid, std::vector<cd> spectrum) {
    if (spectrum.size() != grid.size())
        throw parameter_error("SpectralField::from_spectrum: size " + std::to_string(spectrum.size()) +
                              " does not match grid (" + std::to_string(grid.size()) + ")");
    SpectralField f(grid);
    f.spectrum_ = std::move(spectrum);
    f.valid_spectrum_ = true;
    return f;
}

const std::vector<cd>& SpectralField::values() const {
    if (!valid_values_) {
        values_ = detail::dft_backward(grid_, spectrum_);
        valid_values_ = true;
    }
    return values_;
}

const std::vector<cd>& SpectralField::spectrum() const {
    if (!valid_spectrum_) {
        spectrum_ = detail::dft_forward(grid_, values_);
        valid_spectrum_ = true;
    }
    return spectrum_;
}

std::vector<cd>& SpectralField::mutable_values() {
    values();
    valid_spectrum_ = false;
    spectrum_.clear();
    return values_;
}

std::vector<cd>& SpectralField::mutable_spectrum() {
    spectrum();
    valid_values_ = false;
    values_.clear();
    return spectrum_;
}

void SpectralField::check_finite(const char* where) const {
    const std::vector<cd>& data = valid_values_ ? values_ : spectrum_;
    for (const cd& v : data) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw invalid_state_error(std::string(where) + ": field contains non-finite samples");
    }
}

} // namespace bosonstar
