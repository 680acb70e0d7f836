#include "bosonstar/field_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "bosonstar/errors.hpp"
#include "bosonstar/spectral_ops.hpp"

namespace bosonstar {

namespace {
constexpr std::uint32_t kMagic = 0x31465342u; // "BSF1" little-endian

template <typename T>
void put(std::string& buf, const T& v) {
    const char* p = reinterpret_cast<const char*>(&v);
    buf.append(p, p + sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const char* what) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw invalid_state_error(std::string("read_field: truncated header (") + what + ")");
    return v;
}
} // namespace

std::string field_to_bytes(const SpectralField& field, Representation rep) {
    const Grid3& g = field.grid();
    const std::vector<cd>& data = rep == Representation::Position ? field.values() : field.spectrum();
    std::string buf;
    buf.reserve(16 + data.size() * 2 * sizeof(double));
    put(buf, kMagic);
    put(buf, static_cast<std::uint32_t>(g.n()));
    put(buf, static_cast<std::uint32_t>(rep));
    put(buf, g.L());
    for (const cd& v : data) {
        put(buf, v.real());
        put(buf, v.imag());
    }
    return buf;
}

void write_field(const SpectralField& field, Representation rep, const std::filesystem::path& path) {
    atomic_write_file(path, field_to_bytes(field, rep));
}

SpectralField read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parameter_error("read_field: cannot open " + path.string());
    if (get<std::uint32_t>(in, "magic") != kMagic)
        throw invalid_state_error("read_field: bad magic in " + path.string());
    const auto n = get<std::uint32_t>(in, "n");
    const auto tag = get<std::uint32_t>(in, "tag");
    const auto L = get<double>(in, "L");
    if (tag > 1) throw invalid_state_error("read_field: unknown representation tag");
    Grid3 grid(static_cast<int>(n), L);
    std::vector<cd> data(grid.size());
    for (auto& v : data) {
        const double re = get<double>(in, "data");
        const double im = get<double>(in, "data");
        v = cd(re, im);
    }
    return tag == 0 ? SpectralField::from_values(grid, std::move(data))
                    : SpectralField::from_spectrum(grid, std::move(data));
}

std::string density_slice_csv(const SpectralField& field, int z_index) {
    const Grid3& g = field.grid();
    if (z_index < 0 || z_index >= g.n())
        throw parameter_error("write_density_slice_csv: z index out of range");
    const std::vector<double> rho = density(field);
    std::string out = "x,y,density\n";
    for (int y = 0; y < g.n(); ++y)
        for (int x = 0; x < g.n(); ++x) {
            out += format_g17(g.spacing() * x);
            out += ',';
            out += format_g17(g.spacing() * y);
            out += ',';
            out += format_g17(rho[g.index(x, y, z_index)]);
            out += '\n';
        }
    return out;
}

void write_density_slice_csv(const SpectralField& field, int z_index, const std::filesystem::path& path) {
    atomic_write_file(path, density_slice_csv(field, z_index));
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw invalid_state_error("atomic_write_file: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw invalid_state_error("atomic_write_file: short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string fnv1a_hex(const std::string& content) {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : content) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace bosonstar
