#include "sbe/field_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "sbe/measures.hpp"

namespace sbe {

static_assert(std::endian::native == std::endian::little, "binary field format assumes a little-endian host");

namespace {

void write_binary(const std::filesystem::path& p, const std::vector<double>& v) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + p.string());
    os.write(reinterpret_cast<const char*>(v.data()), std::streamsize(v.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write failed: " + p.string());
}

void write_json(const std::filesystem::path& p, const nlohmann::json& j) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open " + p.string());
    os << j.dump(2) << "\n";
}

std::filesystem::path with_ext(std::filesystem::path base, const char* ext) {
    base += ext;
    return base;
}

}  // namespace

std::vector<std::filesystem::path> write_field(const std::filesystem::path& base, const LatticeField& f,
                                               std::uint64_t seed, const nlohmann::json& extra) {
    auto bin = with_ext(base, ".bin"), js = with_ext(base, ".json");
    write_binary(bin, f.values);
    nlohmann::json side = {{"N", f.grid.N},
                           {"T", f.grid.T()},
                           {"seed", seed},
                           {"layout", "time-major"},
                           {"M", f.M()},
                           {"t0", f.t0},
                           {"stride", f.stride},
                           {"count", f.count}};
    if (extra.is_object()) side.update(extra);
    write_json(js, side);
    return {bin, js};
}

std::vector<std::filesystem::path> write_noise(const std::filesystem::path& base, const NoiseField& f) {
    auto bin = with_ext(base, ".bin"), js = with_ext(base, ".json");
    write_binary(bin, f.values);
    write_json(js, {{"N", f.grid.N},
                    {"T", f.grid.T()},
                    {"seed", f.seed},
                    {"layout", "time-major"},
                    {"M", f.M()},
                    {"count", f.grid.steps}});
    return {bin, js};
}

LatticeField read_field(const std::filesystem::path& base) {
    std::ifstream js(with_ext(base, ".json"));
    if (!js) throw std::runtime_error("missing sidecar for " + base.string());
    auto side = nlohmann::json::parse(js);
    if (side.value("layout", "") != "time-major") throw std::runtime_error("unsupported field layout");
    GridSpec g = GridSpec::from_horizon(side.at("N").get<int>(), side.at("T").get<double>());
    LatticeField f(g, side.value("t0", 0), side.value("stride", 1), side.at("count").get<std::int64_t>());
    std::ifstream bin(with_ext(base, ".bin"), std::ios::binary);
    bin.read(reinterpret_cast<char*>(f.values.data()), std::streamsize(f.values.size() * sizeof(double)));
    if (!bin) throw std::runtime_error("field binary shorter than its sidecar claims");
    return f;
}

void write_field_csv(const std::filesystem::path& path, const LatticeField& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    os << "t,x,value\n";
    for (std::int64_t i = 0; i < f.count; ++i)
        for (int x = 0; x < f.M(); ++x)
            os << fmt_double(f.time_of(i)) << "," << fmt_double(x * f.grid.eps()) << "," << fmt_double(f.at(i, x))
               << "\n";
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    std::vector<char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return fnv1a(buf.data(), buf.size());
}

std::string hex64(std::uint64_t v) {
    char b[17];
    std::snprintf(b, sizeof b, "%016llx", static_cast<unsigned long long>(v));
    return b;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt_double(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

}  // namespace sbe
