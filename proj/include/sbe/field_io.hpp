#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbe/grid.hpp"

namespace sbe {

// <base>.bin holds little-endian float64 in time-major order, <base>.json the sidecar.
// Returns the paths written.
std::vector<std::filesystem::path> write_field(const std::filesystem::path& base, const LatticeField& f,
                                               std::uint64_t seed, const nlohmann::json& extra = {});
std::vector<std::filesystem::path> write_noise(const std::filesystem::path& base, const NoiseField& f);
LatticeField read_field(const std::filesystem::path& base);

void write_field_csv(const std::filesystem::path& path, const LatticeField& f);

std::uint64_t file_checksum(const std::filesystem::path& path);
std::string hex64(std::uint64_t v);

// RFC 4180 style field quoting
std::string csv_quote(const std::string& s);
std::string fmt_double(double v);

}  // namespace sbe
