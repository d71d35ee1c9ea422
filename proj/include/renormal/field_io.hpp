#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "renormal/field.hpp"

namespace renormal {

/// Flat binary layout, all little-endian:
///   uint64 d, uint64 N, uint64 component count,
///   then each component's N^d float64 samples in flat (row-major) order.
std::string encode_fields(const std::vector<ScalarField>& components);
/// Throws std::runtime_error on a truncated or inconsistent buffer.
std::vector<ScalarField> decode_fields(const std::string& bytes);

void write_fields_binary(const std::filesystem::path& path, const std::vector<ScalarField>& components);
std::vector<ScalarField> read_fields_binary(const std::filesystem::path& path);

/// CSV with columns i0..i{d-1} (node indices) followed by one value column
/// per component ("value" when there is a single component).
void write_fields_csv(const std::filesystem::path& path, const std::vector<ScalarField>& components);

}  // namespace renormal
