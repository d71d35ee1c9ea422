#include "renormal/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace renormal {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::string& out, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size())
        throw std::runtime_error("truncated field buffer");
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, in.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    pos += sizeof(T);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

void require_components(const std::vector<ScalarField>& components) {
    if (components.empty())
        throw std::invalid_argument("no components to write");
    for (const auto& c : components)
        require_same_grid(components.front().grid(), c.grid(), "field output");
}

}  // namespace

std::string encode_fields(const std::vector<ScalarField>& components) {
    require_components(components);
    const GridSpec& grid = components.front().grid();
    std::string out;
    out.reserve(24 + components.size() * grid.size() * 8);
    put<std::uint64_t>(out, grid.dim());
    put<std::uint64_t>(out, grid.points_per_axis());
    put<std::uint64_t>(out, components.size());
    for (const auto& c : components)
        for (double v : c.values())
            put<double>(out, v);
    return out;
}

std::vector<ScalarField> decode_fields(const std::string& bytes) {
    std::size_t pos = 0;
    const auto d = get<std::uint64_t>(bytes, pos);
    const auto n = get<std::uint64_t>(bytes, pos);
    const auto count = get<std::uint64_t>(bytes, pos);
    if (d > 3 || n > (1u << 20) || count == 0 || count > (1u << 20))
        throw std::runtime_error("inconsistent field header");
    const GridSpec grid(static_cast<int>(d), static_cast<int>(n));
    if (bytes.size() != 24 + count * grid.size() * 8)
        throw std::runtime_error("field buffer length does not match header");
    std::vector<ScalarField> out;
    for (std::uint64_t c = 0; c < count; ++c) {
        std::vector<double> values(grid.size());
        for (double& v : values)
            v = get<double>(bytes, pos);
        out.emplace_back(grid, std::move(values));
    }
    return out;
}

void write_fields_binary(const std::filesystem::path& path, const std::vector<ScalarField>& components) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    const std::string bytes = encode_fields(components);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::vector<ScalarField> read_fields_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_fields(buf.str());
}

void write_fields_csv(const std::filesystem::path& path, const std::vector<ScalarField>& components) {
    require_components(components);
    const GridSpec& grid = components.front().grid();
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (int a = 0; a < grid.dim(); ++a)
        out << 'i' << a << ',';
    if (components.size() == 1) {
        out << "value\n";
    } else {
        for (std::size_t c = 0; c < components.size(); ++c)
            out << "value" << c << (c + 1 < components.size() ? "," : "\n");
    }
    char buf[32];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.unflatten(i);
        for (int a = 0; a < grid.dim(); ++a)
            out << idx[a] << ',';
        for (std::size_t c = 0; c < components.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", components[c][i]);
            out << buf << (c + 1 < components.size() ? "," : "\n");
        }
    }
}

}  // namespace renormal
