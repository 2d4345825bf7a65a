#include "uhd/sobol.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uhd {

namespace {
constexpr std::uint32_t kMaxBits = 31; // direction numbers kept in 31 fractional bits
} // namespace

DirectionNumbers DirectionNumbers::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw_error(errc::format, "cannot open direction-number file: " + path);
    }
    return parse(in, path);
}

DirectionNumbers DirectionNumbers::parse(std::istream& in, const std::string& origin) {
    DirectionNumbers out;
    std::string line;
    // optional header line ("d s a m_i")
    std::uint32_t expected_dim = 2;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::uint32_t d = 0;
        if (!(ls >> d)) {
            continue; // header or comment line
        }
        Record rec;
        if (!(ls >> rec.degree >> rec.coefficients)) {
            throw_error(errc::format, origin + ": malformed record for dimension " + std::to_string(d));
        }
        if (d != expected_dim) {
            throw_error(errc::format, origin + ": expected dimension " + std::to_string(expected_dim) +
                                          ", found " + std::to_string(d));
        }
        rec.m.resize(rec.degree);
        for (std::uint32_t i = 0; i < rec.degree; ++i) {
            if (!(ls >> rec.m[i]) || rec.m[i] == 0 || rec.m[i] % 2 == 0 || rec.m[i] >= (1u << (i + 1))) {
                throw_error(errc::format, origin + ": bad direction integers for dimension " + std::to_string(d));
            }
        }
        out.records_.push_back(std::move(rec));
        ++expected_dim;
    }
    if (out.records_.empty()) {
        throw_error(errc::format, origin + ": no direction-number records found");
    }
    return out;
}

const DirectionNumbers::Record& DirectionNumbers::record(std::uint32_t dimension_index) const {
    if (dimension_index < 2 || dimension_index > capacity()) {
        throw_error(errc::capacity, "Sobol dimension " + std::to_string(dimension_index) +
                                        " outside table capacity " + std::to_string(capacity()));
    }
    return records_[dimension_index - 2];
}

void SobolConfig::validate(std::uint32_t table_capacity) const {
    if (dimensions < 1) {
        throw_error(errc::domain, "SobolConfig: dimensions must be >= 1");
    }
    if (dimensions > table_capacity) {
        throw_error(errc::capacity, "SobolConfig: " + std::to_string(dimensions) +
                                        " dimensions exceed table capacity " + std::to_string(table_capacity));
    }
    if (points_per_dimension < 1) {
        throw_error(errc::domain, "SobolConfig: points_per_dimension must be >= 1");
    }
    if (quantization_bits < 1 || quantization_bits > 16) {
        throw_error(errc::domain, "SobolConfig: quantization_bits must be in [1,16]");
    }
}

std::vector<double> generate_sobol_dimension(const DirectionNumbers& dirs,
                                             std::uint32_t dimension_index,
                                             std::uint32_t num_points,
                                             bool skip_initial_zero) {
    if (dimension_index < 1) {
        throw_error(errc::domain, "Sobol dimension index is 1-based");
    }
    if (dimension_index > dirs.capacity()) {
        throw_error(errc::capacity, "Sobol dimension " + std::to_string(dimension_index) +
                                        " outside table capacity " + std::to_string(dirs.capacity()));
    }
    if (num_points < 1) {
        throw_error(errc::domain, "num_points must be >= 1");
    }

    // Direction numbers v_k = m_k / 2^k, held as integers scaled by 2^kMaxBits.
    std::vector<std::uint32_t> v(kMaxBits);
    if (dimension_index == 1) {
        for (std::uint32_t k = 0; k < kMaxBits; ++k) {
            v[k] = 1u << (kMaxBits - 1 - k);
        }
    } else {
        const auto& rec = dirs.record(dimension_index);
        const std::uint32_t s = rec.degree;
        std::vector<std::uint32_t> m(kMaxBits);
        for (std::uint32_t k = 0; k < kMaxBits; ++k) {
            if (k < s) {
                m[k] = rec.m[k];
            } else {
                std::uint32_t mk = m[k - s] ^ (m[k - s] << s);
                for (std::uint32_t i = 1; i < s; ++i) {
                    if ((rec.coefficients >> (s - 1 - i)) & 1u) {
                        mk ^= m[k - i] << i;
                    }
                }
                m[k] = mk;
            }
            v[k] = m[k] << (kMaxBits - 1 - k);
        }
    }

    std::vector<double> points;
    points.reserve(num_points);
    const double scale = 1.0 / static_cast<double>(1ull << kMaxBits);
    std::uint32_t x = 0;
    std::uint32_t produced = 0;
    if (!skip_initial_zero) {
        points.push_back(0.0);
        ++produced;
    }
    for (std::uint64_t n = 1; produced < num_points; ++n) {
        // Gray-code step: flip the direction number indexed by the lowest zero
        // bit of n - 1.
        const std::uint32_t c = static_cast<std::uint32_t>(std::countr_one(n - 1));
        if (c >= kMaxBits) {
            throw_error(errc::capacity, "Sobol sequence longer than 2^31 points");
        }
        x ^= v[c];
        points.push_back(static_cast<double>(x) * scale);
        ++produced;
    }
    return points;
}

std::uint32_t quantize_scalar(double x, std::uint32_t levels) {
    if (!(x >= 0.0) || !(x < 1.0)) {
        throw_error(errc::domain, "quantize_scalar: input must satisfy 0 <= x < 1");
    }
    auto q = static_cast<std::uint32_t>(std::floor(x * static_cast<double>(levels)));
    return q >= levels ? levels - 1 : q;
}

SobolTable SobolTable::build(const DirectionNumbers& dirs, const SobolConfig& config) {
    config.validate(dirs.capacity());
    SobolTable table;
    table.config_ = config;
    table.values_.resize(static_cast<std::size_t>(config.dimensions) * config.points_per_dimension);
    const std::uint32_t levels = 1u << config.quantization_bits;
    for (std::uint32_t i = 0; i < config.dimensions; ++i) {
        auto pts = generate_sobol_dimension(dirs, i + 1, config.points_per_dimension,
                                            config.skip_initial_zero);
        auto* row = table.values_.data() + static_cast<std::size_t>(i) * config.points_per_dimension;
        for (std::uint32_t j = 0; j < config.points_per_dimension; ++j) {
            row[j] = static_cast<std::uint16_t>(quantize_scalar(pts[j], levels));
        }
    }
    return table;
}

namespace {
void put_u32_le(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t get_u32_le(std::istream& in, const std::string& what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw_error(errc::format, "truncated Sobol table file while reading " + what);
    }
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
} // namespace

void SobolTable::save(const std::string& path) const {
    if (config_.quantization_bits > 8) {
        throw_error(errc::domain, "SobolTable::save supports M <= 8 only");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw_error(errc::resource, "cannot open for writing: " + path);
    }
    put_u32_le(out, config_.dimensions);
    put_u32_le(out, config_.points_per_dimension);
    put_u32_le(out, config_.quantization_bits);
    std::vector<char> bytes(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        bytes[i] = static_cast<char>(values_[i]);
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw_error(errc::resource, "write failed: " + path);
    }
}

SobolTable SobolTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_error(errc::format, "cannot open Sobol table file: " + path);
    }
    SobolTable table;
    table.config_.dimensions = get_u32_le(in, "H");
    table.config_.points_per_dimension = get_u32_le(in, "D");
    table.config_.quantization_bits = get_u32_le(in, "M");
    if (table.config_.quantization_bits < 1 || table.config_.quantization_bits > 8) {
        throw_error(errc::format, path + ": bad quantization bits in header");
    }
    const std::size_t count =
        static_cast<std::size_t>(table.config_.dimensions) * table.config_.points_per_dimension;
    std::vector<char> bytes(count);
    if (!in.read(bytes.data(), static_cast<std::streamsize>(count))) {
        throw_error(errc::format, path + ": truncated Sobol table payload");
    }
    table.values_.resize(count);
    const std::uint16_t top = static_cast<std::uint16_t>((1u << table.config_.quantization_bits) - 1);
    for (std::size_t i = 0; i < count; ++i) {
        auto v = static_cast<std::uint16_t>(static_cast<unsigned char>(bytes[i]));
        if (v > top) {
            throw_error(errc::format, path + ": table entry out of range");
        }
        table.values_[i] = v;
    }
    return table;
}

} // namespace uhd
