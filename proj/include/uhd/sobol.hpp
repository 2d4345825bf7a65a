#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uhd/errors.hpp"

namespace uhd {

// Joe-Kuo style direction numbers, one record per Sobol dimension >= 2.
// Dimension 1 is the plain van der Corput sequence and needs no record.
class DirectionNumbers {
public:
    struct Record {
        std::uint32_t degree = 0;       // s
        std::uint32_t coefficients = 0; // a, encoded as in the Joe-Kuo files
        std::vector<std::uint32_t> m;   // initial direction integers, m.size() == s
    };

    static DirectionNumbers load_file(const std::string& path);
    static DirectionNumbers parse(std::istream& in, const std::string& origin);

    // Highest dimension index this table can serve (dimension 1 included).
    std::uint32_t capacity() const { return static_cast<std::uint32_t>(records_.size()) + 1; }

    // Record for dimension index >= 2.
    const Record& record(std::uint32_t dimension_index) const;

private:
    std::vector<Record> records_;
};

struct SobolConfig {
    std::uint32_t dimensions = 0;           // H, one per feature position
    std::uint32_t points_per_dimension = 0; // D
    std::uint32_t quantization_bits = 4;    // M
    bool skip_initial_zero = true;

    void validate(std::uint32_t table_capacity) const;
};

// First num_points Sobol points of one dimension (1-based index), Gray-code
// construction. The initial all-zero point is skipped when skip_initial_zero
// is set.
std::vector<double> generate_sobol_dimension(const DirectionNumbers& dirs,
                                             std::uint32_t dimension_index,
                                             std::uint32_t num_points,
                                             bool skip_initial_zero = true);

// floor(x * levels), clamped to levels - 1. Requires 0 <= x < 1.
std::uint32_t quantize_scalar(double x, std::uint32_t levels);

class SobolTable {
public:
    static SobolTable build(const DirectionNumbers& dirs, const SobolConfig& config);

    const SobolConfig& config() const { return config_; }
    std::uint32_t rows() const { return config_.dimensions; }
    std::uint32_t cols() const { return config_.points_per_dimension; }
    std::uint32_t levels() const { return 1u << config_.quantization_bits; }

    std::uint16_t at(std::uint32_t row, std::uint32_t col) const {
        return values_[static_cast<std::size_t>(row) * config_.points_per_dimension + col];
    }
    const std::uint16_t* row_data(std::uint32_t row) const {
        return values_.data() + static_cast<std::size_t>(row) * config_.points_per_dimension;
    }

    // Flat binary export: H, D, M as u32 LE, then H*D bytes. Requires M <= 8.
    void save(const std::string& path) const;
    static SobolTable load(const std::string& path);

private:
    SobolConfig config_;
    std::vector<std::uint16_t> values_;
};

} // namespace uhd
