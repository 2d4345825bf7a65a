#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uhd/errors.hpp"

namespace uhd {

// Immutable labeled image set; pixels are row-major 8-bit intensities.
struct Dataset {
    std::vector<std::uint8_t> pixels; // n * feature_count
    std::vector<std::uint8_t> labels; // n entries in [0, class_count)
    std::uint32_t feature_count = 0;  // H
    std::uint32_t class_count = 0;    // q
    std::string name;

    std::size_t size() const { return labels.size(); }
    const std::uint8_t* image(std::size_t idx) const {
        return pixels.data() + idx * feature_count;
    }
};

// Big-endian IDX pair (images magic 0x803, labels magic 0x801).
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

// One row per image: label,p0,...,p{H-1}. H inferred from the first row.
Dataset load_csv(const std::string& path);

// pixel >> (8 - M); truncation of the low bits.
Dataset quantize_dataset(const Dataset& ds, std::uint32_t quantization_bits);

// Deterministic stratified subsample keeping class balance.
Dataset subsample(const Dataset& ds, std::uint32_t per_class_limit, std::uint64_t seed);

} // namespace uhd
