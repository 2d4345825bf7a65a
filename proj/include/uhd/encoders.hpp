#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "uhd/counters.hpp"
#include "uhd/hypervector.hpp"
#include "uhd/sobol.hpp"
#include "uhd/unary.hpp"

namespace uhd {

enum class GeneratorKind {
    general_prng, // seeded 64-bit Mersenne twister
    lfsr,         // 32-bit Fibonacci LFSR
};

enum class ComparatorPath {
    scalar_fast,      // integer >= comparison, production path
    gate_level_unary, // Fig-4 unary comparator, fidelity/counting path
};

// Baseline HDC encoder: pseudo-random position hypervectors bound to
// threshold-generated level hypervectors.
class BaselineEncoderState {
public:
    static BaselineEncoderState create(std::uint32_t dimension, std::uint32_t feature_count,
                                       std::uint32_t level_bits, std::uint64_t seed,
                                       GeneratorKind kind = GeneratorKind::general_prng);

    std::uint32_t dimension() const { return dimension_; }
    std::uint32_t feature_count() const { return feature_count_; }
    std::uint32_t level_bits() const { return level_bits_; }
    std::uint64_t seed() const { return seed_; }

    const PackedHypervector& position(std::uint32_t i) const { return positions_[i]; }
    // Level index k in [0, 2^n]; bit j = +1 iff level_base[j] <= k * D / 2^n.
    PackedHypervector generate_level_hypervector(std::uint32_t k) const;

    // Sum of bind(L(pixel_i), P_i) over all pixels. Pixels must be quantized
    // to level_bits.
    AccumulatorVector encode_image(std::span<const std::uint8_t> image,
                                   OpCounters* counters = nullptr) const;

private:
    std::uint32_t dimension_ = 0;
    std::uint32_t feature_count_ = 0;
    std::uint32_t level_bits_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<PackedHypervector> positions_;
    std::vector<double> level_base_; // D reals in [0, D]
    std::vector<PackedHypervector> levels_; // precomputed L(0) .. L(2^n)
};

// Standalone position-hypervector draw (seed-derived stream comparison
// against t = 0.5).
PackedHypervector generate_position_hypervector(std::uint64_t seed, std::uint32_t dimension,
                                                GeneratorKind kind = GeneratorKind::general_prng);

// uHD encoder: Sobol-indexed level hypervectors only, no binding.
class UhdEncoderState {
public:
    static UhdEncoderState create(SobolTable table,
                                  ComparatorPath path = ComparatorPath::scalar_fast);

    std::uint32_t dimension() const { return table_.cols(); }
    std::uint32_t feature_count() const { return table_.rows(); }
    std::uint32_t quantization_bits() const { return table_.config().quantization_bits; }
    const SobolTable& table() const { return table_; }
    const UnaryStreamTable& ust() const { return *ust_; }
    ComparatorPath comparator_path() const { return path_; }

    // Level hypervector of pixel position i at quantized intensity v,
    // computed on the fly: bit j = +1 iff v >= table[i][j].
    PackedHypervector level_vector(std::uint32_t i, std::uint32_t v) const;

    // bank[i][v], bit-identical to level_vector. Fails with a resource error
    // naming the required bytes when the bank exceeds the budget.
    void build_level_bank(std::uint64_t memory_budget_bytes = 1ull << 30);
    bool has_level_bank() const { return !bank_.empty(); }
    const PackedHypervector& bank_vector(std::uint32_t i, std::uint32_t v) const;

    // Sum of the per-pixel level hypervectors; no binding, no position
    // hypervectors. Pixels must be quantized to M bits.
    AccumulatorVector encode_image(std::span<const std::uint8_t> image,
                                   OpCounters* counters = nullptr) const;

private:
    SobolTable table_;
    ComparatorPath path_ = ComparatorPath::scalar_fast;
    std::shared_ptr<const UnaryStreamTable> ust_;
    std::vector<PackedHypervector> bank_; // i * 2^M + v
};

} // namespace uhd
