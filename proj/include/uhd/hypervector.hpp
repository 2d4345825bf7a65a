#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "uhd/errors.hpp"

namespace uhd {

// D-dimensional bipolar vector stored as packed bits, +1 <-> 1 and -1 <-> 0.
// Padding bits past D-1 in the last word are always zero.
class PackedHypervector {
public:
    PackedHypervector() = default;
    explicit PackedHypervector(std::uint32_t dimension);

    static PackedHypervector all_plus(std::uint32_t dimension);
    static PackedHypervector all_minus(std::uint32_t dimension) {
        return PackedHypervector(dimension);
    }

    std::uint32_t dimension() const { return dimension_; }
    bool bit(std::uint32_t j) const { return (words_[j >> 6] >> (j & 63)) & 1u; }
    void set_bit(std::uint32_t j, bool plus);
    int element(std::uint32_t j) const { return bit(j) ? 1 : -1; }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    PackedHypervector complement() const;

    // Little-endian packed words prefixed by a u32 dimension field.
    void serialize(std::ostream& out) const;
    static PackedHypervector deserialize(std::istream& in);

    friend bool operator==(const PackedHypervector&, const PackedHypervector&) = default;

private:
    std::uint32_t dimension_ = 0;
    std::vector<std::uint64_t> words_;
};

// Bipolar element-wise product. Under the +1 <-> 1 bit convention the product
// of signs is the XNOR of the bits.
PackedHypervector bind(const PackedHypervector& a, const PackedHypervector& b);

std::uint64_t hamming(const PackedHypervector& a, const PackedHypervector& b);
// Per-bit loop kept as the oracle for the word-level kernel.
std::uint64_t hamming_naive(const PackedHypervector& a, const PackedHypervector& b);

// For bipolar vectors cosine reduces to (D - 2*hamming) / D.
double cosine_similarity(const PackedHypervector& a, const PackedHypervector& b);

// D signed sums of bipolar contributions.
class AccumulatorVector {
public:
    AccumulatorVector() = default;
    explicit AccumulatorVector(std::uint32_t dimension);

    std::uint32_t dimension() const { return dimension_; }
    std::uint64_t contributions() const { return contributions_; }
    std::int32_t sum(std::uint32_t j) const { return sums_[j]; }
    std::span<const std::int32_t> sums() const { return sums_; }
    std::span<std::int32_t> sums() { return sums_; }

    void accumulate(const PackedHypervector& v);
    // Equivalent bit-by-bit path, used as a test oracle.
    void accumulate_naive(const PackedHypervector& v);
    // Adopts precomputed ones-counts over `contributions` bipolar vectors.
    void add_counts(std::span<const std::uint16_t> ones, std::uint64_t contributions);
    // Element-wise merge of a sibling accumulator (parallel training).
    void merge(const AccumulatorVector& other);
    // Adopts externally computed sums (histogram training path).
    void load(std::span<const std::int32_t> sums, std::uint64_t contributions);

    // bit j = 1 iff sums[j] >= 0 (tie binarizes to +1).
    PackedHypervector binarize() const;

    friend bool operator==(const AccumulatorVector&, const AccumulatorVector&) = default;

private:
    std::uint32_t dimension_ = 0;
    std::uint64_t contributions_ = 0;
    std::vector<std::int32_t> sums_;
};

// Bit j of binarize(accumulate over the window), computed through the
// masked-binarizer path of the `unary` module.
int popcount_window_binarize(std::span<const PackedHypervector> window, std::uint32_t j);

// Adds the 1-bits of `words` (n_bits wide) into packed u16 lane counters;
// counts must hold n_bits entries. LUT kernel shared by the encoders.
void add_bits_to_u16_counts(std::span<const std::uint64_t> words, std::uint32_t n_bits,
                            std::uint16_t* counts);

} // namespace uhd
