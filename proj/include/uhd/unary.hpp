#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uhd/errors.hpp"

namespace uhd {

// Thermometer bit-stream of fixed length N. The 1s are right-aligned as
// printed MSB-first: value 2 at N=7 reads "0000011". Internally position p
// (0 = leftmost printed) lives at bit p of the packed words.
class UnaryStream {
public:
    static UnaryStream encode(std::uint32_t value, std::uint32_t length);
    // Validates the thermometer property; rejects anything else.
    static UnaryStream from_bits(const std::vector<bool>& bits);

    std::uint32_t length() const { return length_; }
    std::uint32_t value() const { return value_; }
    bool bit(std::uint32_t position) const {
        return (words_[position >> 6] >> (position & 63)) & 1u;
    }
    std::span<const std::uint64_t> words() const { return words_; }

    std::string to_string() const;

    friend bool operator==(const UnaryStream&, const UnaryStream&) = default;

private:
    std::uint32_t length_ = 0;
    std::uint32_t value_ = 0;
    std::vector<std::uint64_t> words_;
};

// Gate-level comparator: m = data AND sobol, o = m OR NOT(sobol), output is
// the AND-reduction of o. Returns 1 iff value(data) >= value(sobol).
int unary_compare_ge(const UnaryStream& data, const UnaryStream& sobol);

// N clock cycles of the counter/comparator generator: cycle k emits 1 iff
// k < value. Reference oracle for the stream table.
UnaryStream counter_comparator_reference(std::uint32_t value, std::uint32_t length);

// Pre-stored streams for values 0 .. 2^M - 1, each of length N = 2^M.
class UnaryStreamTable {
public:
    explicit UnaryStreamTable(std::uint32_t quantization_bits);

    std::uint32_t stream_length() const { return length_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(entries_.size()); }
    const UnaryStream& fetch(std::uint32_t value) const;

    // Debug artifact: one stream per line, MSB-first 0/1 characters.
    std::string dump() const;

private:
    std::uint32_t length_;
    std::vector<UnaryStream> entries_;
};

// Sticky-latch binarizer of Fig-5 style: a counter with a hardwired mask at
// TOB = ceil(H/2). The latch sets when (counter AND mask) == mask and never
// clears within a window.
class MaskedBinarizer {
public:
    explicit MaskedBinarizer(std::uint32_t capacity);

    std::uint32_t capacity() const { return capacity_; }
    std::uint32_t threshold() const { return threshold_; }
    std::uint32_t counter() const { return counter_; }
    bool latch() const { return latch_; }

    void step(bool increment);
    int sign() const { return latch_ ? 1 : 0; }
    void reset();

private:
    std::uint32_t capacity_;
    std::uint32_t threshold_;
    std::uint32_t counter_ = 0;
    bool latch_ = false;
};

// Feeds all H bits of a window through a MaskedBinarizer.
// Returns 1 iff popcount(bits) >= ceil(H/2).
int masked_binarize_window(std::span<const std::uint8_t> bits);

} // namespace uhd
