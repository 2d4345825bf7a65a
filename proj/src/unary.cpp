#include "uhd/unary.hpp"

namespace uhd {

namespace {
std::uint32_t word_count(std::uint32_t length) { return (length + 63) / 64; }

// Mask selecting the valid positions of the last word.
std::uint64_t tail_mask(std::uint32_t length) {
    const std::uint32_t rem = length & 63;
    return rem == 0 ? ~0ull : ((1ull << rem) - 1);
}
} // namespace

UnaryStream UnaryStream::encode(std::uint32_t value, std::uint32_t length) {
    if (length == 0) {
        throw_error(errc::domain, "UnaryStream: length must be >= 1");
    }
    if (value > length) {
        throw_error(errc::domain, "UnaryStream: value " + std::to_string(value) +
                                      " out of range [0," + std::to_string(length) + "]");
    }
    UnaryStream s;
    s.length_ = length;
    s.value_ = value;
    s.words_.assign(word_count(length), 0);
    for (std::uint32_t p = length - value; p < length; ++p) {
        s.words_[p >> 6] |= 1ull << (p & 63);
    }
    return s;
}

UnaryStream UnaryStream::from_bits(const std::vector<bool>& bits) {
    if (bits.empty()) {
        throw_error(errc::domain, "UnaryStream: empty bit sequence");
    }
    std::uint32_t ones = 0;
    for (bool b : bits) {
        ones += b ? 1 : 0;
    }
    // thermometer: every 1 must be followed by 1s only
    bool seen_one = false;
    for (bool b : bits) {
        if (seen_one && !b) {
            throw_error(errc::domain, "UnaryStream: input is not a thermometer stream");
        }
        seen_one = seen_one || b;
    }
    return encode(ones, static_cast<std::uint32_t>(bits.size()));
}

std::string UnaryStream::to_string() const {
    std::string out(length_, '0');
    for (std::uint32_t p = 0; p < length_; ++p) {
        if (bit(p)) {
            out[p] = '1';
        }
    }
    return out;
}

int unary_compare_ge(const UnaryStream& data, const UnaryStream& sobol) {
    if (data.length() != sobol.length()) {
        throw_error(errc::shape, "unary_compare_ge: stream length mismatch");
    }
    const auto dw = data.words();
    const auto sw = sobol.words();
    const std::uint64_t tmask = tail_mask(data.length());
    for (std::size_t w = 0; w < dw.size(); ++w) {
        const std::uint64_t valid = (w + 1 == dw.size()) ? tmask : ~0ull;
        const std::uint64_t m = dw[w] & sw[w];     // minimum of the two streams
        const std::uint64_t o = m | ~sw[w];        // equal to all-1s iff min == sobol
        if ((o & valid) != valid) {
            return 0;
        }
    }
    return 1;
}

UnaryStream counter_comparator_reference(std::uint32_t value, std::uint32_t length) {
    if (length == 0) {
        throw_error(errc::domain, "counter_comparator_reference: length must be >= 1");
    }
    if (value > length) {
        throw_error(errc::domain, "counter_comparator_reference: value out of range");
    }
    std::vector<bool> bits(length);
    for (std::uint32_t k = 0; k < length; ++k) {
        // cycle k of an M-bit counter against the register value; align the
        // emitted 1s to the printed tail so the convention matches encode()
        bits[length - 1 - k] = k < value;
    }
    return UnaryStream::from_bits(bits);
}

UnaryStreamTable::UnaryStreamTable(std::uint32_t quantization_bits) {
    if (quantization_bits < 1 || quantization_bits > 16) {
        throw_error(errc::domain, "UnaryStreamTable: quantization bits must be in [1,16]");
    }
    length_ = 1u << quantization_bits;
    entries_.reserve(length_);
    // M-bit data indexes values 0 .. 2^M - 1; value N itself is unreachable
    // from quantized inputs, so the table holds 2^M entries.
    for (std::uint32_t v = 0; v < length_; ++v) {
        entries_.push_back(UnaryStream::encode(v, length_));
    }
}

const UnaryStream& UnaryStreamTable::fetch(std::uint32_t value) const {
    if (value >= entries_.size()) {
        throw_error(errc::domain, "UnaryStreamTable: index " + std::to_string(value) + " out of range");
    }
    return entries_[value];
}

std::string UnaryStreamTable::dump() const {
    std::string out;
    for (const auto& e : entries_) {
        out += e.to_string();
        out += '\n';
    }
    return out;
}

MaskedBinarizer::MaskedBinarizer(std::uint32_t capacity) : capacity_(capacity) {
    if (capacity < 1) {
        throw_error(errc::domain, "MaskedBinarizer: capacity must be >= 1");
    }
    threshold_ = (capacity + 1) / 2; // TOB, ceil(H/2)
}

void MaskedBinarizer::step(bool increment) {
    if (counter_ + (increment ? 1u : 0u) > capacity_) {
        throw_error(errc::logic, "MaskedBinarizer: counter overflow past capacity (miscounted window)");
    }
    counter_ += increment ? 1u : 0u;
    // Hardwired mask at TOB: the counter is monotone, and the first value v
    // with (v AND TOB) == TOB is TOB itself.
    if ((counter_ & threshold_) == threshold_) {
        latch_ = true;
    }
}

void MaskedBinarizer::reset() {
    counter_ = 0;
    latch_ = false;
}

int masked_binarize_window(std::span<const std::uint8_t> bits) {
    if (bits.empty()) {
        throw_error(errc::shape, "masked_binarize_window: empty window");
    }
    MaskedBinarizer bin(static_cast<std::uint32_t>(bits.size()));
    for (std::uint8_t b : bits) {
        bin.step(b != 0);
    }
    return bin.sign();
}

} // namespace uhd
