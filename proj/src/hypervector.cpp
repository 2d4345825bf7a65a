#include "uhd/hypervector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <istream>
#include <ostream>

#include "uhd/unary.hpp"

namespace uhd {

namespace {
std::uint32_t word_count(std::uint32_t dimension) { return (dimension + 63) / 64; }

std::uint64_t tail_mask(std::uint32_t dimension) {
    const std::uint32_t rem = dimension & 63;
    return rem == 0 ? ~0ull : ((1ull << rem) - 1);
}

void check_same_dimension(std::uint32_t a, std::uint32_t b, const char* op) {
    if (a != b) {
        throw_error(errc::shape, std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                                     " vs " + std::to_string(b) + ")");
    }
}
} // namespace

PackedHypervector::PackedHypervector(std::uint32_t dimension)
    : dimension_(dimension), words_(word_count(dimension), 0) {
    if (dimension == 0) {
        throw_error(errc::domain, "PackedHypervector: dimension must be >= 1");
    }
}

PackedHypervector PackedHypervector::all_plus(std::uint32_t dimension) {
    PackedHypervector v(dimension);
    for (auto& w : v.words_) {
        w = ~0ull;
    }
    v.words_.back() &= tail_mask(dimension);
    return v;
}

void PackedHypervector::set_bit(std::uint32_t j, bool plus) {
    const std::uint64_t mask = 1ull << (j & 63);
    if (plus) {
        words_[j >> 6] |= mask;
    } else {
        words_[j >> 6] &= ~mask;
    }
}

PackedHypervector PackedHypervector::complement() const {
    PackedHypervector out(dimension_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        out.words_[w] = ~words_[w];
    }
    out.words_.back() &= tail_mask(dimension_);
    return out;
}

void PackedHypervector::serialize(std::ostream& out) const {
    const std::uint32_t d = dimension_;
    char hdr[4] = {static_cast<char>(d & 0xff), static_cast<char>((d >> 8) & 0xff),
                   static_cast<char>((d >> 16) & 0xff), static_cast<char>((d >> 24) & 0xff)};
    out.write(hdr, 4);
    for (std::uint64_t w : words_) {
        char b[8];
        for (int i = 0; i < 8; ++i) {
            b[i] = static_cast<char>((w >> (8 * i)) & 0xff);
        }
        out.write(b, 8);
    }
}

PackedHypervector PackedHypervector::deserialize(std::istream& in) {
    unsigned char hdr[4];
    if (!in.read(reinterpret_cast<char*>(hdr), 4)) {
        throw_error(errc::format, "hypervector: truncated dimension field");
    }
    const std::uint32_t d = static_cast<std::uint32_t>(hdr[0]) | (static_cast<std::uint32_t>(hdr[1]) << 8) |
                            (static_cast<std::uint32_t>(hdr[2]) << 16) |
                            (static_cast<std::uint32_t>(hdr[3]) << 24);
    if (d == 0) {
        throw_error(errc::format, "hypervector: zero dimension");
    }
    PackedHypervector v(d);
    for (auto& w : v.words_) {
        unsigned char b[8];
        if (!in.read(reinterpret_cast<char*>(b), 8)) {
            throw_error(errc::format, "hypervector: truncated payload");
        }
        w = 0;
        for (int i = 0; i < 8; ++i) {
            w |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        }
    }
    if ((v.words_.back() & ~tail_mask(d)) != 0) {
        throw_error(errc::format, "hypervector: nonzero padding bits");
    }
    return v;
}

PackedHypervector bind(const PackedHypervector& a, const PackedHypervector& b) {
    check_same_dimension(a.dimension(), b.dimension(), "bind");
    PackedHypervector out(a.dimension());
    auto aw = a.words();
    auto bw = b.words();
    auto ow = out.words();
    for (std::size_t w = 0; w < ow.size(); ++w) {
        ow[w] = ~(aw[w] ^ bw[w]); // XNOR: product of bipolar signs under +1 <-> 1
    }
    ow[ow.size() - 1] &= tail_mask(a.dimension());
    return out;
}

std::uint64_t hamming(const PackedHypervector& a, const PackedHypervector& b) {
    check_same_dimension(a.dimension(), b.dimension(), "hamming");
    auto aw = a.words();
    auto bw = b.words();
    std::uint64_t h = 0;
    for (std::size_t w = 0; w < aw.size(); ++w) {
        h += static_cast<std::uint64_t>(std::popcount(aw[w] ^ bw[w]));
    }
    return h;
}

std::uint64_t hamming_naive(const PackedHypervector& a, const PackedHypervector& b) {
    check_same_dimension(a.dimension(), b.dimension(), "hamming");
    std::uint64_t h = 0;
    for (std::uint32_t j = 0; j < a.dimension(); ++j) {
        h += a.bit(j) != b.bit(j) ? 1 : 0;
    }
    return h;
}

double cosine_similarity(const PackedHypervector& a, const PackedHypervector& b) {
    check_same_dimension(a.dimension(), b.dimension(), "cosine_similarity");
    const double d = static_cast<double>(a.dimension());
    return (d - 2.0 * static_cast<double>(hamming(a, b))) / d;
}

AccumulatorVector::AccumulatorVector(std::uint32_t dimension)
    : dimension_(dimension), sums_(dimension, 0) {
    if (dimension == 0) {
        throw_error(errc::domain, "AccumulatorVector: dimension must be >= 1");
    }
}

void AccumulatorVector::accumulate(const PackedHypervector& v) {
    check_same_dimension(dimension_, v.dimension(), "accumulate");
    auto vw = v.words();
    for (std::uint32_t base = 0; base < dimension_; base += 64) {
        std::uint64_t w = vw[base >> 6];
        const std::uint32_t n = std::min(64u, dimension_ - base);
        for (std::uint32_t k = 0; k < n; ++k) {
            sums_[base + k] += static_cast<std::int32_t>((w >> k) & 1u) * 2 - 1;
        }
    }
    ++contributions_;
}

void AccumulatorVector::accumulate_naive(const PackedHypervector& v) {
    check_same_dimension(dimension_, v.dimension(), "accumulate");
    for (std::uint32_t j = 0; j < dimension_; ++j) {
        sums_[j] += v.element(j);
    }
    ++contributions_;
}

void AccumulatorVector::add_counts(std::span<const std::uint16_t> ones, std::uint64_t contributions) {
    if (ones.size() != dimension_) {
        throw_error(errc::shape, "add_counts: count vector dimension mismatch");
    }
    // sums += 2*ones - contributions per element
    const auto c = static_cast<std::int32_t>(contributions);
    for (std::uint32_t j = 0; j < dimension_; ++j) {
        sums_[j] += 2 * static_cast<std::int32_t>(ones[j]) - c;
    }
    contributions_ += contributions;
}

void AccumulatorVector::load(std::span<const std::int32_t> sums, std::uint64_t contributions) {
    if (sums.size() != dimension_) {
        throw_error(errc::shape, "load: sum vector dimension mismatch");
    }
    std::copy(sums.begin(), sums.end(), sums_.begin());
    contributions_ = contributions;
}

void AccumulatorVector::merge(const AccumulatorVector& other) {
    check_same_dimension(dimension_, other.dimension_, "merge");
    for (std::uint32_t j = 0; j < dimension_; ++j) {
        sums_[j] += other.sums_[j];
    }
    contributions_ += other.contributions_;
}

PackedHypervector AccumulatorVector::binarize() const {
    if (contributions_ == 0) {
        throw_error(errc::state, "binarize: empty accumulator");
    }
    PackedHypervector out(dimension_);
    auto ow = out.words();
    for (std::uint32_t j = 0; j < dimension_; ++j) {
        if (sums_[j] >= 0) {
            ow[j >> 6] |= 1ull << (j & 63);
        }
    }
    return out;
}

int popcount_window_binarize(std::span<const PackedHypervector> window, std::uint32_t j) {
    if (window.empty()) {
        throw_error(errc::shape, "popcount_window_binarize: empty window");
    }
    const std::uint32_t d = window.front().dimension();
    if (j >= d) {
        throw_error(errc::shape, "popcount_window_binarize: bit index out of range");
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(window.size());
    for (const auto& v : window) {
        check_same_dimension(d, v.dimension(), "popcount_window_binarize");
        bits.push_back(v.bit(j) ? 1 : 0);
    }
    return masked_binarize_window(bits);
}

namespace {
// lut[n] holds the 4 bits of n spread into 16-bit lanes of one u64.
constexpr std::array<std::uint64_t, 16> make_nibble_lut() {
    std::array<std::uint64_t, 16> lut{};
    for (std::uint32_t n = 0; n < 16; ++n) {
        std::uint64_t v = 0;
        for (std::uint32_t k = 0; k < 4; ++k) {
            if ((n >> k) & 1u) {
                v |= 1ull << (16 * k);
            }
        }
        lut[n] = v;
    }
    return lut;
}
constexpr auto kNibbleLut = make_nibble_lut();
} // namespace

void add_bits_to_u16_counts(std::span<const std::uint64_t> words, std::uint32_t n_bits,
                            std::uint16_t* counts) {
    auto* packed = reinterpret_cast<std::uint64_t*>(counts);
    const std::uint32_t full = n_bits / 64;
    for (std::uint32_t w = 0; w < full; ++w) {
        std::uint64_t bits = words[w];
        std::uint64_t* dst = packed + w * 16;
        for (std::uint32_t k = 0; k < 16; ++k) {
            dst[k] += kNibbleLut[(bits >> (4 * k)) & 0xf];
        }
    }
    for (std::uint32_t j = full * 64; j < n_bits; ++j) {
        counts[j] += static_cast<std::uint16_t>((words[j >> 6] >> (j & 63)) & 1u);
    }
}

} // namespace uhd
