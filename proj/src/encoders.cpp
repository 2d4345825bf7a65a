#include "uhd/encoders.hpp"

#include <random>

namespace uhd {

namespace {

// 32-bit Fibonacci LFSR, taps for a maximal-length polynomial
// x^32 + x^22 + x^2 + x + 1.
class Lfsr32 {
public:
    explicit Lfsr32(std::uint64_t seed) {
        state_ = static_cast<std::uint32_t>(seed ^ (seed >> 32));
        if (state_ == 0) {
            state_ = 0xace1u;
        }
    }

    std::uint32_t next() {
        const std::uint32_t bit =
            ((state_ >> 31) ^ (state_ >> 21) ^ (state_ >> 1) ^ state_) & 1u;
        state_ = (state_ << 1) | bit;
        return state_;
    }

    double uniform() {
        return static_cast<double>(next()) * (1.0 / 4294967296.0);
    }

private:
    std::uint32_t state_;
};

class RandomStream {
public:
    RandomStream(std::uint64_t seed, GeneratorKind kind) : kind_(kind), mt_(seed), lfsr_(seed) {}

    double uniform() {
        if (kind_ == GeneratorKind::lfsr) {
            return lfsr_.uniform();
        }
        return std::uniform_real_distribution<double>(0.0, 1.0)(mt_);
    }

private:
    GeneratorKind kind_;
    std::mt19937_64 mt_;
    Lfsr32 lfsr_;
};

PackedHypervector draw_position(RandomStream& rng, std::uint32_t dimension) {
    PackedHypervector v(dimension);
    for (std::uint32_t j = 0; j < dimension; ++j) {
        // R > t sets -1; otherwise +1 (t = 0.5)
        if (rng.uniform() <= 0.5) {
            v.set_bit(j, true);
        }
    }
    return v;
}

} // namespace

PackedHypervector generate_position_hypervector(std::uint64_t seed, std::uint32_t dimension,
                                                GeneratorKind kind) {
    RandomStream rng(seed, kind);
    return draw_position(rng, dimension);
}

BaselineEncoderState BaselineEncoderState::create(std::uint32_t dimension,
                                                  std::uint32_t feature_count,
                                                  std::uint32_t level_bits, std::uint64_t seed,
                                                  GeneratorKind kind) {
    if (dimension < 1 || feature_count < 1) {
        throw_error(errc::domain, "baseline encoder: dimension and feature count must be >= 1");
    }
    if (level_bits < 1 || level_bits > 8) {
        throw_error(errc::domain, "baseline encoder: level bits must be in [1,8]");
    }
    if (dimension < (1u << level_bits)) {
        throw_error(errc::domain, "baseline encoder: requires D >= 2^n");
    }
    BaselineEncoderState st;
    st.dimension_ = dimension;
    st.feature_count_ = feature_count;
    st.level_bits_ = level_bits;
    st.seed_ = seed;

    RandomStream rng(seed, kind);
    st.positions_.reserve(feature_count);
    for (std::uint32_t i = 0; i < feature_count; ++i) {
        st.positions_.push_back(draw_position(rng, dimension));
    }
    st.level_base_.resize(dimension);
    for (std::uint32_t j = 0; j < dimension; ++j) {
        st.level_base_[j] = rng.uniform() * static_cast<double>(dimension);
    }
    const std::uint32_t kmax = 1u << level_bits;
    st.levels_.reserve(kmax + 1);
    for (std::uint32_t k = 0; k <= kmax; ++k) {
        PackedHypervector lv(dimension);
        const double threshold =
            static_cast<double>(k) * static_cast<double>(dimension) / static_cast<double>(kmax);
        for (std::uint32_t j = 0; j < dimension; ++j) {
            if (st.level_base_[j] <= threshold) {
                lv.set_bit(j, true);
            }
        }
        st.levels_.push_back(std::move(lv));
    }
    return st;
}

PackedHypervector BaselineEncoderState::generate_level_hypervector(std::uint32_t k) const {
    if (k > (1u << level_bits_)) {
        throw_error(errc::domain, "level index " + std::to_string(k) + " out of range [0,2^n]");
    }
    return levels_[k];
}

AccumulatorVector BaselineEncoderState::encode_image(std::span<const std::uint8_t> image,
                                                     OpCounters* counters) const {
    if (image.size() != feature_count_) {
        throw_error(errc::shape, "encode_image: expected " + std::to_string(feature_count_) +
                                     " pixels, got " + std::to_string(image.size()));
    }
    const std::uint32_t level_cap = 1u << level_bits_;
    std::vector<std::uint16_t> ones(dimension_, 0);
    std::vector<std::uint64_t> bound((dimension_ + 63) / 64);
    const std::uint64_t tail =
        (dimension_ & 63) == 0 ? ~0ull : ((1ull << (dimension_ & 63)) - 1);
    for (std::uint32_t i = 0; i < feature_count_; ++i) {
        const std::uint32_t k = image[i];
        if (k > level_cap) {
            throw_error(errc::domain, "pixel value exceeds 2^n, dataset not quantized");
        }
        const auto lw = levels_[k].words();
        const auto pw = positions_[i].words();
        for (std::size_t w = 0; w < bound.size(); ++w) {
            bound[w] = ~(lw[w] ^ pw[w]);
        }
        bound.back() &= tail;
        add_bits_to_u16_counts(bound, dimension_, ones.data());
    }
    if (counters != nullptr) {
        counters->bind_ops += feature_count_;
        counters->accumulator_updates += feature_count_;
        counters->memory_fetches += 2ull * feature_count_; // one L and one P per pixel
    }
    AccumulatorVector acc(dimension_);
    acc.add_counts(ones, feature_count_);
    return acc;
}

UhdEncoderState UhdEncoderState::create(SobolTable table, ComparatorPath path) {
    UhdEncoderState st;
    st.ust_ = std::make_shared<const UnaryStreamTable>(table.config().quantization_bits);
    st.table_ = std::move(table);
    st.path_ = path;
    return st;
}

PackedHypervector UhdEncoderState::level_vector(std::uint32_t i, std::uint32_t v) const {
    const std::uint32_t d = dimension();
    if (i >= feature_count() || v >= table_.levels()) {
        throw_error(errc::domain, "level_vector: index out of range");
    }
    PackedHypervector out(d);
    const auto* row = table_.row_data(i);
    if (path_ == ComparatorPath::gate_level_unary) {
        const UnaryStream& data = ust_->fetch(v);
        for (std::uint32_t j = 0; j < d; ++j) {
            if (unary_compare_ge(data, ust_->fetch(row[j])) != 0) {
                out.set_bit(j, true);
            }
        }
    } else {
        for (std::uint32_t j = 0; j < d; ++j) {
            if (v >= row[j]) {
                out.set_bit(j, true);
            }
        }
    }
    return out;
}

void UhdEncoderState::build_level_bank(std::uint64_t memory_budget_bytes) {
    const std::uint64_t levels = table_.levels();
    const std::uint64_t bytes =
        static_cast<std::uint64_t>(feature_count()) * levels * ((dimension() + 63) / 64) * 8;
    if (bytes > memory_budget_bytes) {
        throw_error(errc::resource, "level bank needs " + std::to_string(bytes) +
                                        " bytes, budget is " + std::to_string(memory_budget_bytes));
    }
    bank_.clear();
    bank_.reserve(static_cast<std::size_t>(feature_count()) * levels);
    for (std::uint32_t i = 0; i < feature_count(); ++i) {
        for (std::uint32_t v = 0; v < levels; ++v) {
            bank_.push_back(level_vector(i, v));
        }
    }
}

const PackedHypervector& UhdEncoderState::bank_vector(std::uint32_t i, std::uint32_t v) const {
    if (bank_.empty()) {
        throw_error(errc::state, "level bank not built");
    }
    return bank_[static_cast<std::size_t>(i) * table_.levels() + v];
}

AccumulatorVector UhdEncoderState::encode_image(std::span<const std::uint8_t> image,
                                                OpCounters* counters) const {
    const std::uint32_t h = feature_count();
    const std::uint32_t d = dimension();
    if (image.size() != h) {
        throw_error(errc::shape, "encode_image: expected " + std::to_string(h) + " pixels, got " +
                                     std::to_string(image.size()));
    }
    const std::uint32_t levels = table_.levels();
    std::vector<std::uint16_t> ones(d, 0);
    if (!bank_.empty()) {
        for (std::uint32_t i = 0; i < h; ++i) {
            if (image[i] >= levels) {
                throw_error(errc::domain, "pixel value exceeds 2^M - 1, dataset not quantized");
            }
            const auto& lv = bank_[static_cast<std::size_t>(i) * levels + image[i]];
            add_bits_to_u16_counts(lv.words(), d, ones.data());
        }
        if (counters != nullptr) {
            counters->memory_fetches += h;
            counters->accumulator_updates += h;
        }
    } else {
        std::vector<std::uint64_t> bits((d + 63) / 64);
        for (std::uint32_t i = 0; i < h; ++i) {
            const std::uint32_t v = image[i];
            if (v >= levels) {
                throw_error(errc::domain, "pixel value exceeds 2^M - 1, dataset not quantized");
            }
            std::fill(bits.begin(), bits.end(), 0);
            const auto* row = table_.row_data(i);
            if (path_ == ComparatorPath::gate_level_unary) {
                const UnaryStream& data = ust_->fetch(v);
                for (std::uint32_t j = 0; j < d; ++j) {
                    if (unary_compare_ge(data, ust_->fetch(row[j])) != 0) {
                        bits[j >> 6] |= 1ull << (j & 63);
                    }
                }
            } else {
                for (std::uint32_t j = 0; j < d; ++j) {
                    if (v >= row[j]) {
                        bits[j >> 6] |= 1ull << (j & 63);
                    }
                }
            }
            add_bits_to_u16_counts(bits, d, ones.data());
        }
        if (counters != nullptr) {
            counters->comparisons += static_cast<std::uint64_t>(h) * d;
            counters->accumulator_updates += h;
        }
    }
    AccumulatorVector acc(d);
    acc.add_counts(ones, h);
    return acc;
}

} // namespace uhd
