#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "uhd/encoders.hpp"

using namespace uhd;

TEST_CASE("position hypervector determinism and balance") {
    const auto a = generate_position_hypervector(42, 8);
    const auto b = generate_position_hypervector(42, 8);
    CHECK(a == b);

    const std::uint32_t d = 10000;
    const auto v = generate_position_hypervector(7, d);
    std::uint32_t ones = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
        ones += v.bit(j) ? 1 : 0;
    }
    const double sigma = std::sqrt(static_cast<double>(d)) / 2.0;
    CHECK(std::abs(static_cast<double>(ones) - d / 2.0) <= 3.0 * sigma);

    const auto w = generate_position_hypervector(8, d);
    const double dist = static_cast<double>(hamming(v, w)) / d;
    CHECK(std::abs(dist - 0.5) <= 3.0 * sigma / d);
}

TEST_CASE("baseline level hypervectors") {
    const auto st = BaselineEncoderState::create(256, 4, 4, 5);
    SUBCASE("extremes") {
        CHECK(st.generate_level_hypervector(0) == PackedHypervector::all_minus(256));
        CHECK(st.generate_level_hypervector(16) == PackedHypervector::all_plus(256));
    }
    SUBCASE("monotone nesting") {
        for (std::uint32_t k = 0; k < 16; ++k) {
            const auto lo = st.generate_level_hypervector(k);
            const auto hi = st.generate_level_hypervector(k + 1);
            for (std::uint32_t j = 0; j < 256; ++j) {
                if (lo.bit(j)) {
                    CHECK(hi.bit(j));
                }
            }
        }
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(st.generate_level_hypervector(17), error);
    }
}

TEST_CASE("baseline encoding matches the dense bipolar oracle") {
    const std::uint32_t d = 16;
    const std::uint32_t h = 2;
    const auto st = BaselineEncoderState::create(d, h, 2, 9);
    const std::vector<std::uint8_t> image{3, 1};
    const auto acc = st.encode_image(image);
    for (std::uint32_t j = 0; j < d; ++j) {
        int want = 0;
        for (std::uint32_t i = 0; i < h; ++i) {
            const auto level = st.generate_level_hypervector(image[i]);
            want += level.element(j) * st.position(i).element(j);
        }
        CHECK(acc.sum(j) == want);
    }
    CHECK(acc == st.encode_image(image));
    CHECK_THROWS_AS(st.encode_image(std::vector<std::uint8_t>{1}), error);
}

TEST_CASE("baseline constant-zero image sums to complemented positions") {
    const std::uint32_t d = 32;
    const std::uint32_t h = 3;
    const auto st = BaselineEncoderState::create(d, h, 4, 11);
    const std::vector<std::uint8_t> image(h, 0);
    const auto acc = st.encode_image(image);
    AccumulatorVector want(d);
    for (std::uint32_t i = 0; i < h; ++i) {
        want.accumulate(st.position(i).complement());
    }
    CHECK(acc == want);
}

static UhdEncoderState make_uhd(std::uint32_t h, std::uint32_t d,
                                ComparatorPath path = ComparatorPath::scalar_fast) {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    SobolConfig cfg;
    cfg.dimensions = h;
    cfg.points_per_dimension = d;
    cfg.quantization_bits = 4;
    return UhdEncoderState::create(SobolTable::build(dirs, cfg), path);
}

TEST_CASE("uhd level vector saturation and zero-pixel balance") {
    auto st = make_uhd(4, 1024);
    CHECK(st.level_vector(1, 15) == PackedHypervector::all_plus(1024));
    const auto zero = st.level_vector(2, 0);
    std::uint32_t ones = 0;
    for (std::uint32_t j = 0; j < 1024; ++j) {
        ones += zero.bit(j) ? 1 : 0;
    }
    // +1 exactly where the quantized scalar is 0: D / 2^M dimensions; the
    // skipped zero point shifts the windowed count by at most one level slot
    CHECK(ones >= 1024 / 16 - 1);
    CHECK(ones <= 1024 / 16);
}

TEST_CASE("uhd level-similarity law at D=1024") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    SobolConfig cfg;
    cfg.dimensions = 32;
    cfg.points_per_dimension = 1024;
    cfg.quantization_bits = 4;
    cfg.skip_initial_zero = false;
    auto st = UhdEncoderState::create(SobolTable::build(dirs, cfg));
    for (std::uint32_t i = 0; i < 32; ++i) {
        for (std::uint32_t a = 0; a < 16; ++a) {
            for (std::uint32_t b = a; b < 16; ++b) {
                const auto la = st.level_vector(i, a);
                const auto lb = st.level_vector(i, b);
                CHECK(hamming(la, lb) == static_cast<std::uint64_t>(b - a) * 64);
            }
        }
    }
}

TEST_CASE("uhd gate-level path equals scalar path") {
    auto fast = make_uhd(6, 128, ComparatorPath::scalar_fast);
    auto gate = make_uhd(6, 128, ComparatorPath::gate_level_unary);
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> pix(0, 15);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<std::uint8_t> image(6);
        for (auto& p : image) {
            p = static_cast<std::uint8_t>(pix(rng));
        }
        CHECK(fast.encode_image(image) == gate.encode_image(image));
    }
}

TEST_CASE("uhd level bank is bit-identical to the on-the-fly path") {
    auto st = make_uhd(8, 256);
    auto banked = make_uhd(8, 256);
    banked.build_level_bank();
    CHECK(banked.has_level_bank());
    for (std::uint32_t i = 0; i < 8; ++i) {
        for (std::uint32_t v = 0; v < 16; ++v) {
            CHECK(banked.bank_vector(i, v) == st.level_vector(i, v));
        }
    }
    std::mt19937 rng(14);
    std::uniform_int_distribution<int> pix(0, 15);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<std::uint8_t> image(8);
        for (auto& p : image) {
            p = static_cast<std::uint8_t>(pix(rng));
        }
        CHECK(st.encode_image(image) == banked.encode_image(image));
    }
}

TEST_CASE("uhd bank memory budget failure names the required bytes") {
    auto st = make_uhd(8, 256);
    try {
        st.build_level_bank(16);
        FAIL("expected resource error");
    } catch (const error& e) {
        CHECK(e.code() == errc::resource);
        CHECK(std::string(e.what()).find("bytes") != std::string::npos);
    }
}

TEST_CASE("uhd bank vectors are monotone in intensity") {
    auto st = make_uhd(4, 128);
    st.build_level_bank();
    for (std::uint32_t i = 0; i < 4; ++i) {
        for (std::uint32_t v = 0; v < 15; ++v) {
            const auto& lo = st.bank_vector(i, v);
            const auto& hi = st.bank_vector(i, v + 1);
            for (std::uint32_t j = 0; j < 128; ++j) {
                if (lo.bit(j)) {
                    CHECK(hi.bit(j));
                }
            }
        }
    }
}

TEST_CASE("uhd op counters: no binds, comparisons or fetches") {
    auto st = make_uhd(4, 64);
    const std::vector<std::uint8_t> image{0, 5, 10, 15};
    OpCounters c{};
    st.encode_image(image, &c);
    CHECK(c.bind_ops == 0);
    CHECK(c.comparisons == 4 * 64);
    auto banked = make_uhd(4, 64);
    banked.build_level_bank();
    OpCounters cb{};
    banked.encode_image(image, &cb);
    CHECK(cb.bind_ops == 0);
    CHECK(cb.comparisons == 0);
    CHECK(cb.memory_fetches == 4);
}
