#include "doctest.h"

#include <random>
#include <sstream>
#include <vector>

#include "uhd/hypervector.hpp"

using namespace uhd;

namespace {

PackedHypervector random_vector(std::mt19937& rng, std::uint32_t d) {
    PackedHypervector v(d);
    std::bernoulli_distribution coin(0.5);
    for (std::uint32_t j = 0; j < d; ++j) {
        v.set_bit(j, coin(rng));
    }
    return v;
}

} // namespace

TEST_CASE("bind identities") {
    std::mt19937 rng(1);
    const auto v = random_vector(rng, 70);
    CHECK(bind(v, v) == PackedHypervector::all_plus(70));
    CHECK(bind(v, PackedHypervector::all_plus(70)) == v);
    const auto w = random_vector(rng, 70);
    CHECK(bind(v, w) == bind(w, v));
    CHECK_THROWS_AS(bind(v, random_vector(rng, 71)), error);
}

TEST_CASE("bind matches the bipolar product oracle at D=64") {
    std::mt19937 rng(2);
    const auto a = random_vector(rng, 64);
    const auto b = random_vector(rng, 64);
    const auto c = bind(a, b);
    for (std::uint32_t j = 0; j < 64; ++j) {
        CHECK(c.element(j) == a.element(j) * b.element(j));
    }
}

TEST_CASE("accumulate matches dense integer sums") {
    std::mt19937 rng(3);
    const std::uint32_t d = 32;
    AccumulatorVector acc(d);
    AccumulatorVector naive(d);
    std::vector<std::vector<int>> dense;
    for (int k = 0; k < 5; ++k) {
        const auto v = random_vector(rng, d);
        acc.accumulate(v);
        naive.accumulate_naive(v);
        std::vector<int> row(d);
        for (std::uint32_t j = 0; j < d; ++j) {
            row[j] = v.element(j);
        }
        dense.push_back(row);
    }
    CHECK(acc == naive);
    for (std::uint32_t j = 0; j < d; ++j) {
        int want = 0;
        for (const auto& row : dense) {
            want += row[j];
        }
        CHECK(acc.sum(j) == want);
        // parity invariant
        CHECK(((acc.sum(j) % 2 + 2) % 2) ==
              static_cast<int>(acc.contributions() % 2));
        CHECK(std::abs(acc.sum(j)) <= static_cast<int>(acc.contributions()));
    }
}

TEST_CASE("cancellation and single-vector majority") {
    std::mt19937 rng(4);
    const auto v = random_vector(rng, 48);
    AccumulatorVector acc(48);
    acc.accumulate(v);
    CHECK(acc.binarize() == v);
    acc.accumulate(v.complement());
    for (std::uint32_t j = 0; j < 48; ++j) {
        CHECK(acc.sum(j) == 0);
    }
    CHECK(acc.binarize() == PackedHypervector::all_plus(48));
}

TEST_CASE("binarize sign with tie to plus") {
    AccumulatorVector acc(3);
    acc.load(std::vector<std::int32_t>{3, -1, 0}, 3);
    const auto b = acc.binarize();
    CHECK(b.bit(0));
    CHECK(!b.bit(1));
    CHECK(b.bit(2));
    AccumulatorVector empty(3);
    CHECK_THROWS_AS(empty.binarize(), error);
}

TEST_CASE("binarize is invariant to positive scaling of sums") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dist(-9, 9);
    std::vector<std::int32_t> sums(40);
    std::vector<std::int32_t> scaled(40);
    for (std::uint32_t j = 0; j < 40; ++j) {
        sums[j] = dist(rng);
        scaled[j] = sums[j] * 7;
    }
    AccumulatorVector a(40);
    AccumulatorVector b(40);
    a.load(sums, 9);
    b.load(scaled, 63);
    CHECK(a.binarize() == b.binarize());
}

TEST_CASE("hamming and cosine") {
    std::mt19937 rng(5);
    const auto v = random_vector(rng, 128);
    CHECK(hamming(v, v) == 0);
    CHECK(hamming(v, v.complement()) == 128);
    const auto w = random_vector(rng, 128);
    CHECK(hamming(v, w) == hamming_naive(v, w));
    CHECK(cosine_similarity(v, v) == doctest::Approx(1.0));
    CHECK(cosine_similarity(v, v.complement()) == doctest::Approx(-1.0));
}

TEST_CASE("cosine matches the floating-point dot product oracle at D=256") {
    std::mt19937 rng(6);
    const auto a = random_vector(rng, 256);
    const auto b = random_vector(rng, 256);
    double dot = 0.0;
    for (std::uint32_t j = 0; j < 256; ++j) {
        dot += static_cast<double>(a.element(j)) * b.element(j);
    }
    const double want = dot / 256.0;
    CHECK(cosine_similarity(a, b) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("masked-binarizer path equals accumulator path") {
    std::mt19937 rng(7);
    SUBCASE("exhaustive small windows") {
        for (std::uint32_t h = 1; h <= 8; ++h) {
            const std::uint32_t d = 8;
            for (int rep = 0; rep < 20; ++rep) {
                std::vector<PackedHypervector> window;
                AccumulatorVector acc(d);
                for (std::uint32_t k = 0; k < h; ++k) {
                    window.push_back(random_vector(rng, d));
                    acc.accumulate(window.back());
                }
                const auto binarized = acc.binarize();
                for (std::uint32_t j = 0; j < d; ++j) {
                    CHECK(popcount_window_binarize(window, j) ==
                          (binarized.bit(j) ? 1 : 0));
                }
            }
        }
    }
    SUBCASE("random H=16 window") {
        const std::uint32_t d = 64;
        std::vector<PackedHypervector> window;
        AccumulatorVector acc(d);
        for (int k = 0; k < 16; ++k) {
            window.push_back(random_vector(rng, d));
            acc.accumulate(window.back());
        }
        const auto binarized = acc.binarize();
        for (std::uint32_t j = 0; j < d; ++j) {
            CHECK(popcount_window_binarize(window, j) == (binarized.bit(j) ? 1 : 0));
        }
    }
}

TEST_CASE("merge is associative and order independent") {
    std::mt19937 rng(8);
    const std::uint32_t d = 96;
    std::vector<PackedHypervector> vectors;
    for (int k = 0; k < 12; ++k) {
        vectors.push_back(random_vector(rng, d));
    }
    AccumulatorVector left(d);
    for (const auto& v : vectors) {
        left.accumulate(v);
    }
    AccumulatorVector a(d);
    AccumulatorVector b(d);
    AccumulatorVector c(d);
    for (int k = 0; k < 12; ++k) {
        (k % 3 == 0 ? a : k % 3 == 1 ? b : c).accumulate(vectors[k]);
    }
    AccumulatorVector right(d);
    right.merge(c);
    right.merge(a);
    right.merge(b);
    CHECK(left == right);
}

TEST_CASE("serialization round-trip and padding validation") {
    std::mt19937 rng(9);
    const auto v = random_vector(rng, 70);
    std::stringstream buf;
    v.serialize(buf);
    const auto w = PackedHypervector::deserialize(buf);
    CHECK(v == w);

    std::stringstream bad;
    v.serialize(bad);
    std::string bytes = bad.str();
    bytes.back() = static_cast<char>(0xff); // pollute padding bits past D-1
    std::stringstream polluted(bytes);
    CHECK_THROWS_AS(PackedHypervector::deserialize(polluted), error);
}

TEST_CASE("u16 counting kernel matches per-bit reference") {
    std::mt19937 rng(10);
    const std::uint32_t d = 130;
    std::vector<std::uint16_t> counts(d, 0);
    std::vector<std::uint16_t> want(d, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto v = random_vector(rng, d);
        add_bits_to_u16_counts(v.words(), d, counts.data());
        for (std::uint32_t j = 0; j < d; ++j) {
            want[j] += v.bit(j) ? 1 : 0;
        }
    }
    CHECK(counts == want);
}

TEST_CASE("add_counts keeps the sums identity") {
    std::mt19937 rng(12);
    const std::uint32_t d = 64;
    AccumulatorVector direct(d);
    std::vector<std::uint16_t> ones(d, 0);
    for (int rep = 0; rep < 9; ++rep) {
        const auto v = random_vector(rng, d);
        direct.accumulate(v);
        for (std::uint32_t j = 0; j < d; ++j) {
            ones[j] += v.bit(j) ? 1 : 0;
        }
    }
    AccumulatorVector counted(d);
    counted.add_counts(ones, 9);
    CHECK(direct == counted);
}
