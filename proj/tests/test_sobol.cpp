#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "uhd/sobol.hpp"

using namespace uhd;

TEST_CASE("direction file loads with expected capacity") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    CHECK(dirs.capacity() >= 784);
    const auto& r2 = dirs.record(2);
    CHECK(r2.degree == 1);
    CHECK(r2.coefficients == 0);
    REQUIRE(r2.m.size() == 1);
    CHECK(r2.m[0] == 1);
    const auto& r3 = dirs.record(3);
    CHECK(r3.degree == 2);
    REQUIRE(r3.m.size() == 2);
    CHECK(r3.m[0] == 1);
    CHECK(r3.m[1] == 3);
}

TEST_CASE("direction parser rejects malformed records") {
    SUBCASE("even direction integer") {
        std::istringstream in("d s a m_i\n2 1 0 2\n");
        CHECK_THROWS_AS(DirectionNumbers::parse(in, "test"), error);
    }
    SUBCASE("m_i too large") {
        std::istringstream in("d s a m_i\n2 1 0 5\n");
        CHECK_THROWS_AS(DirectionNumbers::parse(in, "test"), error);
    }
    SUBCASE("non-sequential dimension") {
        std::istringstream in("d s a m_i\n3 2 1 1 3\n");
        CHECK_THROWS_AS(DirectionNumbers::parse(in, "test"), error);
    }
}

TEST_CASE("dimension 1 oracle values") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    const auto pts = generate_sobol_dimension(dirs, 1, 4);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pts[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(pts[2] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pts[3] == doctest::Approx(0.375).epsilon(1e-15));
}

TEST_CASE("zero point kept when skipping disabled") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    const auto pts = generate_sobol_dimension(dirs, 1, 1, false);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == 0.0);
}

// brute-force radical-inverse oracle for the van der Corput dimension
static double van_der_corput(std::uint64_t n) {
    double result = 0.0;
    double base = 0.5;
    while (n != 0) {
        if (n & 1u) {
            result += base;
        }
        base *= 0.5;
        n >>= 1;
    }
    return result;
}

TEST_CASE("dimension 1 matches radical-inverse oracle as a set") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    const std::uint32_t n = 256;
    auto pts = generate_sobol_dimension(dirs, 1, n - 1);
    std::vector<double> oracle;
    for (std::uint32_t k = 1; k < n; ++k) {
        oracle.push_back(van_der_corput(k));
    }
    std::sort(pts.begin(), pts.end());
    std::sort(oracle.begin(), oracle.end());
    for (std::uint32_t k = 0; k + 1 < n; ++k) {
        CHECK(pts[k] == doctest::Approx(oracle[k]).epsilon(1e-15));
    }
}

TEST_CASE("dimension 2 first points from direction numbers") {
    // dimension 2: s=1, a=0, m = [1] -> v1 = 1/2, v2 = 1/4 + 1/2 (recurrence),
    // gray-code points: x1 = v1 = 0.5, x2 = x1 ^ v2 = 0.25
    const auto dirs = DirectionNumbers::load_file(direction_file());
    const auto pts = generate_sobol_dimension(dirs, 2, 2);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pts[1] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("quantize_scalar examples") {
    CHECK(quantize_scalar(0.5, 16) == 8);
    CHECK(quantize_scalar(0.0, 16) == 0);
    CHECK(quantize_scalar(0.9999, 16) == 15);
    CHECK_THROWS_AS(quantize_scalar(1.0, 16), error);
    CHECK_THROWS_AS(quantize_scalar(-0.1, 16), error);
}

TEST_CASE("table row for H=1 D=4 M=4") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    SobolConfig cfg;
    cfg.dimensions = 1;
    cfg.points_per_dimension = 4;
    cfg.quantization_bits = 4;
    const auto table = SobolTable::build(dirs, cfg);
    CHECK(table.at(0, 0) == 8);
    CHECK(table.at(0, 1) == 12);
    CHECK(table.at(0, 2) == 4);
    CHECK(table.at(0, 3) == 6);
}

TEST_CASE("equidistribution of first 2^k points") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    for (std::uint32_t dim = 1; dim <= 16; ++dim) {
        for (std::uint32_t k = 8; k <= 12; ++k) {
            const std::uint32_t n = 1u << k;
            // include the zero point so the window is exactly the first 2^k
            const auto pts = generate_sobol_dimension(dirs, dim, n, false);
            std::uint32_t low = 0;
            for (double x : pts) {
                if (x < 0.5) {
                    ++low;
                }
            }
            CHECK(low == n / 2);
        }
    }
}

TEST_CASE("quantized level balance for D=1024") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    SobolConfig cfg;
    cfg.dimensions = 32;
    cfg.points_per_dimension = 1024;
    cfg.quantization_bits = 4;
    cfg.skip_initial_zero = false;
    const auto table = SobolTable::build(dirs, cfg);
    for (std::uint32_t row = 0; row < 32; ++row) {
        std::vector<std::uint32_t> counts(16, 0);
        for (std::uint32_t col = 0; col < 1024; ++col) {
            ++counts[table.at(row, col)];
        }
        for (std::uint32_t v = 0; v < 16; ++v) {
            CHECK(counts[v] == 64);
        }
    }
}

TEST_CASE("table rebuild is deterministic and save/load round-trips") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    SobolConfig cfg;
    cfg.dimensions = 8;
    cfg.points_per_dimension = 64;
    cfg.quantization_bits = 4;
    const auto a = SobolTable::build(dirs, cfg);
    const auto b = SobolTable::build(dirs, cfg);
    for (std::uint32_t i = 0; i < 8; ++i) {
        for (std::uint32_t j = 0; j < 64; ++j) {
            CHECK(a.at(i, j) == b.at(i, j));
        }
    }
    const std::string path = "sobol_table_test.bin";
    a.save(path);
    const auto c = SobolTable::load(path);
    CHECK(c.rows() == 8);
    CHECK(c.cols() == 64);
    for (std::uint32_t i = 0; i < 8; ++i) {
        for (std::uint32_t j = 0; j < 64; ++j) {
            CHECK(a.at(i, j) == c.at(i, j));
        }
    }
    // header: H, D, M as u32 LE followed by H*D bytes
    std::ifstream in(path, std::ios::binary);
    in.seekg(0, std::ios::end);
    CHECK(in.tellg() == 12 + 8 * 64);
    std::remove(path.c_str());
}

TEST_CASE("capacity error beyond direction table") {
    const auto dirs = DirectionNumbers::load_file(direction_file());
    SobolConfig cfg;
    cfg.dimensions = dirs.capacity() + 1;
    cfg.points_per_dimension = 4;
    try {
        SobolTable::build(dirs, cfg);
        FAIL("expected capacity error");
    } catch (const error& e) {
        CHECK(e.code() == errc::capacity);
    }
}
