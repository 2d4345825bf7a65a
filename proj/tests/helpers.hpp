#pragma once

#include <cstdlib>
#include <string>

inline std::string data_dir() {
    const char* env = std::getenv("UHD_DATA_DIR");
    return env != nullptr ? env : "data";
}

inline std::string fixture_dir() {
    const char* env = std::getenv("UHD_FIXTURE_DIR");
    return env != nullptr ? env : "tests/fixtures";
}

inline std::string direction_file() { return data_dir() + "/sobol-direction-numbers.txt"; }
