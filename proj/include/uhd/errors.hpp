#pragma once

#include <stdexcept>
#include <string>

namespace uhd {

enum class errc {
    ok = 0,
    usage = 1,
    format = 2,
    resource = 3,
    domain = 4,
    shape = 5,
    capacity = 6,
    state = 7,
    logic = 8,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void throw_error(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace uhd
