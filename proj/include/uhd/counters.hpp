#pragma once

#include <cstdint>

namespace uhd {

// Software proxy for the hardware design checkpoints: energy comparisons are
// approximated by counting the dominant operations.
struct OpCounters {
    std::uint64_t comparisons = 0;
    std::uint64_t bind_ops = 0;
    std::uint64_t accumulator_updates = 0;
    std::uint64_t memory_fetches = 0;
    std::uint64_t binarize_windows = 0;

    OpCounters& operator+=(const OpCounters& o) {
        comparisons += o.comparisons;
        bind_ops += o.bind_ops;
        accumulator_updates += o.accumulator_updates;
        memory_fetches += o.memory_fetches;
        binarize_windows += o.binarize_windows;
        return *this;
    }

    friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

} // namespace uhd
