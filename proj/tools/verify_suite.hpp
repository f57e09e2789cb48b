#pragma once

#include <cstdint>
#include <string>

namespace cover::verify {

struct Options {
    bool full = false;  // quick otherwise
    std::uint64_t seed = 1;
    int jobs = 1;
};

// Runs every module invariant at the chosen scale, printing one status line
// per check. Returns the number of failed checks.
int run_suite(const Options& options);

}  // namespace cover::verify
