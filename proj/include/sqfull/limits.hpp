#pragma once

#include <cstdint>

namespace sqfull {

// Process-wide caps. The defaults are the documented ones; the CLI may raise
// `count_cap` from the SQFULL_CAPACITY environment variable.
struct Limits
{
    std::uint64_t count_cap   = 1'000'000'000'000ULL; // largest x for counting / windows
    std::uint64_t sieve_cap   = 1ULL << 31;           // largest SieveTables limit
    std::uint64_t segment_cap = 1ULL << 28;           // largest prime window width
    unsigned      threads     = 0;                    // 0 = hardware concurrency
};

Limits& limits();

unsigned worker_count();

} // namespace sqfull
