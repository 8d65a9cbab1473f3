#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sqfull/intmath.hpp"

namespace sqfull {

// Moebius function and smallest prime factor for 1..limit, built by a linear
// sieve. Immutable after construction.
class SieveTables
{
public:
    explicit SieveTables(u64 limit);

    u64 limit() const { return limit_; }

    int  mobius(u64 n) const;
    bool is_squarefree(u64 n) const { return mobius(n) != 0; }
    u64  spf(u64 n) const;

    std::span<const std::uint32_t> primes() const { return primes_; }

    // Sum_{n <= N} mu(n).
    i64 mertens(u64 n) const;

private:
    void check(u64 n) const;

    u64                        limit_;
    std::vector<std::int8_t>   mobius_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

SieveTables build_sieves(u64 limit);

// Tables covering at least 1..limit, shared and grown on demand (thread-safe).
std::shared_ptr<const SieveTables> shared_tables(u64 limit);

int  mobius(u64 n, const SieveTables& tables);
bool is_squarefree(u64 n, const SieveTables& tables);

struct PrimeWindow
{
    u64              lo = 0; // exclusive
    u64              hi = 0; // inclusive
    std::vector<u64> primes;
};

// All primes p with lo < p <= hi, by a segmented sieve over base primes up to
// sqrt(hi) (cached across calls).
PrimeWindow primes_in_window(u64 lo, u64 hi);

} // namespace sqfull
