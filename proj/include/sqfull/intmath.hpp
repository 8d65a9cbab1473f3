#pragma once

#include <cmath>
#include <cstdint>

namespace sqfull {

using u64  = std::uint64_t;
using i64  = std::int64_t;
using u128 = unsigned __int128;

// floor(sqrt(n)), exact for all 64-bit n.
inline u64 isqrt(u64 n)
{
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    // the double estimate is within a few units; walk to the exact root
    while (static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

// floor(cbrt(n)), exact for all 64-bit n.
inline u64 icbrt(u64 n)
{
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::cbrt(static_cast<double>(n)));
    while (static_cast<u128>(r) * r * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(u64 n)
{
    u64 r = isqrt(n);
    return r * r == n;
}

inline u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m)
{
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin for all 64-bit n (first twelve prime witnesses).
bool is_prime_u64(u64 n);

} // namespace sqfull
