#include "sqfull/sieves.hpp"

#include <algorithm>
#include <mutex>
#include <string>
#include <thread>

#include "sqfull/errors.hpp"
#include "sqfull/limits.hpp"

namespace sqfull {

Limits& limits()
{
    static Limits instance;
    return instance;
}

unsigned worker_count()
{
    unsigned t = limits().threads;
    if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
    return t;
}

bool is_prime_u64(u64 n)
{
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

SieveTables::SieveTables(u64 limit)
    : limit_(limit)
{
    if (limit == 0 || limit > limits().sieve_cap)
        throw CapacityError("sieve limit " + std::to_string(limit) + " outside [1, " +
                            std::to_string(limits().sieve_cap) + "]");
    mobius_.assign(limit + 1, 0);
    spf_.assign(limit + 1, 0);
    mobius_[1] = 1;
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            mobius_[i] = -1;
            primes_.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes_) {
            u64 m = i * p;
            if (p > spf_[i] || m > limit) break;
            spf_[m] = p;
            mobius_[m] = (p == spf_[i]) ? 0 : static_cast<std::int8_t>(-mobius_[i]);
        }
    }
}

void SieveTables::check(u64 n) const
{
    if (n == 0 || n > limit_)
        throw RangeError("index " + std::to_string(n) + " outside sieve range [1, " +
                         std::to_string(limit_) + "]");
}

int SieveTables::mobius(u64 n) const
{
    check(n);
    return mobius_[n];
}

u64 SieveTables::spf(u64 n) const
{
    check(n);
    return spf_[n];
}

i64 SieveTables::mertens(u64 n) const
{
    check(n);
    i64 m = 0;
    for (u64 k = 1; k <= n; ++k) m += mobius_[k];
    return m;
}

SieveTables build_sieves(u64 limit) { return SieveTables(limit); }

int mobius(u64 n, const SieveTables& tables) { return tables.mobius(n); }

bool is_squarefree(u64 n, const SieveTables& tables) { return tables.is_squarefree(n); }

std::shared_ptr<const SieveTables> shared_tables(u64 limit)
{
    static std::mutex mu;
    static std::shared_ptr<const SieveTables> cached;
    std::lock_guard lock(mu);
    if (!cached || cached->limit() < limit) {
        u64 target = std::max<u64>(limit, cached ? 2 * cached->limit() : 1024);
        target = std::min(target, std::max(limit, limits().sieve_cap));
        cached = std::make_shared<const SieveTables>(target);
    }
    return cached;
}

namespace {

// Primes up to `limit` from a cache that only grows.
std::vector<u64> base_primes(u64 limit)
{
    static std::mutex mu;
    static std::vector<u64> primes;
    static u64 covered = 1;
    std::lock_guard lock(mu);
    if (covered < limit) {
        u64 target = std::max(limit, 2 * covered);
        std::vector<bool> composite(target + 1, false);
        primes.clear();
        for (u64 i = 2; i <= target; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (u64 j = i * i; j <= target; j += i) composite[j] = true;
        }
        covered = target;
    }
    auto end = std::upper_bound(primes.begin(), primes.end(), limit);
    return {primes.begin(), end};
}

} // namespace

PrimeWindow primes_in_window(u64 lo, u64 hi)
{
    if (lo >= hi) throw DomainError("prime window requires lo < hi");
    if (hi - lo > limits().segment_cap)
        throw CapacityError("prime window width " + std::to_string(hi - lo) +
                            " exceeds segment cap " + std::to_string(limits().segment_cap));
    if (hi > (1ULL << 63)) throw CapacityError("prime window upper end exceeds 2^63");

    PrimeWindow w{lo, hi, {}};
    const u64 first = lo + 1;
    const u64 width = hi - lo;
    std::vector<bool> composite(width, false); // index i <-> first + i
    for (u64 p : base_primes(isqrt(hi))) {
        u64 start = std::max(p * p, (first + p - 1) / p * p);
        for (u64 m = start; m <= hi; m += p) composite[m - first] = true;
    }
    for (u64 i = 0; i < width; ++i) {
        u64 n = first + i;
        if (n >= 2 && !composite[i]) w.primes.push_back(n);
    }
    return w;
}

} // namespace sqfull
