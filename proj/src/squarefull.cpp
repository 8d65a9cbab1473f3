#include "sqfull/squarefull.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqfull/constants.hpp"
#include "sqfull/errors.hpp"
#include "sqfull/limits.hpp"
#include "sqfull/parallel.hpp"
#include "sqfull/sieves.hpp"

namespace sqfull {

namespace detail {

std::vector<std::uint8_t> squarefree_flags(u64 limit)
{
    std::vector<std::uint8_t> flags(limit + 1, 0);
    if (limit == 0) return flags;
    auto tables = shared_tables(limit);
    for (u64 b = 1; b <= limit; ++b) flags[b] = tables->is_squarefree(b);
    return flags;
}

void check_count_cap(u64 x, const char* what)
{
    if (x > limits().count_cap)
        throw CapacityError(std::string(what) + ": " + std::to_string(x) +
                            " exceeds capacity " + std::to_string(limits().count_cap));
}

} // namespace detail

bool is_squarefull(u64 n)
{
    if (n == 0) throw DomainError("is_squarefull requires n >= 1");
    u64 m = n;
    for (u64 p = 2; p * p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e == 1) return false;
    }
    // every prime factor of m now exceeds cbrt(m), so m is 1, p, pq or p^2
    return m == 1 || is_perfect_square(m);
}

u64 count_squarefull(u64 x)
{
    if (x == 0) throw DomainError("count_squarefull requires x >= 1");
    detail::check_count_cap(x, "count_squarefull");
    u64 total = 0;
    for_each_squarefree_cube_base(x, [&](u64 b) { total += isqrt(x / (b * b * b)); });
    return total;
}

u64 count_pairs_23(u64 x)
{
    if (x == 0) throw DomainError("count_pairs_23 requires x >= 1");
    detail::check_count_cap(x, "count_pairs_23");
    u64 total = 0;
    const u64 bmax = icbrt(x);
    for (u64 b = 1; b <= bmax; ++b) total += isqrt(x / (b * b * b));
    return total;
}

u64 d23(u64 n)
{
    if (n == 0) throw DomainError("d23 requires n >= 1");
    u64 count = 0;
    for (u64 b = 1; b * b * b <= n; ++b) {
        const u64 cube = b * b * b;
        if (n % cube == 0 && is_perfect_square(n / cube)) ++count;
    }
    return count;
}

double main_term_Q(double x)
{
    const KeyZetas& z = key_zetas();
    return z.z3_2 / z.z3 * std::sqrt(x) + z.z2_3 / z.z2 * std::cbrt(x);
}

double main_term_23(double x)
{
    const KeyZetas& z = key_zetas();
    return z.z3_2 * std::sqrt(x) + z.z2_3 * std::cbrt(x);
}

CountReport delta_Q(u64 x)
{
    CountReport r{x, count_squarefull(x), main_term_Q(static_cast<double>(x)), 0.0};
    r.error = static_cast<double>(r.exact_count) - r.main_term;
    return r;
}

CountReport delta_23(u64 x)
{
    CountReport r{x, count_pairs_23(x), main_term_23(static_cast<double>(x)), 0.0};
    r.error = static_cast<double>(r.exact_count) - r.main_term;
    return r;
}

double f_of(u64 n)
{
    if (n == 0) throw DomainError("f_of requires n >= 1");
    return pair_density(static_cast<double>(n));
}

double r_of(u64 n) { return static_cast<double>(d23(n)) - f_of(n); }

namespace {

// sum_{n <= N} n^-s = zeta(s) + N^(1-s)/(1-s) + N^-s/2 - s N^(-s-1)/12
//                     + s(s+1)(s+2) N^(-s-3)/720 + O(N^(-s-5))
long double power_sum(long double s, long double zeta_s, u64 N)
{
    const long double n = static_cast<long double>(N);
    return zeta_s + std::pow(n, 1 - s) / (1 - s) + std::pow(n, -s) / 2 -
           s * std::pow(n, -s - 1) / 12 + s * (s + 1) * (s + 2) * std::pow(n, -s - 3) / 720;
}

constexpr u64 direct_f_sum_limit = 10'000'000;

} // namespace

double f_sum(u64 x)
{
    if (x == 0) throw DomainError("f_sum requires x >= 1");
    if (x <= direct_f_sum_limit) {
        CompensatedSum acc;
        for (u64 n = x; n >= 1; --n) acc.add(pair_density(static_cast<double>(n)));
        return acc.value();
    }
    const KeyZetas& z = key_zetas();
    const long double half = power_sum(0.5L, z.z1_2, x);
    const long double two_thirds = power_sum(2.0L / 3, z.z2_3, x);
    return static_cast<double>(z.z3_2 / 2.0L * half + z.z2_3 / 3.0L * two_thirds);
}

double r_sum(u64 x) { return static_cast<double>(count_pairs_23(x)) - f_sum(x); }

SquareFullWindow squarefull_in_window(u64 x, u64 H)
{
    if (H == 0) throw DomainError("squarefull_in_window requires H >= 1");
    if (x > limits().count_cap || H > limits().count_cap - x)
        throw CapacityError("squarefull_in_window: x + H exceeds capacity " +
                            std::to_string(limits().count_cap));
    SquareFullWindow w{x, x + H, {}};
    const u64 hi = x + H;
    for_each_squarefree_cube_base(hi, [&](u64 b) {
        const u64 cube = b * b * b;
        const u64 a_lo = isqrt(x / cube); // a^2 b^3 <= x  <=>  a <= floor(sqrt(floor(x / b^3)))
        const u64 a_hi = isqrt(hi / cube);
        for (u64 a = a_lo + 1; a <= a_hi; ++a) w.members.push_back({a * a * cube, a, b});
    });
    std::sort(w.members.begin(), w.members.end(),
              [](const SquareFullMember& l, const SquareFullMember& r) { return l.n < r.n; });
    return w;
}

int squarefull_via_convolution(u64 n)
{
    if (n == 0) throw DomainError("squarefull_via_convolution requires n >= 1");
    i64 total = 0;
    for (u64 c = 1;; ++c) {
        const u64 c2 = c * c;
        const u128 c6 = static_cast<u128>(c2) * c2 * c2;
        if (c6 > n) break;
        if (n % static_cast<u64>(c6)) continue;
        // mu(c) by trial division; c <= n^(1/6) is tiny
        int mu = 1;
        u64 m = c;
        for (u64 p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            m /= p;
            if (m % p == 0) {
                mu = 0;
                break;
            }
            mu = -mu;
        }
        if (mu != 0 && m > 1) mu = -mu;
        if (mu != 0) total += mu * static_cast<i64>(d23(n / static_cast<u64>(c6)));
    }
    return static_cast<int>(total);
}

} // namespace sqfull
