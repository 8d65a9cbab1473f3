#pragma once

#include <cstdint>
#include <vector>

#include "sqfull/intmath.hpp"

namespace sqfull {

// n = a^2 b^3 with b squarefree; the decomposition is unique.
struct SquareFullMember
{
    u64 n;
    u64 a;
    u64 b;
};

// Square-full integers in the half-open window (lo, hi], sorted by n.
struct SquareFullWindow
{
    u64                           lo = 0;
    u64                           hi = 0;
    std::vector<SquareFullMember> members;

    std::size_t count() const { return members.size(); }
};

// exact = main + error, with error computed as exact - main.
struct CountReport
{
    u64    x           = 0;
    u64    exact_count = 0;
    double main_term   = 0.0;
    double error       = 0.0;
};

// Every prime factor of n divides it at least twice. Trial division, so
// intended for n up to about 10^12.
bool is_squarefull(u64 n);

// Q(x) = #{n <= x : n square-full} = sum_{b^3 <= x} mu^2(b) floor(sqrt(x / b^3)).
u64 count_squarefull(u64 x);

// #{(a, b) : a^2 b^3 <= x}, pairs counted with multiplicity.
u64 count_pairs_23(u64 x);

// Number of representations n = a^2 b^3 with a, b >= 1.
u64 d23(u64 n);

// zeta(3/2)/zeta(3) sqrt(x) + zeta(2/3)/zeta(2) x^(1/3)
double main_term_Q(double x);

// zeta(3/2) sqrt(x) + zeta(2/3) x^(1/3)
double main_term_23(double x);

CountReport delta_Q(u64 x);
CountReport delta_23(u64 x);

// Smooth approximation f(n) = zeta(3/2)/(2 sqrt n) + zeta(2/3)/(3 n^(2/3)) of d23.
double f_of(u64 n);

// r(n) = d23(n) - f(n).
double r_of(u64 n);

// sum_{n <= x} f(n); direct below 10^7, Euler-Maclaurin above.
double f_sum(u64 x);

// sum_{n <= x} r(n) = count_pairs_23(x) - f_sum(x).
double r_sum(u64 x);

// Exact members of (x, x + H] via the a^2 b^3 parametrization.
SquareFullWindow squarefull_in_window(u64 x, u64 H);

// sum_{c^6 | n} mu(c) d23(n / c^6); equals 1 exactly when n is square-full.
int squarefull_via_convolution(u64 n);

// Visits every squarefree b with b^3 <= limit, in increasing order.
template <typename Fn>
void for_each_squarefree_cube_base(u64 limit, Fn&& fn);

namespace detail {
std::vector<std::uint8_t> squarefree_flags(u64 limit);
void check_count_cap(u64 x, const char* what);
} // namespace detail

template <typename Fn>
void for_each_squarefree_cube_base(u64 limit, Fn&& fn)
{
    const u64 bmax = icbrt(limit);
    const auto flags = detail::squarefree_flags(bmax);
    for (u64 b = 1; b <= bmax; ++b)
        if (flags[b]) fn(b);
}

} // namespace sqfull
