#pragma once

// Brute-force reference implementations used only by the tests. None of them
// call into the library's counting or sieving code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

// Prime factorization by trial division: (prime, exponent) pairs.
inline std::vector<std::pair<u64, int>> factorize(u64 n)
{
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline int mobius(u64 n)
{
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

inline bool squarefull(u64 n)
{
    for (auto [p, e] : factorize(n))
        if (e < 2) return false;
    return true;
}

inline bool prime(u64 n)
{
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// #{(a, b) : a^2 b^3 = n} by exhaustive search over a, b.
inline u64 d23(u64 n)
{
    u64 count = 0;
    for (u64 b = 1; b * b * b <= n; ++b)
        for (u64 a = 1; a * a * b * b * b <= n; ++a)
            if (a * a * b * b * b == n) ++count;
    return count;
}

// #{(a, b) : a^2 b^3 <= x} by enumeration.
inline u64 pairs_upto(u64 x)
{
    u64 count = 0;
    for (u64 b = 1; b * b * b <= x; ++b)
        for (u64 a = 1; a * a * b * b * b <= x; ++a) ++count;
    return count;
}

// Squares mod q by listing.
inline bool is_square_mod(u64 n, u64 q)
{
    for (u64 a = 1; a < q; ++a)
        if (a * a % q == n % q) return true;
    return false;
}

inline double density(double u, double z32, double z23)
{
    return z32 / (2 * std::sqrt(u)) + z23 / (3 * std::cbrt(u * u));
}

// Midpoint Riemann sum of int_1^2 f(u) e(-u y) du.
inline std::complex<double> W_riemann(double y, double z32, double z23, int points)
{
    std::complex<double> acc = 0;
    const double h = 1.0 / points;
    for (int i = 0; i < points; ++i) {
        const double u = 1 + (i + 0.5) * h;
        acc += density(u, z32, z23) * std::polar(1.0, -2 * std::numbers::pi * u * y);
    }
    return acc * h;
}

// Composite Simpson on [a, b].
template <typename Fn>
double simpson(Fn&& fn, double a, double b, int n)
{
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = fn(a) + fn(b);
    for (int i = 1; i < n; ++i) s += fn(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

// int_0^inf |W(y)|^2 y^(5/6) dy through the fractional Sobolev (Gagliardo)
// form of the same quantity:
//   int_R |g^(y)|^2 |y|^a dy = (1 / (2 (2pi)^a K(a))) iint |g(u) - g(v)|^2 / |u - v|^(1+a) du dv
// with g = f 1_[1,2], a = 5/6 and K(a) = -2 Gamma(-a) cos(pi a / 2). Works
// entirely in u-space, never evaluating W.
inline double weight_integral_sobolev(double z32, double z23, int n)
{
    const double a = 5.0 / 6;
    auto f = [&](double u) { return density(u, z32, z23); };
    // interior: 2 int_0^1 h^-(1+a) int_{1+h}^2 (f(u) - f(u-h))^2 du dh, h = s^6
    auto interior = simpson(
        [&](double s) {
            if (s == 0) return 0.0;
            const double h = std::pow(s, 6);
            const double inner =
                simpson([&](double u) { const double d = f(u) - f(u - h); return d * d; }, 1 + h, 2, n);
            return 6 * std::pow(s, 5) * std::pow(h, -1 - a) * inner;
        },
        0, 1, n);
    interior *= 2;
    // boundary: 2 int_1^2 f(u)^2 ((u-1)^-a + (2-u)^-a) / a du, u - 1 = t^6 and 2 - u = t^6
    const double left = simpson([&](double t) { const double v = f(1 + std::pow(t, 6)); return 6 * v * v; }, 0, 1, n);
    const double right = simpson([&](double t) { const double v = f(2 - std::pow(t, 6)); return 6 * v * v; }, 0, 1, n);
    const double boundary = 2 / a * (left + right);
    const double K = -2 * std::tgamma(-a) * std::cos(std::numbers::pi * a / 2);
    return (interior + boundary) / (4 * std::pow(2 * std::numbers::pi, a) * K);
}

// The LCG stream used by the random-walk fixtures.
struct Lcg
{
    u64 state;
    u64 next()
    {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state;
    }
};

} // namespace oracle
