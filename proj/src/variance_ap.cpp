#include "sqfull/variance_ap.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sqfull/constants.hpp"
#include "sqfull/errors.hpp"
#include "sqfull/limits.hpp"
#include "sqfull/parallel.hpp"
#include "sqfull/sieves.hpp"
#include "sqfull/squarefull.hpp"
#include "sqfull/variance_short.hpp"

namespace sqfull {

namespace {

void require_odd_prime(u64 q, const char* what)
{
    if (q < 3 || q % 2 == 0 || !is_prime_u64(q))
        throw DomainError(std::string(what) + ": modulus " + std::to_string(q) +
                          " is not an odd prime");
}

void require_prime(u64 q, const char* what)
{
    if (!is_prime_u64(q))
        throw DomainError(std::string(what) + ": modulus " + std::to_string(q) + " is not prime");
}

u64 reduce(i64 n, u64 q)
{
    const i64 r = n % static_cast<i64>(q);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(q) : r);
}

u64 inverse_mod_prime(u64 a, u64 q) { return powmod(a, q - 2, q); }

// Calls fn(n, a, b) for every square-full n in (lo, hi], unordered.
template <typename Fn>
void for_each_squarefull(u64 lo, u64 hi, Fn&& fn)
{
    for_each_squarefree_cube_base(hi, [&](u64 b) {
        const u64 cube = b * b * b;
        const u64 a_hi = isqrt(hi / cube);
        for (u64 a = isqrt(lo / cube) + 1; a <= a_hi; ++a) fn(a * a * cube, a, b);
    });
}

} // namespace

int legendre(i64 n, u64 q)
{
    require_odd_prime(q, "legendre");
    const u64 r = reduce(n, q);
    if (r == 0) return 0;
    return powmod(r, (q - 1) / 2, q) == 1 ? 1 : -1;
}

u64 smallest_qnr(u64 q)
{
    require_odd_prime(q, "smallest_qnr");
    for (u64 a = 2;; ++a)
        if (legendre(static_cast<i64>(a), q) == -1) return a;
}

int n2_count(i64 n, u64 q)
{
    require_odd_prime(q, "n2_count");
    if (reduce(n, q) == 0) throw DomainError("n2_count requires gcd(n, q) = 1");
    return 1 + legendre(n, q);
}

u64 ResidueHistogram::total() const
{
    return std::accumulate(counts.begin(), counts.end(), u64{0});
}

ResidueHistogram residue_histogram(u64 x, u64 q)
{
    if (x == 0) throw DomainError("residue_histogram requires x >= 1");
    require_prime(q, "residue_histogram");
    if (x > limits().count_cap / 2) throw CapacityError("residue_histogram: 2x exceeds capacity");
    if (q > limits().sieve_cap) throw CapacityError("residue_histogram: modulus too large for histogram");
    ResidueHistogram h{x, q, std::vector<std::uint32_t>(q, 0)};
    for_each_squarefull(x, 2 * x, [&](u64, u64 a, u64 b) {
        const u64 am = a % q;
        const u64 cube = mulmod(mulmod(b % q, b % q, q), b % q, q);
        ++h.counts[mulmod(mulmod(am, am, q), cube, q)];
    });
    return h;
}

double ap_main_bracket(double x, double q)
{
    if (!(x >= 1) || !(q >= 2)) throw DomainError("ap_main_bracket requires x >= 1 and q >= 2");
    const KeyZetas& z = key_zetas();
    return z.z3_2 / z.z3 / q * (1 - 1 / q) * main_diff(0.5, x, x) +
           z.z2_3 / z.z2 / q * (1 - std::pow(q, -2.0 / 3)) * main_diff(1.0 / 3, x, x);
}

APVarianceReport ap_variance_from_histogram(const ResidueHistogram& hist, u64 alpha)
{
    const u64 q = hist.q;
    require_odd_prime(q, "ap_variance");
    if (legendre(static_cast<i64>(alpha), q) != -1)
        throw DomainError("ap_variance: alpha " + std::to_string(alpha) +
                          " is not a quadratic nonresidue mod " + std::to_string(q));
    APVarianceReport r;
    r.x = hist.x;
    r.q = q;
    r.alpha = alpha;
    r.main_bracket = ap_main_bracket(static_cast<double>(hist.x), static_cast<double>(q));
    const u64 a = alpha % q;
    CompensatedSum acc;
    for (u64 l = 1; l < q; ++l) {
        const double pair = 0.5 * (static_cast<double>(hist.counts[l]) +
                                   static_cast<double>(hist.counts[mulmod(a, l, q)]));
        const double d = pair - r.main_bracket;
        acc.add(d * d);
    }
    r.statistic = acc.value() / static_cast<double>(q - 1);
    const double xq = static_cast<double>(hist.x) / static_cast<double>(q);
    r.prediction = cached_constant_C().C * std::pow(xq, 1.0 / 6);
    r.ratio = r.statistic / r.prediction;
    const double xd = static_cast<double>(hist.x);
    r.outside_range = static_cast<double>(q) < std::pow(xd, 0.45) ||
                      static_cast<double>(q) > std::pow(xd, 0.95);
    return r;
}

APVarianceReport ap_variance(u64 x, u64 q, std::optional<u64> alpha)
{
    require_odd_prime(q, "ap_variance");
    const u64 a = alpha ? *alpha : smallest_qnr(q);
    if (legendre(static_cast<i64>(a), q) != -1)
        throw DomainError("ap_variance: alpha is not a quadratic nonresidue");
    return ap_variance_from_histogram(residue_histogram(x, q), a);
}

u64 count_squarefull_ap(u64 x, u64 q, u64 l)
{
    if (x == 0) throw DomainError("count_squarefull_ap requires x >= 1");
    if (q < 2) throw DomainError("count_squarefull_ap requires q >= 2");
    if (l >= q) throw DomainError("count_squarefull_ap requires 0 <= l < q");
    detail::check_count_cap(x, "count_squarefull_ap");
    u64 count = 0;
    for_each_squarefull(0, x, [&](u64 n, u64, u64) { count += (n % q == l); });
    return count;
}

AqlEstimate a_ql_estimate(u64 q, u64 l, u64 B, AqlVariant variant)
{
    require_odd_prime(q, "a_ql_estimate");
    if (l % q == 0) throw DomainError("a_ql_estimate requires gcd(l, q) = 1");
    if (B < 1 || B > 1'000'000) throw DomainError("a_ql_estimate requires 1 <= B <= 10^6");
    const KeyZetas& z = key_zetas();
    const double qd = static_cast<double>(q);
    // sum_{b > B} b^-3/2 by Euler-Maclaurin
    const double Bd = static_cast<double>(B);
    const double power_tail = 2 / std::sqrt(Bd) - 0.5 * std::pow(Bd, -1.5);

    AqlEstimate e{variant, B, 0.0, 0.0, 0.0};
    CompensatedSum acc;
    if (variant == AqlVariant::unrestricted_b) {
        const double euler = 1 / (1 - std::pow(qd, -3));
        for (u64 b = 1; b <= B; ++b) {
            if (b % q == 0) continue;
            acc.add((1 + legendre(static_cast<i64>(mulmod(l % q, b % q, q)), q)) *
                    std::pow(static_cast<double>(b), -1.5));
        }
        e.truncated = euler * acc.value();
        e.tail = euler * (qd - 1) / qd * power_tail;
    } else {
        auto tables = shared_tables(B);
        for (u64 b = 1; b <= B; ++b) {
            if (b % q == 0 || !tables->is_squarefree(b)) continue;
            const u64 inv = inverse_mod_prime(b % q, q);
            const u64 twist = mulmod(l % q, mulmod(mulmod(inv, inv, q), inv, q), q);
            acc.add((1 + legendre(static_cast<i64>(twist), q)) * std::pow(static_cast<double>(b), -1.5));
        }
        e.truncated = z.z3 * acc.value();
        e.tail = z.z3 * (6 / (std::numbers::pi * std::numbers::pi)) * qd / (qd + 1) * power_tail;
    }
    e.value = e.truncated + e.tail;
    return e;
}

double a_ql_empirical(u64 q, u64 l, u64 x)
{
    require_odd_prime(q, "a_ql_empirical");
    if (l % q == 0) throw DomainError("a_ql_empirical requires gcd(l, q) = 1");
    return key_zetas().z3 * static_cast<double>(q) *
           static_cast<double>(count_squarefull_ap(x, q, l % q)) / std::sqrt(static_cast<double>(x));
}

AqlVariant select_a_ql_variant(u64 q, u64 l, u64 B, u64 x)
{
    const double target = a_ql_empirical(q, l, x);
    const double u = a_ql_estimate(q, l, B, AqlVariant::unrestricted_b).value;
    const double s = a_ql_estimate(q, l, B, AqlVariant::squarefree_inverse_cube).value;
    return std::abs(u - target) <= std::abs(s - target) ? AqlVariant::unrestricted_b
                                                        : AqlVariant::squarefree_inverse_cube;
}

u64 primitive_root(u64 q)
{
    require_odd_prime(q, "primitive_root");
    std::vector<u64> factors;
    u64 m = q - 1;
    for (u64 p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        factors.push_back(p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) factors.push_back(m);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 p : factors)
            if (powmod(g, (q - 1) / p, q) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

u64 nearest_prime(u64 x)
{
    if (x <= 2) return 2;
    for (u64 d = 0;; ++d) {
        if (is_prime_u64(x - d)) return x - d;
        if (is_prime_u64(x + d)) return x + d;
    }
}

OrthogonalitySides orthogonality_sides(u64 q, u64 alpha, std::span<const std::complex<double>> seq)
{
    require_odd_prime(q, "orthogonality_sides");
    if (alpha % q == 0) throw DomainError("orthogonality_sides requires alpha coprime to q");
    const u64 phi = q - 1;
    const u64 g = primitive_root(q);
    std::vector<u64> index(q, 0); // discrete log base g
    u64 v = 1;
    for (u64 k = 0; k < phi; ++k) {
        index[v] = k;
        v = mulmod(v, g, q);
    }
    const double two_pi = 2 * std::numbers::pi;
    auto chi = [&](u64 j, u64 n) -> std::complex<double> {
        if (n % q == 0) return 0.0;
        const u64 k = mulmod(j, index[n % q], phi);
        return std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(phi));
    };

    OrthogonalitySides sides{};
    for (u64 j = 0; j < phi; ++j) {
        std::complex<double> t = 0;
        for (std::size_t i = 0; i < seq.size(); ++i) t += seq[i] * chi(j, i + 1);
        const std::complex<double> term = (1.0 + chi(j, alpha)) / 2.0 * std::norm(t);
        sides.character_all += term;
        if (j != 0) sides.character_nonprincipal += term;
    }
    sides.character_all /= static_cast<double>(phi);
    sides.character_nonprincipal /= static_cast<double>(phi);

    std::vector<std::complex<double>> by_class(q, 0.0);
    for (std::size_t i = 0; i < seq.size(); ++i) by_class[(i + 1) % q] += seq[i];
    std::complex<double> mean = 0;
    for (u64 l = 1; l < q; ++l) mean += by_class[l];
    mean /= static_cast<double>(phi);
    for (u64 l = 1; l < q; ++l) {
        const std::complex<double> pair = 0.5 * (by_class[l] + by_class[mulmod(alpha % q, l, q)]);
        sides.residue_plain += std::norm(pair);
        sides.residue_centered += std::norm(pair - mean);
    }
    return sides;
}

} // namespace sqfull
