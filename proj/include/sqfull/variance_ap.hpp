#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sqfull/intmath.hpp"

namespace sqfull {

// Legendre symbol (n | q) by Euler's criterion. q must be an odd prime.
int legendre(i64 n, u64 q);

// Least alpha >= 2 with (alpha | q) = -1.
u64 smallest_qnr(u64 q);

// #{x in (Z/qZ)^* : x^2 = n mod q} = 1 + (n | q). Requires q not dividing n.
int n2_count(i64 n, u64 q);

// counts[l] = #{n in (x, 2x] : n square-full, n = l mod q}
struct ResidueHistogram
{
    u64                x = 0;
    u64                q = 0;
    std::vector<std::uint32_t> counts;

    u64 total() const;
};

ResidueHistogram residue_histogram(u64 x, u64 q);

// zeta(3/2)/zeta(3) (1/q)(1 - 1/q) D_1/2(x;x) + zeta(2/3)/zeta(2) (1/q)(1 - q^(-2/3)) D_1/3(x;x)
double ap_main_bracket(double x, double q);

struct APVarianceReport
{
    u64    x = 0;
    u64    q = 0;
    u64    alpha = 0;
    double statistic = 0.0;
    double main_bracket = 0.0;
    double prediction = 0.0; // C (x/q)^(1/6)
    double ratio = 0.0;      // statistic / prediction
    bool   outside_range = false; // q outside [x^0.45, x^0.95]
};

// (1/phi(q)) sum_{l in (Z/qZ)^*} |(counts[l] + counts[alpha l]) / 2 - bracket|^2.
// alpha defaults to the smallest quadratic nonresidue.
APVarianceReport ap_variance(u64 x, u64 q, std::optional<u64> alpha = std::nullopt);

// Same statistic from an already built histogram.
APVarianceReport ap_variance_from_histogram(const ResidueHistogram& hist, u64 alpha);

// Q(x; q, l): square-full n <= x with n = l mod q.
u64 count_squarefull_ap(u64 x, u64 q, u64 l);

// Candidate forms of the leading constant A_{q,l} in Q(x;q,l) ~ A_{q,l} sqrt(x) / (zeta(3) q).
enum class AqlVariant {
    // (1 - q^-3)^-1 sum_{b, q !| b} N2(l b; q) / b^(3/2)
    unrestricted_b,
    // zeta(3) sum_{b squarefree, q !| b} N2(l b^-3; q) / b^(3/2)
    squarefree_inverse_cube,
};

struct AqlEstimate
{
    AqlVariant variant;
    u64        B = 0;
    double     truncated = 0.0; // sum over b <= B
    double     tail = 0.0;      // mean-value estimate of the b > B part
    double     value = 0.0;     // truncated + tail
};

AqlEstimate a_ql_estimate(u64 q, u64 l, u64 B, AqlVariant variant);

// zeta(3) q Q(x; q, l) / sqrt(x)
double a_ql_empirical(u64 q, u64 l, u64 x);

// Variant whose estimate lies closest to the empirical value at x.
AqlVariant select_a_ql_variant(u64 q, u64 l, u64 B, u64 x);

// Sides of the character orthogonality identities for a prime q, nonresidue
// alpha and a sequence b_1, b_2, ... (seq[i] is b_{i+1}).
struct OrthogonalitySides
{
    std::complex<double> character_nonprincipal; // (1/phi) sum_{chi != chi0} (1+chi(alpha))/2 |sum b_n chi(n)|^2
    double               residue_centered;       // sum_l |(1/2) sum_{n = l, alpha l} b_n - (1/phi) sum_{(n,q)=1} b_n|^2
    std::complex<double> character_all;          // (1/phi) sum_chi (1+chi(alpha))/2 |sum b_n chi(n)|^2
    double               residue_plain;          // sum_l |(1/2) sum_{n = l, alpha l} b_n|^2
};

OrthogonalitySides orthogonality_sides(u64 q, u64 alpha, std::span<const std::complex<double>> seq);

// Least primitive root modulo an odd prime q.
u64 primitive_root(u64 q);

// Prime nearest to x (ties go to the smaller one).
u64 nearest_prime(u64 x);

} // namespace sqfull
