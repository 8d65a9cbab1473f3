#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "sqfull/constants.hpp"
#include "sqfull/errors.hpp"
#include "sqfull/squarefull.hpp"
#include "sqfull/variance_ap.hpp"
#include "sqfull/variance_short.hpp"

using namespace sqfull;

namespace {

const std::vector<u64> small_primes = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

std::vector<std::complex<double>> random_sequence(oracle::Lcg& rng, std::size_t len)
{
    auto uniform = [&] { return static_cast<double>(rng.next() >> 11) * 0x1p-53 * 2 - 1; };
    std::vector<std::complex<double>> seq(len);
    for (auto& v : seq) v = {uniform(), uniform()};
    return seq;
}

} // namespace

TEST_CASE("legendre examples and brute force")
{
    for (u64 q : {3ULL, 5ULL, 7ULL}) CHECK(legendre(1, q) == 1);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(14, 7) == 0);
    CHECK(legendre(-1, 7) == -1);
    CHECK_THROWS_AS(legendre(1, 2), DomainError);
    CHECK_THROWS_AS(legendre(1, 9), DomainError);

    for (u64 q : small_primes)
        for (u64 n = 1; n < q; ++n) REQUIRE((legendre(static_cast<i64>(n), q) == 1) == oracle::is_square_mod(n, q));

    oracle::Lcg rng{11};
    const u64 q = 1'000'003;
    for (int i = 0; i < 10'000; ++i) {
        const i64 m = static_cast<i64>(rng.next() >> 20);
        const i64 n = static_cast<i64>(rng.next() >> 20);
        const i64 mn = static_cast<i64>((static_cast<u64>(m) % q) * (static_cast<u64>(n) % q));
        REQUIRE(legendre(mn, q) == legendre(m, q) * legendre(n, q));
    }
}

TEST_CASE("smallest_qnr and n2_count")
{
    CHECK(smallest_qnr(3) == 2);
    CHECK(smallest_qnr(7) == 3);
    CHECK(smallest_qnr(23) == 5);
    CHECK_THROWS_AS(smallest_qnr(2), DomainError);

    CHECK(n2_count(1, 5) == 2);
    CHECK(n2_count(2, 5) == 0);
    CHECK(n2_count(4, 5) == 2);
    CHECK_THROWS_AS(n2_count(10, 5), DomainError);
    for (u64 q : small_primes)
        for (u64 n = 1; n < q; ++n) {
            int count = 0;
            for (u64 y = 1; y < q; ++y) count += (y * y % q == n);
            REQUIRE(n2_count(static_cast<i64>(n), q) == count);
        }
}

TEST_CASE("residue_histogram")
{
    const ResidueHistogram h = residue_histogram(4, 3);
    CHECK(h.counts == std::vector<std::uint32_t>{0, 0, 1});

    for (u64 x : {1000ULL, 54'321ULL, 1'000'000ULL})
        for (u64 q : {3ULL, 31ULL, 9973ULL}) {
            const ResidueHistogram r = residue_histogram(x, q);
            REQUIRE(r.total() == count_squarefull(2 * x) - count_squarefull(x));
        }

    // direct scan oracle
    const u64 x = 20'000, q = 13;
    std::vector<std::uint32_t> expect(q, 0);
    for (u64 n = x + 1; n <= 2 * x; ++n)
        if (oracle::squarefull(n)) ++expect[n % q];
    CHECK(residue_histogram(x, q).counts == expect);

    const ResidueHistogram big = residue_histogram(1'000'000, 10'000'019);
    for (auto c : big.counts) REQUIRE(c <= 1);
    CHECK_THROWS_AS(residue_histogram(100, 15), DomainError);
}

TEST_CASE("ap_main_bracket")
{
    const double x = 1e6, q = 101;
    const KeyZetas& z = key_zetas();
    const double expect = z.z3_2 / z.z3 / q * (1 - 1 / q) * (std::sqrt(2.0) - 1) * std::sqrt(x) +
                          z.z2_3 / z.z2 / q * (1 - std::pow(q, -2.0 / 3)) * (std::cbrt(2.0) - 1) * std::cbrt(x);
    CHECK(ap_main_bracket(x, q) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(ap_main_bracket(x, q) > 0);
    const double r = ap_main_bracket(x, 1e9) * 1e9 / (ap_main_bracket(x, 1e10) * 1e10);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("ap_variance")
{
    const APVarianceReport r = ap_variance(1'000'000, 9973);
    CHECK(r.statistic >= 0);
    CHECK(std::isfinite(r.statistic));
    CHECK(r.alpha == smallest_qnr(9973));
    CHECK(legendre(static_cast<i64>(r.alpha), 9973) == -1);
    CHECK(r.ratio == doctest::Approx(r.statistic / r.prediction));
    CHECK_FALSE(r.outside_range);
    CHECK(ap_variance(1'000'000, 9973).statistic == r.statistic);

    CHECK_THROWS_AS(ap_variance(1000, 4), DomainError);
    CHECK_THROWS_AS(ap_variance(1000, 21), DomainError);
    CHECK_THROWS_AS(ap_variance(1000, 7, 2), DomainError); // 2 is a residue mod 7
    CHECK(ap_variance(1000, 7, 5).alpha == 5);
}

TEST_CASE("ap_variance equals the character-side expression")
{
    for (u64 q : small_primes) {
        const u64 x = 10'000;
        const ResidueHistogram h = residue_histogram(x, q);
        const u64 alpha = smallest_qnr(q);
        const APVarianceReport r = ap_variance_from_histogram(h, alpha);

        // indicator of (x, 2x] square-full, shifted so that subtracting the
        // bracket acts on the coprime classes only
        std::vector<std::complex<double>> seq(2 * x, 0.0);
        for (u64 n = x + 1; n <= 2 * x; ++n) seq[n - 1] = oracle::squarefull(n) ? 1.0 : 0.0;
        // put the bracket as a per-class offset at the first q positions
        std::vector<std::complex<double>> shifted(seq);
        for (u64 l = 1; l < q; ++l) shifted[l - 1] -= r.main_bracket;
        // classes 1..q-1 are each hit once by positions 1..q-1
        const OrthogonalitySides s = orthogonality_sides(q, alpha, shifted);
        CHECK(s.character_all.real() == doctest::Approx(s.residue_plain).epsilon(1e-9));
        CHECK(s.residue_plain / static_cast<double>(q - 1) == doctest::Approx(r.statistic).epsilon(1e-9));
    }
}

TEST_CASE("orthogonality identities hold for random complex sequences")
{
    oracle::Lcg rng{314159};
    for (u64 q : small_primes) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto seq = random_sequence(rng, 1 + rng.next() % 200);
            for (u64 alpha = 1; alpha < q; ++alpha) {
                const OrthogonalitySides s = orthogonality_sides(q, alpha, seq);
                REQUIRE(std::abs(s.character_all.real() - s.residue_plain) <= 1e-9 * std::max(1.0, s.residue_plain));
                REQUIRE(std::abs(s.character_nonprincipal.real() - s.residue_centered) <=
                        1e-9 * std::max(1.0, s.residue_centered));
                // direct residue side
                std::vector<std::complex<double>> cls(q, 0.0);
                for (std::size_t i = 0; i < seq.size(); ++i) cls[(i + 1) % q] += seq[i];
                double plain = 0;
                for (u64 l = 1; l < q; ++l) plain += std::norm(0.5 * (cls[l] + cls[alpha * l % q]));
                REQUIRE(std::abs(plain - s.residue_plain) <= 1e-9 * std::max(1.0, plain));
            }
        }
    }
}

TEST_CASE("pairing l, alpha l covers each class exactly twice")
{
    for (u64 q : small_primes)
        for (u64 alpha = 2; alpha < q; ++alpha) {
            if (legendre(static_cast<i64>(alpha), q) != -1) continue;
            std::vector<int> hits(q, 0);
            for (u64 l = 1; l < q; ++l) {
                ++hits[l];
                ++hits[alpha * l % q];
            }
            for (u64 l = 1; l < q; ++l) REQUIRE(hits[l] == 2);
        }
}

TEST_CASE("count_squarefull_ap")
{
    CHECK(count_squarefull_ap(8, 3, 2) == 1);
    for (u64 q : {2ULL, 3ULL, 10ULL, 97ULL}) {
        u64 total = 0, multiples = 0;
        for (u64 l = 0; l < q; ++l) total += count_squarefull_ap(100'000, q, l);
        for (u64 n = q; n <= 100'000; n += q) multiples += oracle::squarefull(n);
        CHECK(total == count_squarefull(100'000));
        CHECK(count_squarefull_ap(100'000, q, 0) == multiples);
    }
    CHECK_THROWS_AS(count_squarefull_ap(100, 7, 7), DomainError);
}

TEST_CASE("A_{q,l} candidates")
{
    const u64 q = 7;
    for (u64 l = 1; l < q; ++l) {
        const AqlEstimate u = a_ql_estimate(q, l, 10'000, AqlVariant::unrestricted_b);
        const AqlEstimate s = a_ql_estimate(q, l, 10'000, AqlVariant::squarefree_inverse_cube);
        CHECK(u.value > 0);
        CHECK(std::isfinite(u.value));
        CHECK(s.value > 0);
        // the two forms are equal for prime q; only the tail estimates differ
        CHECK(u.value == doctest::Approx(s.value).epsilon(1e-3));
    }
    // quadratic residue 2 vs nonresidue 3 modulo 7
    const u64 x = 10'000'000'000ULL;
    CHECK(a_ql_empirical(q, 2, x) > a_ql_empirical(q, 3, x));
    const double e1 = a_ql_empirical(q, 2, x / 16), e4 = a_ql_empirical(q, 2, x / 4), e16 = a_ql_empirical(q, 2, x);
    const double a = a_ql_estimate(q, 2, 100'000, AqlVariant::unrestricted_b).value;
    CHECK(std::abs(e16 - a) < std::abs(e1 - a) + 0.05);
    CHECK(std::abs(e4 - e16) < 0.1 * a);
    CHECK_THROWS_AS(a_ql_estimate(q, 7, 100, AqlVariant::unrestricted_b), DomainError);
}

TEST_CASE("primitive_root and nearest_prime")
{
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(23) == 5);
    for (u64 q : small_primes) {
        const u64 g = primitive_root(q);
        std::vector<bool> seen(q, false);
        u64 v = 1;
        for (u64 k = 0; k + 1 < q; ++k) {
            seen[v] = true;
            v = v * g % q;
        }
        for (u64 l = 1; l < q; ++l) REQUIRE(seen[l]);
    }
    CHECK(nearest_prime(10) == 11);
    CHECK(nearest_prime(9) == 7);
    CHECK(nearest_prime(24) == 23);
    CHECK(oracle::prime(nearest_prime(25'118'864)));
}
