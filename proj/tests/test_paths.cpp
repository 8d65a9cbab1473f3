#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sqfull/errors.hpp"
#include "sqfull/paths.hpp"
#include "sqfull/squarefull.hpp"

using namespace sqfull;

namespace {

std::vector<double> lcg_walk(u64 seed, std::size_t steps)
{
    oracle::Lcg rng{seed};
    std::vector<double> v(steps + 1, 0.0);
    for (std::size_t k = 1; k <= steps; ++k) v[k] = v[k - 1] + ((rng.next() >> 63) ? 1.0 : -1.0);
    return v;
}

} // namespace

TEST_CASE("prime path basics")
{
    const PathSeries s = prime_path(1'000'000, 10'000, 64);
    REQUIRE(s.values.size() == 65);
    CHECK(s.values[0] == 0);
    CHECK(s.kind == PathKind::prime);

    // trial-division oracle for the endpoint
    double sum = 0;
    for (u64 n = 1'000'001; n <= 1'010'000; ++n)
        if (oracle::prime(n)) sum += std::log(static_cast<double>(n));
    const double expect = (sum - 10'000.0) / 100.0;
    CHECK(std::abs(s.values[64] - expect) <= 1e-9);
    CHECK(std::abs(prime_path_endpoint(1'000'000, 10'000) - expect) <= 1e-9);

    const PathSeries one = prime_path(1'000'000, 10'000, 1);
    CHECK(one.values[1] == prime_path_endpoint(1'000'000, 10'000));

    // intermediate grid point against the oracle
    double part = 0;
    for (u64 n = 1'000'001; n <= 1'002'500; ++n)
        if (oracle::prime(n)) part += std::log(static_cast<double>(n));
    CHECK(std::abs(s.values[16] - (part - 2500.0) / 100.0) <= 1e-9);

    const PathSeries lit = prime_path(1'000'000, 10'000, 64, true);
    double lit_sum = 0;
    for (u64 n = 1'000'001; n <= 1'010'000; ++n)
        if (oracle::prime(n)) lit_sum += std::log(static_cast<double>(n)) - 1;
    CHECK(std::abs(lit.values[64] - lit_sum / 100.0) <= 1e-9);
    CHECK(lit.values[64] == prime_path_endpoint(1'000'000, 10'000, true));

    CHECK_THROWS_AS(prime_path(10, 0, 4), DomainError);
    CHECK_THROWS_AS(prime_path(10, 10, 0), DomainError);
}

TEST_CASE("path invariants: endpoint, refinement and determinism")
{
    const u64 x = 2'000'000'000ULL, H = 3'000'000;
    const PathSeries g = squarefull_path(x, H, 512);
    const PathSeries g2 = squarefull_path(x, H, 1024);
    CHECK(g.values[512] == squarefull_path_endpoint(x, H));
    for (u64 k = 0; k <= 512; ++k) REQUIRE(g2.values[2 * k] == g.values[k]);
    CHECK(squarefull_path(x, H, 512).values == g.values);

    const PathSeries p = prime_path(x, H, 256);
    const PathSeries p2 = prime_path(x, H, 512);
    CHECK(p.values[256] == prime_path_endpoint(x, H));
    for (u64 k = 0; k <= 256; ++k) REQUIRE(p2.values[2 * k] == p.values[k]);
}

TEST_CASE("square-full path: jumps only at members, pure drift in between")
{
    const u64 x = 10'000'000'000ULL, H = 200'000;
    const u64 grid = 2000; // boundaries every 100 integers
    const PathSeries s = squarefull_path(x, H, grid);
    const SquareFullWindow w = squarefull_in_window(x, H);
    const double scale = std::pow(static_cast<double>(H), -0.6);
    const double step = static_cast<double>(H) / grid * scale;
    std::size_t m = 0;
    for (u64 k = 1; k <= grid; ++k) {
        double jump = 0;
        while (m < w.members.size() && w.members[m].n <= x + k * (H / grid))
            jump += 1 / squarefull_density(static_cast<double>(w.members[m++].n)) * scale;
        REQUIRE(s.values[k] - s.values[k - 1] == doctest::Approx(jump - step).epsilon(1e-9));
    }
    CHECK(m == w.members.size());

    // a window without members: linear decrease
    u64 y = 10'000'000'000ULL;
    while (squarefull_in_window(y, 1000).count() != 0) y += 1000;
    const PathSeries e = squarefull_path(y, 1000, 10);
    for (u64 k = 0; k <= 10; ++k)
        CHECK(e.values[k] == doctest::Approx(-100.0 * k * std::pow(1000.0, -0.6)).epsilon(1e-12));
}

TEST_CASE("hurst fixtures")
{
    std::vector<double> ramp(4097);
    for (std::size_t k = 0; k < ramp.size(); ++k) ramp[k] = static_cast<double>(k) / 4096;
    const HurstEstimate r = hurst_estimate(ramp, HurstMethod::aggregated_variance);
    CHECK(std::abs(r.value - 1) <= 0.05);

    const auto walk = lcg_walk(42, 4096);
    const HurstEstimate av = hurst_estimate(walk, HurstMethod::aggregated_variance);
    const HurstEstimate rs = hurst_estimate(walk, HurstMethod::rescaled_range);
    CHECK(av.value >= 0.4);
    CHECK(av.value <= 0.6);
    CHECK(rs.value >= 0.4);
    CHECK(rs.value <= 0.7);

    std::vector<double> half;
    for (std::size_t k = 0; k < walk.size(); k += 2) half.push_back(walk[k]);
    const HurstEstimate hv = hurst_estimate(half, HurstMethod::aggregated_variance);
    CHECK(std::abs(hv.value - av.value) <= av.stderr_value + hv.stderr_value);

    std::vector<double> flat(4097, 1.5);
    CHECK_THROWS_AS(hurst_estimate(flat, HurstMethod::aggregated_variance), DomainError);
    CHECK_THROWS_AS(hurst_estimate(std::vector<double>(100, 0.0), HurstMethod::rescaled_range), DomainError);

    const PathSeries p = prime_path(1'000'000'000ULL, 1'000'000, 1024);
    const HurstEstimate ph = hurst_estimate(p, HurstMethod::aggregated_variance);
    CHECK(ph.value > 0);
    CHECK(ph.value < 1);
}
