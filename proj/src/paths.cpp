#include "sqfull/paths.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqfull/constants.hpp"
#include "sqfull/errors.hpp"
#include "sqfull/limits.hpp"
#include "sqfull/sieves.hpp"
#include "sqfull/squarefull.hpp"
#include "sqfull/variance_short.hpp"

namespace sqfull {

std::string_view to_string(PathKind k) { return k == PathKind::prime ? "prime" : "squarefull"; }

std::string_view to_string(HurstMethod m)
{
    return m == HurstMethod::aggregated_variance ? "aggregated_variance" : "rescaled_range";
}

namespace {

constexpr u64 max_grid = 1'000'000;

void check_path_args(u64 x, u64 H, u64 grid)
{
    if (H == 0) throw DomainError("path requires H >= 1");
    if (grid == 0 || grid > max_grid) throw DomainError("path grid must be in [1, 10^6]");
    if (x > limits().count_cap || H > limits().count_cap - x)
        throw CapacityError("path: x + H exceeds capacity");
    if (H > limits().segment_cap) throw CapacityError("path: H exceeds segment cap");
}

// Offset of the k-th grid boundary inside the window: floor(k H / grid).
u64 boundary(u64 k, u64 H, u64 grid)
{
    return static_cast<u64>(static_cast<u128>(k) * H / grid);
}

// Drift term t_k H. Division of exact integers is correctly rounded, so
// (2k H)/(2 grid) and (k H)/grid give the same double.
double drift(u64 k, u64 H, u64 grid)
{
    return static_cast<double>(static_cast<u128>(k) * H) / static_cast<double>(grid);
}

// Weighted events at offsets inside the window, accumulated sequentially and
// sampled at grid boundaries.
struct Event
{
    u64    offset; // n - x, in [1, H]
    double weight;
};

std::vector<double> sample_prefix(const std::vector<Event>& events, u64 H, u64 grid)
{
    std::vector<double> sums(grid + 1, 0.0);
    double running = 0.0;
    std::size_t e = 0;
    for (u64 k = 1; k <= grid; ++k) {
        const u64 edge = boundary(k, H, grid);
        while (e < events.size() && events[e].offset <= edge) running += events[e++].weight;
        sums[k] = running;
    }
    return sums;
}

double one_pass_sum(const std::vector<Event>& events)
{
    double running = 0.0;
    for (const auto& ev : events) running += ev.weight;
    return running;
}

std::vector<Event> prime_events(u64 x, u64 H, bool literal)
{
    const PrimeWindow w = primes_in_window(x, x + H);
    std::vector<Event> ev;
    ev.reserve(w.primes.size());
    for (u64 p : w.primes)
        ev.push_back({p - x, std::log(static_cast<double>(p)) - (literal ? 1.0 : 0.0)});
    return ev;
}

std::vector<Event> squarefull_events(u64 x, u64 H)
{
    const SquareFullWindow w = squarefull_in_window(x, H);
    std::vector<Event> ev;
    ev.reserve(w.members.size());
    for (const auto& m : w.members)
        ev.push_back({m.n - x, 1.0 / squarefull_density(static_cast<double>(m.n))});
    return ev;
}

} // namespace

double squarefull_density(double n)
{
    const KeyZetas& z = key_zetas();
    return z.z3_2 / (2 * z.z3 * std::sqrt(n)) + z.z2_3 / (3 * z.z2 * std::cbrt(n * n));
}

PathSeries prime_path(u64 x, u64 H, u64 grid, bool literal)
{
    check_path_args(x, H, grid);
    PathSeries s{PathKind::prime, x, H, grid, literal, {}};
    const auto sums = sample_prefix(prime_events(x, H, literal), H, grid);
    const double scale = 1 / std::sqrt(static_cast<double>(H));
    s.values.resize(grid + 1);
    for (u64 k = 0; k <= grid; ++k)
        s.values[k] = (literal ? sums[k] : sums[k] - drift(k, H, grid)) * scale;
    return s;
}

PathSeries squarefull_path(u64 x, u64 H, u64 grid)
{
    check_path_args(x, H, grid);
    PathSeries s{PathKind::squarefull, x, H, grid, false, {}};
    const auto sums = sample_prefix(squarefull_events(x, H), H, grid);
    const double scale = 1 / std::pow(static_cast<double>(H), 0.6);
    s.values.resize(grid + 1);
    for (u64 k = 0; k <= grid; ++k) s.values[k] = (sums[k] - drift(k, H, grid)) * scale;
    return s;
}

double prime_path_endpoint(u64 x, u64 H, bool literal)
{
    check_path_args(x, H, 1);
    const double sum = one_pass_sum(prime_events(x, H, literal));
    const double scale = 1 / std::sqrt(static_cast<double>(H));
    return (literal ? sum : sum - static_cast<double>(H)) * scale;
}

double squarefull_path_endpoint(u64 x, u64 H)
{
    check_path_args(x, H, 1);
    const double sum = one_pass_sum(squarefull_events(x, H));
    const double scale = 1 / std::pow(static_cast<double>(H), 0.6);
    return (sum - static_cast<double>(H)) * scale;
}

namespace {

HurstEstimate aggregated_variance(std::span<const double> v)
{
    const std::size_t n = v.size() - 1;
    std::vector<ScalePoint> pts;
    for (std::size_t m = 1; m <= n / 8; m *= 2) {
        double acc = 0;
        for (std::size_t k = 0; k + m <= n; ++k) {
            const double d = v[k + m] - v[k];
            acc += d * d;
        }
        const double msq = acc / static_cast<double>(n - m + 1);
        if (!(msq > 0)) throw DomainError("hurst_estimate: degenerate (constant) series");
        pts.push_back({static_cast<double>(m), msq});
    }
    const ExponentFit fit = exponent_fit(pts);
    return {HurstMethod::aggregated_variance, fit.slope / 2, fit.stderr_slope / 2};
}

HurstEstimate rescaled_range(std::span<const double> v)
{
    const std::size_t n = v.size() - 1;
    std::vector<double> inc(n);
    for (std::size_t k = 0; k < n; ++k) inc[k] = v[k + 1] - v[k];
    std::vector<ScalePoint> pts;
    for (std::size_t m = 8; m <= n / 2; m *= 2) {
        double rs_sum = 0;
        int blocks = 0;
        for (std::size_t start = 0; start + m <= n; start += m) {
            double mean = 0;
            for (std::size_t i = 0; i < m; ++i) mean += inc[start + i];
            mean /= static_cast<double>(m);
            double cum = 0, lo = 0, hi = 0, ss = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const double d = inc[start + i] - mean;
                cum += d;
                lo = std::min(lo, cum);
                hi = std::max(hi, cum);
                ss += d * d;
            }
            const double sd = std::sqrt(ss / static_cast<double>(m));
            if (sd > 0) {
                rs_sum += (hi - lo) / sd;
                ++blocks;
            }
        }
        if (blocks > 0 && rs_sum > 0) pts.push_back({static_cast<double>(m), rs_sum / blocks});
    }
    if (pts.size() < 3) throw DomainError("hurst_estimate: degenerate (constant) series");
    const ExponentFit fit = exponent_fit(pts);
    return {HurstMethod::rescaled_range, fit.slope, fit.stderr_slope};
}

} // namespace

HurstEstimate hurst_estimate(std::span<const double> values, HurstMethod method)
{
    if (values.size() < 257) throw DomainError("hurst_estimate requires a grid of at least 256");
    return method == HurstMethod::aggregated_variance ? aggregated_variance(values)
                                                      : rescaled_range(values);
}

HurstEstimate hurst_estimate(const PathSeries& series, HurstMethod method)
{
    return hurst_estimate(std::span<const double>(series.values), method);
}

} // namespace sqfull
