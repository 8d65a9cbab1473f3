#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sqfull/intmath.hpp"

namespace sqfull {

enum class PathKind { prime, squarefull };

std::string_view to_string(PathKind k);

// Normalized partial sums over (x, x + t H] at t_k = k / grid, k = 0..grid.
struct PathSeries
{
    PathKind            kind = PathKind::prime;
    u64                 x = 0;
    u64                 H = 0;
    u64                 grid = 0;
    bool                literal = false;
    std::vector<double> values; // grid + 1 entries, values[0] = 0
};

constexpr u64 default_path_grid = 4096;

// H^-1/2 (sum_{x < p <= x + t H} log p - t H). With literal = true the drift is
// -1 per prime instead: H^-1/2 sum (log p - 1).
PathSeries prime_path(u64 x, u64 H, u64 grid = default_path_grid, bool literal = false);

// H^-3/5 (sum_{x < n <= x + t H, n square-full} w(n) - t H) with
// w(n) = 1 / (zeta(3/2)/(2 zeta(3) sqrt n) + zeta(2/3)/(3 zeta(2) n^(2/3))).
PathSeries squarefull_path(u64 x, u64 H, u64 grid = default_path_grid);

// The t = 1 value of each path from a single pass over the full window.
double prime_path_endpoint(u64 x, u64 H, bool literal = false);
double squarefull_path_endpoint(u64 x, u64 H);

// 1 / w(n) above: the local density of square-full integers at n.
double squarefull_density(double n);

enum class HurstMethod { aggregated_variance, rescaled_range };

std::string_view to_string(HurstMethod m);

struct HurstEstimate
{
    HurstMethod method = HurstMethod::aggregated_variance;
    double      value = 0.0;
    double      stderr_value = 0.0;
};

// Aggregated variance: mean squared increment at lags m = 1, 2, 4, ... against
// m in log-log has slope 2H. Rescaled range: classical R/S over dyadic blocks
// of the increment series, slope H. Needs >= 257 values (grid >= 256).
HurstEstimate hurst_estimate(std::span<const double> values, HurstMethod method);
HurstEstimate hurst_estimate(const PathSeries& series, HurstMethod method);

} // namespace sqfull
