#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sqfull/intmath.hpp"

namespace sqfull {

// D_r(x; y) = (x + y)^r - x^r, evaluated as x^r expm1(r log1p(y / x)).
double main_diff(double r, double x, double y);

enum class VarianceMode { stratified, exact };

struct VarianceReport
{
    u64                X = 0;
    std::optional<u64> H;          // absent for the (2,3)-divisor statistic
    u64                strata = 0; // unit intervals in exact mode
    VarianceMode       mode = VarianceMode::stratified;
    double             statistic = 0.0;
    double             bound_reference = 0.0; // X^(1/5)
    bool               seedless = true;
};

// (1/X) int_X^2X |Q(x+H) - Q(x) - zeta(3/2)/zeta(3) D_1/2(x;H) - zeta(2/3)/zeta(2) D_1/3(x;H)|^2 dx
// by a stratified midpoint rule with `strata` equal strata (>= 64), or exactly
// when mode == exact (integrand integrated on each unit interval, X <= 10^8).
VarianceReport short_interval_variance(u64 X, u64 H, u64 strata,
                                       VarianceMode mode = VarianceMode::stratified);

// (1/X) int_X^2X |#{a^2 b^3 <= x} - zeta(3/2) sqrt x - zeta(2/3) x^(1/3)|^2 dx
VarianceReport divisor23_variance(u64 X, u64 strata,
                                  VarianceMode mode = VarianceMode::stratified);

// psi(u) = u - floor(u) - 1/2
double psi(double u);

// (J/2) int_{-1/J}^{1/J} psi(u + v) dv, in closed form.
double psi_tilde(double u, double J);

// |psi_tilde(u) - psi(u)|
double h_err(double u, double J);

struct FourierRow
{
    int    j;
    double psi_tilde_sin; // a_j: 2 int_0^1 psi_tilde(t) sin(2 pi j t) dt
    double h_cos;         // b_j: 2 int_0^1 h(t) cos(2 pi j t) dt
    double abs_psi_tilde_cos; // c_j: 2 int_0^1 |psi_tilde(t)| cos(2 pi j t) dt
    double bound;         // 10 min(j, J) / j^2
    bool   ok;
};

struct FourierDecayReport
{
    int                     J = 0;
    double                  psi_tilde_mean = 0.0;
    std::vector<FourierRow> rows;
    bool                    all_ok = true;
};

// Fourier coefficients of psi_tilde, h and |psi_tilde| for 1 <= j <= jmax by
// direct quadrature, each checked against 10 min(j, J)/j^2.
FourierDecayReport fourier_decay_check(int J, int jmax);

struct HyperbolaReport
{
    double x            = 0.0;
    double psi_sum      = 0.0; // sum_{d <= x^(1/5)} psi(sqrt x / d^(3/2)) + psi(x^(1/3) / d^(2/3))
    double delta23      = 0.0;
    double offset_plus  = 0.0; // psi_sum + delta23
    double offset_minus = 0.0; // psi_sum - delta23
    int    terms        = 0;   // number of d
};

HyperbolaReport hyperbola_psi_decomposition(u64 x);

struct ExponentFit
{
    double slope     = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
};

struct ScalePoint
{
    double scale;
    double value;
};

// Least squares of log(value) against log(scale); needs >= 3 positive points.
ExponentFit exponent_fit(std::span<const ScalePoint> points);

} // namespace sqfull
