#include "sqfull/variance_short.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sqfull/constants.hpp"
#include "sqfull/errors.hpp"
#include "sqfull/limits.hpp"
#include "sqfull/parallel.hpp"
#include "sqfull/squarefull.hpp"

namespace sqfull {

double main_diff(double r, double x, double y)
{
    if (!(x > 0)) throw DomainError("main_diff requires x > 0");
    if (!(y >= 0)) throw DomainError("main_diff requires y >= 0");
    if (!(r > 0 && r < 1)) throw DomainError("main_diff requires 0 < r < 1");
    return std::pow(x, r) * std::expm1(r * std::log1p(y / x));
}

namespace {

constexpr u64 min_strata = 64;
constexpr u64 exact_mode_cap = 100'000'000;
constexpr int unit_gauss_order = 6;

// int_m^{m+1} (c - main(x))^2 dx on one unit interval.
template <typename Main>
double unit_interval_square(double m, double c, Main&& main)
{
    const GaussRule& g = gauss_legendre(unit_gauss_order);
    double s = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double d = c - main(m + 0.5 + 0.5 * g.nodes[i]);
        s += g.weights[i] * d * d;
    }
    return 0.5 * s;
}

double short_main(double x, double H)
{
    const KeyZetas& z = key_zetas();
    return z.z3_2 / z.z3 * main_diff(0.5, x, H) + z.z2_3 / z.z2 * main_diff(1.0 / 3, x, H);
}

double stratified_mean_square(u64 X, u64 strata, auto&& deviation)
{
    const double width = static_cast<double>(X) / static_cast<double>(strata);
    auto values = parallel_map<double>(strata, [&](std::size_t i) {
        const double x = static_cast<double>(X) + (static_cast<double>(i) + 0.5) * width;
        const double d = deviation(x);
        return d * d;
    });
    CompensatedSum acc;
    for (double v : values) acc.add(v * width);
    return acc.value() / static_cast<double>(X);
}

} // namespace

VarianceReport short_interval_variance(u64 X, u64 H, u64 strata, VarianceMode mode)
{
    if (X < 4 || H < 2 || H > X / 2)
        throw DomainError("short_interval_variance requires 2 <= H <= X/2");
    if (X > limits().count_cap / 2 || 2 * X + H > limits().count_cap)
        throw CapacityError("short_interval_variance: 2X + H exceeds capacity");

    VarianceReport r;
    r.X = X;
    r.H = H;
    r.mode = mode;
    r.bound_reference = std::pow(static_cast<double>(X), 0.2);
    const double Hd = static_cast<double>(H);

    if (mode == VarianceMode::stratified) {
        if (strata < min_strata) throw DomainError("short_interval_variance requires >= 64 strata");
        r.strata = strata;
        r.statistic = stratified_mean_square(X, strata, [&](double x) {
            const u64 m = static_cast<u64>(std::floor(x));
            const double count =
                static_cast<double>(count_squarefull(m + H) - count_squarefull(m));
            return count - short_main(x, Hd);
        });
        return r;
    }

    if (X > exact_mode_cap) throw CapacityError("exact mode is limited to X <= 10^8");
    r.strata = X;
    // square-full flags on (X, 2X + H]; index i <-> X + 1 + i
    std::vector<bool> flag(X + H, false);
    for (const auto& m : squarefull_in_window(X, X + H).members) flag[m.n - X - 1] = true;
    auto is_member = [&](u64 n) { return flag[n - X - 1]; };

    // count on [m, m+1) is #{(m, m + H]}
    u64 count = count_squarefull(X + H) - count_squarefull(X);
    CompensatedSum acc;
    for (u64 m = X; m < 2 * X; ++m) {
        if (m > X) count = count + is_member(m + H) - is_member(m);
        acc.add(unit_interval_square(static_cast<double>(m), static_cast<double>(count),
                                     [&](double x) { return short_main(x, Hd); }));
    }
    r.statistic = acc.value() / static_cast<double>(X);
    return r;
}

VarianceReport divisor23_variance(u64 X, u64 strata, VarianceMode mode)
{
    if (X < 2) throw DomainError("divisor23_variance requires X >= 2");
    if (X > limits().count_cap / 2) throw CapacityError("divisor23_variance: 2X exceeds capacity");

    VarianceReport r;
    r.X = X;
    r.mode = mode;
    r.bound_reference = std::pow(static_cast<double>(X), 0.2);

    if (mode == VarianceMode::stratified) {
        if (strata < min_strata) throw DomainError("divisor23_variance requires >= 64 strata");
        r.strata = strata;
        r.statistic = stratified_mean_square(X, strata, [&](double x) {
            const u64 m = static_cast<u64>(std::floor(x));
            return static_cast<double>(count_pairs_23(m)) - main_term_23(x);
        });
        return r;
    }

    if (X > exact_mode_cap) throw CapacityError("exact mode is limited to X <= 10^8");
    r.strata = X;
    // representation counts on (X, 2X); index i <-> X + 1 + i
    std::vector<std::uint8_t> reps(X, 0);
    const u64 hi = 2 * X - 1;
    for (u64 b = 1; b * b * b <= hi; ++b) {
        const u64 cube = b * b * b;
        for (u64 a = isqrt(X / cube) + 1; a * a * cube <= hi; ++a) ++reps[a * a * cube - X - 1];
    }
    u64 count = count_pairs_23(X);
    CompensatedSum acc;
    for (u64 m = X; m < 2 * X; ++m) {
        if (m > X) count += reps[m - X - 1];
        acc.add(unit_interval_square(static_cast<double>(m), static_cast<double>(count),
                                     [](double x) { return main_term_23(x); }));
    }
    r.statistic = acc.value() / static_cast<double>(X);
    return r;
}

double psi(double u) { return u - std::floor(u) - 0.5; }

namespace {

// Periodic antiderivative of psi: int_0^t psi = ({t}^2 - {t}) / 2.
double psi_antiderivative(double t)
{
    const double f = t - std::floor(t);
    return (f * f - f) / 2;
}

void check_J(double J)
{
    if (!(J >= 2)) throw DomainError("smoothing parameter J must be >= 2");
}

} // namespace

double psi_tilde(double u, double J)
{
    check_J(J);
    return J / 2 * (psi_antiderivative(u + 1 / J) - psi_antiderivative(u - 1 / J));
}

double h_err(double u, double J) { return std::abs(psi_tilde(u, J) - psi(u)); }

FourierDecayReport fourier_decay_check(int J, int jmax)
{
    check_J(J);
    if (jmax < 1 || jmax > 10'000) throw DomainError("fourier_decay_check requires 1 <= jmax <= 10^4");
    const double Jd = J;
    const double breaks[] = {0.0, 1 / Jd, 0.5, 1 - 1 / Jd, 1.0};
    auto integrate = [&](auto&& fn, int j) {
        double total = 0;
        for (int s = 0; s + 1 < 5; ++s) {
            const double a = breaks[s], b = breaks[s + 1];
            if (b <= a) continue;
            const int panels = std::max(4, static_cast<int>(std::ceil(4 * j * (b - a))));
            total += integrate_gl(fn, a, b, panels);
        }
        return total;
    };

    FourierDecayReport rep;
    rep.J = J;
    rep.psi_tilde_mean = integrate([&](double t) { return psi_tilde(t, Jd); }, 1);
    const double two_pi = 2 * std::numbers::pi;
    for (int j = 1; j <= jmax; ++j) {
        FourierRow row{};
        row.j = j;
        row.psi_tilde_sin =
            2 * integrate([&](double t) { return psi_tilde(t, Jd) * std::sin(two_pi * j * t); }, j);
        row.h_cos = 2 * integrate([&](double t) { return h_err(t, Jd) * std::cos(two_pi * j * t); }, j);
        row.abs_psi_tilde_cos = 2 * integrate(
            [&](double t) { return std::abs(psi_tilde(t, Jd)) * std::cos(two_pi * j * t); }, j);
        row.bound = 10.0 * std::min(j, J) / (static_cast<double>(j) * j);
        row.ok = std::abs(row.psi_tilde_sin) <= row.bound && std::abs(row.h_cos) <= row.bound &&
                 std::abs(row.abs_psi_tilde_cos) <= row.bound;
        rep.all_ok = rep.all_ok && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

HyperbolaReport hyperbola_psi_decomposition(u64 x)
{
    if (x < 32) throw DomainError("hyperbola_psi_decomposition requires x >= 32");
    detail::check_count_cap(x, "hyperbola_psi_decomposition");
    HyperbolaReport r;
    r.x = static_cast<double>(x);
    CompensatedSum acc;
    const long double xl = static_cast<long double>(x);
    for (u64 d = 1; static_cast<u128>(d) * d * d * d * d <= x; ++d) {
        // integer parts exactly, fractional parts in long double
        const long double dl = static_cast<long double>(d);
        const long double u1 = std::sqrt(xl / (dl * dl * dl));
        const long double u2 = std::cbrt(xl / (dl * dl));
        const u64 f1 = isqrt(x / (d * d * d));
        const u64 f2 = icbrt(x / (d * d));
        acc.add(static_cast<double>(u1 - static_cast<long double>(f1) - 0.5L));
        acc.add(static_cast<double>(u2 - static_cast<long double>(f2) - 0.5L));
        ++r.terms;
    }
    r.psi_sum = acc.value();
    r.delta23 = delta_23(x).error;
    r.offset_plus = r.psi_sum + r.delta23;
    r.offset_minus = r.psi_sum - r.delta23;
    return r;
}

ExponentFit exponent_fit(std::span<const ScalePoint> points)
{
    if (points.size() < 3) throw DomainError("exponent_fit requires at least 3 points");
    double sx = 0, sy = 0;
    for (const auto& p : points) {
        if (!(p.scale > 0) || !(p.value > 0))
            throw DomainError("exponent_fit requires positive scales and values");
        sx += std::log(p.scale);
        sy += std::log(p.value);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& p : points) {
        const double dx = std::log(p.scale) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.value) - my);
    }
    if (sxx == 0) throw DomainError("exponent_fit requires at least two distinct scales");
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0;
    for (const auto& p : points) {
        const double e = std::log(p.value) - (fit.intercept + fit.slope * std::log(p.scale));
        ssr += e * e;
    }
    fit.stderr_slope = std::sqrt(ssr / (n - 2) / sxx);
    return fit;
}

} // namespace sqfull
