#include "sqfull/constants.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "sqfull/errors.hpp"
#include "sqfull/sieves.hpp"

namespace sqfull {

using ld = long double;

std::string_view to_string(ZetaMethod m)
{
    switch (m) {
    case ZetaMethod::closed_form: return "closed_form";
    case ZetaMethod::eta_acceleration: return "eta_acceleration";
    case ZetaMethod::euler_maclaurin: return "euler_maclaurin";
    }
    return "?";
}

namespace {

void check_zeta_domain(double s)
{
    if (!(s > 0.0) || s == 1.0 || !std::isfinite(s))
        throw DomainError("zeta_real requires s > 0 and s != 1");
}

// B_2, B_4, ..., B_24
constexpr std::array<ld, 12> bernoulli_even = {
    1.0L / 6,          -1.0L / 30,         1.0L / 42,
    -1.0L / 30,        5.0L / 66,          -691.0L / 2730,
    7.0L / 6,          -3617.0L / 510,     43867.0L / 798,
    -174611.0L / 330,  854513.0L / 138,    -236364091.0L / 2730,
};

struct Estimate
{
    ld value;
    ld error;
};

Estimate euler_maclaurin(ld s)
{
    constexpr int N = 40;
    ld sum = 0;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<ld>(n), -s);
    const ld Nl = N;
    sum += std::pow(Nl, 1 - s) / (s - 1) + std::pow(Nl, -s) / 2;
    // rising factorial s(s+1)...(s+2k-2) and (2k)!
    ld rising = s;
    ld fact = 2;
    ld last = 0;
    for (std::size_t k = 1; k <= bernoulli_even.size(); ++k) {
        last = bernoulli_even[k - 1] / fact * rising * std::pow(Nl, -s - 2 * static_cast<ld>(k) + 1);
        sum += last;
        rising *= (s + 2 * k - 1) * (s + 2 * k);
        fact *= (2 * k + 1) * (2 * k + 2);
    }
    return {sum, std::abs(last) + 64 * std::numeric_limits<ld>::epsilon() * std::abs(sum)};
}

Estimate eta_borwein(ld s)
{
    constexpr int n = 60;
    std::array<ld, n + 1> d{};
    ld term = 1.0L / n;
    ld acc = term;
    d[0] = n * acc;
    for (int i = 1; i <= n; ++i) {
        term *= static_cast<ld>(n + i - 1) * (n - i + 1) * 4 / ((2 * i - 1) * static_cast<ld>(2 * i));
        acc += term;
        d[i] = n * acc;
    }
    ld sum = 0, abs_sum = 0;
    for (int k = n - 1; k >= 0; --k) {
        ld t = (d[k] - d[n]) / std::pow(static_cast<ld>(k + 1), s);
        sum += (k % 2 == 0) ? t : -t;
        abs_sum += std::abs(t);
    }
    const ld eta = -sum / d[n];
    const ld factor = 1 - std::pow(2.0L, 1 - s);
    const ld rounding = 16 * std::numeric_limits<ld>::epsilon() * abs_sum / d[n];
    return {eta / factor, rounding / std::abs(factor)};
}

} // namespace

double zeta_via_eta(double s)
{
    check_zeta_domain(s);
    return static_cast<double>(eta_borwein(s).value);
}

double zeta_via_euler_maclaurin(double s)
{
    check_zeta_domain(s);
    return static_cast<double>(euler_maclaurin(s).value);
}

ZetaValue zeta_real(double s)
{
    check_zeta_domain(s);
    constexpr double pi = std::numbers::pi;
    const double unit = std::numeric_limits<double>::epsilon();
    if (s == 2.0) return {s, pi * pi / 6, ZetaMethod::closed_form, 2 * unit};
    if (s == 4.0) return {s, std::pow(pi, 4) / 90, ZetaMethod::closed_form, 2 * unit};
    if (s == 6.0) return {s, std::pow(pi, 6) / 945, ZetaMethod::closed_form, 2 * unit};
    Estimate e = (s < 2.0) ? eta_borwein(s) : euler_maclaurin(s);
    const double value = static_cast<double>(e.value);
    const double err = static_cast<double>(e.error) + unit * std::abs(value);
    return {s, value, s < 2.0 ? ZetaMethod::eta_acceleration : ZetaMethod::euler_maclaurin, err};
}

const KeyZetas& key_zetas()
{
    static const KeyZetas z{
        zeta_real(1.5).value,       zeta_real(2.0 / 3).value, zeta_real(3.0).value,
        zeta_real(2.0).value,       zeta_real(11.0 / 6).value, zeta_real(0.5).value,
    };
    return z;
}

double pair_density(double u)
{
    const KeyZetas& z = key_zetas();
    return z.z3_2 / (2 * std::sqrt(u)) + z.z2_3 / (3 * std::cbrt(u * u));
}

double pair_density_derivative(int k, double u)
{
    const KeyZetas& z = key_zetas();
    // d^k/du^k u^-a = (-a)(-a-1)...(-a-k+1) u^(-a-k)
    double fa = 1, fb = 1;
    for (int i = 0; i < k; ++i) {
        fa *= -0.5 - i;
        fb *= -2.0 / 3 - i;
    }
    return z.z3_2 / 2 * fa * std::pow(u, -0.5 - k) + z.z2_3 / 3 * fb * std::pow(u, -2.0 / 3 - k);
}

EulerProductReport euler_product_C(std::uint64_t P)
{
    if (P < 2) throw DomainError("euler_product_C requires P >= 2");
    EulerProductReport r{P, 1.0, 1.0 / static_cast<double>(P - 1)};
    for (u64 p : primes_in_window(0, P).primes) {
        const double inv = 1.0 / static_cast<double>(p);
        const double inv2 = inv * inv;
        const double inv6 = inv2 * inv2 * inv2;
        r.value *= 1 - inv2 + 2 * inv6 + 2 * inv6 * inv;
    }
    return r;
}

EulerProductReport euler_product_C_accelerated(std::uint64_t P)
{
    if (P < 2) throw DomainError("euler_product_C requires P >= 2");
    ld prod = 1;
    for (u64 p : primes_in_window(0, P).primes) {
        const ld inv = 1.0L / p;
        const ld inv2 = inv * inv;
        const ld inv6 = inv2 * inv2 * inv2;
        prod *= 1 + (2 * inv6 + 2 * inv6 * inv) / (1 - inv2);
    }
    const ld pi = std::numbers::pi_v<ld>;
    const double tail = 1.0 / std::pow(static_cast<double>(P), 5.0);
    return {P, static_cast<double>(prod * 6 / (pi * pi)), tail};
}

std::complex<double> weight_W(double y)
{
    const double twopi = 2 * std::numbers::pi;
    const int panels = std::max(2, static_cast<int>(std::ceil(8 * std::abs(y))));
    return integrate_gl(
        [&](double u) { return pair_density(u) * std::polar(1.0, -twopi * u * y); }, 1.0, 2.0,
        panels);
}

namespace {

// p_k = f^(k)(u0) / (2 pi i)^(k+1), so the boundary series at u0 is sum_k p_k y^-(k+1).
std::vector<std::complex<ld>> boundary_coefficients(double u0, int terms)
{
    const std::complex<ld> two_pi_i(0, 2 * std::numbers::pi_v<ld>);
    std::vector<std::complex<ld>> c(terms);
    std::complex<ld> denom = two_pi_i;
    for (int k = 0; k < terms; ++k) {
        c[k] = static_cast<ld>(pair_density_derivative(k, u0)) / denom;
        denom *= two_pi_i;
    }
    return c;
}

// int_Y^inf y^b exp(2 pi i y) dy by the integration-by-parts series.
std::complex<ld> oscillatory_tail(ld b, ld Y)
{
    const std::complex<ld> two_pi_i(0, 2 * std::numbers::pi_v<ld>);
    std::complex<ld> term = std::pow(Y, b) / two_pi_i; // n = 0
    std::complex<ld> sum = term;
    for (int n = 1; n < 80; ++n) {
        term *= -(b - n + 1) / (Y * two_pi_i);
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    return -std::exp(two_pi_i * Y) * sum;
}

} // namespace

std::complex<double> weight_W_asymptotic(double y, int terms)
{
    const ld w = 2 * std::numbers::pi_v<ld> * y;
    const std::complex<ld> iw(0, w);
    std::complex<ld> P = 0, R = 0, pow_iw = iw;
    for (int k = 0; k < terms; ++k) {
        P += static_cast<ld>(pair_density_derivative(k, 1.0)) / pow_iw;
        R += static_cast<ld>(pair_density_derivative(k, 2.0)) / pow_iw;
        pow_iw *= iw;
    }
    const std::complex<ld> W = P * std::polar(1.0L, -w) - R * std::polar(1.0L, -2 * w);
    return {static_cast<double>(W.real()), static_cast<double>(W.imag())};
}

WeightIntegralReport weight_integral(double Y, int resolution)
{
    if (!(Y >= 10.0) || resolution < 2)
        throw DomainError("weight_integral requires Y >= 10 and resolution >= 2");
    WeightIntegralReport r;
    r.Y = Y;
    r.resolution = resolution;

    // [0, 1] with y = t^6 so the y^(5/6) cusp becomes a smooth t^10 factor
    const double near = integrate_gl(
        [](double t) {
            const double t2 = t * t;
            const double t5 = t2 * t2 * t;
            return 6 * t5 * t5 * std::norm(weight_W(t5 * t));
        },
        0.0, 1.0, resolution);
    const int panels = resolution * static_cast<int>(std::ceil(Y - 1));
    const double far = integrate_gl(
        [](double y) { return std::norm(weight_W(y)) * std::pow(y, 5.0 / 6); }, 1.0, Y, panels);
    r.body = near + far;

    // |W|^2 = |P|^2 + |R|^2 - 2 Re(P conj(R) e(y)) with P, R power series in 1/y.
    constexpr int K = 24;
    const auto p = boundary_coefficients(1.0, K);
    const auto q = boundary_coefficients(2.0, K);
    const ld Yl = Y;
    ld mean_tail = 0, osc_tail = 0, last_mean = 0, last_osc = 0;
    for (int m = 2; m <= K + 1; ++m) {
        ld c = 0;
        std::complex<ld> d = 0;
        for (int k = 0; k <= m - 2; ++k) {
            const int j = m - 2 - k;
            c += (p[k] * std::conj(p[j]) + q[k] * std::conj(q[j])).real();
            d += p[k] * std::conj(q[j]);
        }
        const ld mean = c * std::pow(Yl, 11.0L / 6 - m) / (m - 11.0L / 6);
        const ld osc = -2 * (d * oscillatory_tail(5.0L / 6 - m, Yl)).real();
        mean_tail += mean;
        osc_tail += osc;
        last_mean = mean;
        last_osc = osc;
    }
    r.tail = static_cast<double>(mean_tail + osc_tail);
    r.tail_error = static_cast<double>(std::abs(last_mean) + std::abs(last_osc)) +
                   1e-15 * std::abs(r.tail);
    r.value = r.body + r.tail;
    return r;
}

ConstantCReport constant_C(const ConstantCParams& params)
{
    ConstantCReport r;
    r.zeta_factor = key_zetas().z11_6 / 2;
    r.euler = euler_product_C_accelerated(params.P);
    r.weight = weight_integral(params.Y, params.resolution);
    r.weight_refined = weight_integral(2 * params.Y, 2 * params.resolution).value;
    const double rel = std::abs(r.weight_refined - r.weight.value) / std::abs(r.weight.value);
    if (!(rel <= params.refine_tol)) {
        std::ostringstream msg;
        msg << "weight integral not converged: Y=" << params.Y << " res=" << params.resolution
            << " value=" << r.weight.value << " refined=" << r.weight_refined
            << " relative change=" << rel;
        throw ConvergenceError(msg.str());
    }
    r.C = r.zeta_factor * r.euler.value * r.weight.value;
    return r;
}

const ConstantCReport& cached_constant_C()
{
    static const ConstantCReport report = constant_C();
    return report;
}

const GaussRule& gauss_legendre(int n)
{
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess
        ld x = std::cos(std::numbers::pi_v<ld> * (i + 0.75L) / (n + 0.5L));
        ld dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            ld p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                ld pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            ld dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        g.nodes[i] = static_cast<double>(x);
        g.weights[i] = static_cast<double>(2 / ((1 - x * x) * dp * dp));
    }
    return cache.emplace(n, std::move(g)).first->second;
}

} // namespace sqfull
