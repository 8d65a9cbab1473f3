#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sqfull {

enum class ZetaMethod { closed_form, eta_acceleration, euler_maclaurin };

std::string_view to_string(ZetaMethod m);

struct ZetaValue
{
    double     s             = 0.0;
    double     value         = 0.0;
    ZetaMethod method        = ZetaMethod::closed_form;
    double     est_abs_error = 0.0;
};

// Real zeta for s > 0, s != 1. Closed forms at even integers, alternating
// eta series with Borwein acceleration on (0, 2), Euler-Maclaurin above.
ZetaValue zeta_real(double s);

// The two numerical routes, exposed so they can check each other.
double zeta_via_eta(double s);
double zeta_via_euler_maclaurin(double s);

// zeta at the arguments that recur throughout the library, computed once.
struct KeyZetas
{
    double z3_2;  // zeta(3/2)
    double z2_3;  // zeta(2/3)
    double z3;    // zeta(3)
    double z2;    // zeta(2)
    double z11_6; // zeta(11/6)
    double z1_2;  // zeta(1/2)
};

const KeyZetas& key_zetas();

// f(u) = zeta(3/2)/(2 sqrt u) + zeta(2/3)/(3 u^(2/3)), the smooth density of
// (2,3)-pairs.
double pair_density(double u);

// k-th derivative of pair_density.
double pair_density_derivative(int k, double u);

struct EulerProductReport
{
    std::uint64_t P          = 0;
    double        value      = 0.0;
    double        tail_bound = 0.0; // bound on sum_{p > P} p^-2
};

// prod_{p <= P} (1 - p^-2 + 2 p^-6 + 2 p^-7).
EulerProductReport euler_product_C(std::uint64_t P);

// The same infinite product written as (1/zeta(2)) * prod_p (1 + (2p^-6 + 2p^-7)/(1 - p^-2)),
// truncated at P. The truncation error is below 1/P^5.
EulerProductReport euler_product_C_accelerated(std::uint64_t P);

// W(y) = int_1^2 f(u) exp(-2 pi i u y) du by composite Gauss-Legendre with the
// panel count scaled so each panel spans at most pi/4 of phase.
std::complex<double> weight_W(double y);

// Asymptotic expansion of W for large |y|, by repeated integration by parts
// with `terms` boundary terms.
std::complex<double> weight_W_asymptotic(double y, int terms = 30);

struct WeightIntegralReport
{
    double Y          = 0.0;
    int    resolution = 0;   // Gauss-Legendre panels per unit length
    double body       = 0.0; // int_0^Y
    double tail       = 0.0; // int_Y^inf from the asymptotic expansion of W
    double tail_error = 0.0; // bound on the neglected part of the tail
    double value      = 0.0; // body + tail
};

// int_0^inf |W(y)|^2 y^(5/6) dy. Requires Y >= 10 and resolution >= 2.
WeightIntegralReport weight_integral(double Y, int resolution);

struct ConstantCReport
{
    double              zeta_factor  = 0.0; // zeta(11/6)/2
    EulerProductReport  euler;              // accelerated product at P
    WeightIntegralReport weight;            // accepted (Y, resolution)
    double              weight_refined = 0.0; // at (2Y, 2 resolution)
    double              C            = 0.0;
};

struct ConstantCParams
{
    std::uint64_t P          = 10'000;
    double        Y          = 24.0;
    int           resolution = 6;
    double        refine_tol = 1e-6;
};

// C = zeta(11/6)/2 * Euler product * weight integral. Throws ConvergenceError
// if the weight integral moves by more than refine_tol (relative) under one
// doubling of (Y, resolution).
ConstantCReport constant_C(const ConstantCParams& params = {});

// constant_C() with default parameters, computed once per process.
const ConstantCReport& cached_constant_C();

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre of fn over [a, b] with `panels` equal panels.
template <typename Fn>
auto integrate_gl(Fn&& fn, double a, double b, int panels, int order = 20)
{
    const GaussRule& g = gauss_legendre(order);
    const double h = (b - a) / panels;
    decltype(fn(a)) total{};
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + h / 2;
        decltype(fn(a)) part{};
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            part += g.weights[i] * fn(mid + h / 2 * g.nodes[i]);
        total += part * (h / 2);
    }
    return total;
}

} // namespace sqfull
