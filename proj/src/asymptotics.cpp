#include "bmcap/asymptotics.hpp"

#include "bmcap/errors.hpp"
#include "bmcap/spectral_core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmcap {

double bessel_i0(double x) {
    const double ax = std::abs(x);
    if (ax > 700.0) {
        throw std::range_error("bessel_i0: |x| = " + std::to_string(ax) +
                               " exceeds the overflow guard (700)");
    }
    if (ax <= 15.0) {
        // I0(x) = sum_m (x^2/4)^m / (m!)^2; all terms positive.
        const double q = 0.25 * ax * ax;
        double term = 1.0;
        double sum = 1.0;
        for (int m = 1; m <= 200; ++m) {
            term *= q / (static_cast<double>(m) * m);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum;
    }
    // I0(x) ~ e^x / sqrt(2 pi x) * sum_k t_k, t_k = t_{k-1} (2k-1)^2 / (8 x k).
    // Truncate at the smallest term (the series is asymptotic, not convergent).
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (8.0 * ax * k);
        if (next >= term || next < 1e-17 * sum) {
            if (next < term) sum += next;
            break;
        }
        term = next;
        sum += term;
    }
    return std::exp(ax) / std::sqrt(2.0 * std::numbers::pi * ax) * sum;
}

EnergyAccount limits_theta_K(double r, double y, double N) {
    if (!(N > 0.0)) throw std::invalid_argument("limits_theta_K: N must be positive");
    const double i0r = bessel_i0(2.0 * r);
    const double theta = (i0r - 1.0) / (2.0 * N);
    if (theta > 1.0) {
        throw ConstraintError("limits_theta_K: r = " + std::to_string(r) +
                              " exceeds the energy budget (theta = " + std::to_string(theta) +
                              ")");
    }
    return EnergyAccount{theta, (2.0 * (N + 0.5) - i0r) / bessel_i0(2.0 * y)};
}

RBounds r_bounds_asymptotic(double N) {
    if (!(N > 0.0)) throw std::invalid_argument("r_bounds_asymptotic: N must be positive");
    const double level = 2.0 * N + 1.0;
    auto above = [&](double r) {
        if (2.0 * r > 700.0) return std::numeric_limits<double>::infinity();
        return bessel_i0(2.0 * r) / level;
    };
    double hi = 1.0;
    int doublings = 0;
    while (above(hi) < 1.0) {
        hi *= 2.0;
        if (++doublings > 200) {
            throw SolverError("r_bounds_asymptotic: failed to bracket the root");
        }
    }
    double lo = hi * 0.5;
    if (above(lo) >= 1.0) lo = 0.0;
    for (int iter = 0; iter < 200 && hi - lo >= 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (above(mid) < 1.0 ? lo : hi) = mid;
    }
    if (hi - lo >= 1e-12) {
        throw SolverError("r_bounds_asymptotic: bisection did not converge");
    }
    const double r_max = 0.5 * (lo + hi);
    return RBounds{-r_max, r_max, true};
}

namespace {

struct DensityContext {
    RateKind kind;
    double eta;
    double s, r, y;
    double K;
};

double density_at(const DensityContext& ctx, double xi) {
    const double c = std::cos(xi);
    const double eta = ctx.eta;
    switch (ctx.kind) {
        case RateKind::holevo: {
            const double base = eta * eta + (1.0 - eta) * (1.0 - eta) +
                                2.0 * eta * (1.0 - eta) * std::cosh(2.0 * (ctx.s - ctx.r) * c);
            const double avg =
                base + eta * eta * ctx.K * ctx.K +
                2.0 * eta * eta * ctx.K * std::cosh(2.0 * (ctx.r - ctx.y) * c) +
                2.0 * eta * (1.0 - eta) * ctx.K * std::cosh(2.0 * (ctx.s - ctx.y) * c);
            return entropy_g(std::max(0.5 * std::sqrt(avg) - 0.5, 0.0)) -
                   entropy_g(std::max(0.5 * std::sqrt(base) - 0.5, 0.0));
        }
        case RateKind::heterodyne: {
            const double num = ctx.K * eta * std::exp(2.0 * ctx.y * c);
            const double den = eta * std::exp(2.0 * ctx.r * c) +
                               (1.0 - eta) * std::exp(2.0 * ctx.s * c) + 1.0;
            return std::log2(1.0 + num / den);
        }
        case RateKind::homodyne: {
            const double num = 2.0 * ctx.K * eta * std::exp(2.0 * ctx.y * c);
            const double den = eta * std::exp(2.0 * ctx.r * c) +
                               (1.0 - eta) * std::exp(2.0 * ctx.s * c);
            return 0.5 * std::log2(1.0 + num / den);
        }
    }
    throw std::invalid_argument("rate_density: unknown rate kind");
}

DensityContext make_density_context(RateKind kind, const ChannelParams& params,
                                    const EncodingParams& enc) {
    params.validate();
    const EnergyAccount account = limits_theta_K(enc.r, enc.y, params.N);
    return DensityContext{kind, params.eta, params.s, enc.r, enc.y, account.K};
}

struct GLNode {
    double x, w;
};

constexpr std::array<GLNode, 7> kGauss7{{
    {-0.94910791234275852453, 0.12948496616886969327},
    {-0.74153118559939443986, 0.2797053914892766679},
    {-0.40584515137739716691, 0.38183005050511894495},
    {0.0, 0.41795918367346938776},
    {0.40584515137739716691, 0.38183005050511894495},
    {0.74153118559939443986, 0.2797053914892766679},
    {0.94910791234275852453, 0.12948496616886969327},
}};

constexpr std::array<GLNode, 15> kGauss15{{
    {-0.98799251802048542849, 0.030753241996117268355},
    {-0.93727339240070590431, 0.070366047488108124709},
    {-0.8482065834104272162, 0.10715922046717193501},
    {-0.72441773136017004742, 0.13957067792615431445},
    {-0.57097217260853884754, 0.16626920581699393355},
    {-0.3941513470775633699, 0.18616100001556221103},
    {-0.2011940939974345223, 0.19843148532711157646},
    {0.0, 0.20257824192556127288},
    {0.2011940939974345223, 0.19843148532711157646},
    {0.3941513470775633699, 0.18616100001556221103},
    {0.57097217260853884754, 0.16626920581699393355},
    {0.72441773136017004742, 0.13957067792615431445},
    {0.8482065834104272162, 0.10715922046717193501},
    {0.93727339240070590431, 0.070366047488108124709},
    {0.98799251802048542849, 0.030753241996117268355},
}};

template <std::size_t M, typename F>
double panel_quadrature(const std::array<GLNode, M>& rule, F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (const GLNode& node : rule) acc += node.w * f(mid + half * node.x);
    return half * acc;
}

// Depth-first adaptive bisection; accepted panels accumulate left to right,
// so the summation order is deterministic.
template <typename F>
double adaptive_integrate(F&& f, double a, double b, const QuadratureSpec& quad) {
    struct Frame {
        double a, b;
    };
    const double width_total = b - a;
    int used = 0;
    double total = 0.0;
    std::vector<Frame> stack{{a, b}};
    while (!stack.empty()) {
        const Frame fr = stack.back();
        stack.pop_back();
        const double fine = panel_quadrature(kGauss15, f, fr.a, fr.b);
        const double coarse = panel_quadrature(kGauss7, f, fr.a, fr.b);
        const double err = std::abs(fine - coarse);
        const double share = (fr.b - fr.a) / width_total;
        const double budget =
            share * std::max(quad.abs_tol, quad.rel_tol * std::abs(total + fine));
        if (err <= budget || (fr.b - fr.a) < 1e-14 * width_total) {
            total += fine;
            continue;
        }
        if (++used > quad.max_subdivisions) {
            throw QuadratureError("asymptotic_rate: exceeded " +
                                  std::to_string(quad.max_subdivisions) + " subdivisions");
        }
        const double mid = 0.5 * (fr.a + fr.b);
        stack.push_back({mid, fr.b}); // pushed first, popped second: left-to-right order
        stack.push_back({fr.a, mid});
    }
    return total;
}

} // namespace

double rate_density(RateKind kind, double xi, const ChannelParams& params,
                    const EncodingParams& enc_limit) {
    if (xi < 0.0 || xi > std::numbers::pi) {
        throw std::invalid_argument("rate_density: xi must lie in [0, pi]");
    }
    return density_at(make_density_context(kind, params, enc_limit), xi);
}

double asymptotic_rate(RateKind kind, const ChannelParams& params,
                       const EncodingParams& enc_limit, const QuadratureSpec& quad) {
    if (!(quad.abs_tol > 0.0) || !(quad.rel_tol > 0.0)) {
        throw std::invalid_argument("asymptotic_rate: quadrature tolerances must be positive");
    }
    const DensityContext ctx = make_density_context(kind, params, enc_limit);
    const double integral = adaptive_integrate(
        [&](double xi) { return density_at(ctx, xi); }, 0.0, std::numbers::pi, quad);
    return integral / std::numbers::pi;
}

double trace_average(double gamma, long n) {
    if (n < 1) throw std::invalid_argument("trace_average: n must be >= 1");
    const std::vector<double> c = mode_cosines(static_cast<int>(n));
    double sum = 0.0;
    for (double ck : c) sum += std::exp(2.0 * gamma * ck);
    return sum / (static_cast<double>(n) + 1.0);
}

} // namespace bmcap
