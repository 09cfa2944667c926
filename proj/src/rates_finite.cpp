#include "bmcap/rates_finite.hpp"

#include "bmcap/errors.hpp"
#include "bmcap/spectral_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bmcap {

std::string_view to_string(RateKind kind) {
    switch (kind) {
        case RateKind::holevo: return "holevo";
        case RateKind::heterodyne: return "heterodyne";
        case RateKind::homodyne: return "homodyne";
    }
    return "?";
}

std::optional<RateKind> rate_kind_from_string(std::string_view name) {
    if (name == "holevo") return RateKind::holevo;
    if (name == "heterodyne") return RateKind::heterodyne;
    if (name == "homodyne") return RateKind::homodyne;
    return std::nullopt;
}

Scheme canonical_scheme(RateKind kind) {
    return kind == RateKind::homodyne ? Scheme::single_quadrature : Scheme::symmetric;
}

namespace {

struct RateContext {
    std::vector<double> cosines;
    double eta;
    double s, r, y;
    double K;
};

RateContext make_context(long n, const ChannelParams& params, const EncodingParams& enc) {
    params.validate();
    if (n < 1) throw std::invalid_argument("rates: n must be >= 1");
    const double theta = theta_n(enc.r, n, params.N);
    if (theta > 1.0) {
        throw ConstraintError("rates: r = " + std::to_string(enc.r) +
                              " exceeds the energy budget (theta = " + std::to_string(theta) +
                              ")");
    }
    return RateContext{mode_cosines(static_cast<int>(n)), params.eta,
                       params.s, enc.r, enc.y,
                       classical_K(enc.y, n, params.N, theta, enc.scheme)};
}

void require_scheme(const EncodingParams& enc, Scheme expected, const char* where) {
    if (enc.scheme != expected) {
        throw std::invalid_argument(std::string(where) + ": wrong modulation scheme for this rate");
    }
}

NuPair nu_pair_at(const RateContext& ctx, double c) {
    const double eta = ctx.eta;
    const double base = eta * eta + (1.0 - eta) * (1.0 - eta) +
                        2.0 * eta * (1.0 - eta) * std::cosh(2.0 * (ctx.s - ctx.r) * c);
    const double avg = base + eta * eta * ctx.K * ctx.K +
                       2.0 * eta * eta * ctx.K * std::cosh(2.0 * (ctx.r - ctx.y) * c) +
                       2.0 * eta * (1.0 - eta) * ctx.K * std::cosh(2.0 * (ctx.s - ctx.y) * c);
    return NuPair{0.5 * std::sqrt(base), 0.5 * std::sqrt(avg)};
}

double holevo_summand(const RateContext& ctx, double c) {
    const NuPair nu = nu_pair_at(ctx, c);
    return entropy_g(std::max(nu.nu_bar - 0.5, 0.0)) - entropy_g(std::max(nu.nu - 0.5, 0.0));
}

double heterodyne_summand(const RateContext& ctx, double c) {
    double acc = 0.0;
    for (double sign : {1.0, -1.0}) {
        const double num = ctx.K * ctx.eta * std::exp(sign * 2.0 * ctx.y * c);
        const double den = ctx.eta * std::exp(sign * 2.0 * ctx.r * c) +
                           (1.0 - ctx.eta) * std::exp(sign * 2.0 * ctx.s * c) + 1.0;
        acc += 0.5 * std::log2(1.0 + num / den);
    }
    return acc;
}

double homodyne_summand(const RateContext& ctx, double c) {
    const double num = 2.0 * ctx.K * ctx.eta * std::exp(2.0 * ctx.y * c);
    const double den = ctx.eta * std::exp(2.0 * ctx.r * c) +
                       (1.0 - ctx.eta) * std::exp(2.0 * ctx.s * c);
    return 0.5 * std::log2(1.0 + num / den);
}

// Sum over k ascending, so results are bit-stable regardless of caller.
template <typename Summand>
double sum_over_modes(const RateContext& ctx, Summand&& term) {
    double total = 0.0;
    for (double c : ctx.cosines) total += term(ctx, c);
    return total;
}

} // namespace

NuPair closed_form_nu(int k, long n, const ChannelParams& params, const EncodingParams& enc) {
    if (k < 1 || k > n) {
        throw std::invalid_argument("closed_form_nu: k must lie in [1, n]");
    }
    const RateContext ctx = make_context(n, params, enc);
    return nu_pair_at(ctx, ctx.cosines[static_cast<std::size_t>(k - 1)]);
}

double holevo_chi(long n, const ChannelParams& params, const EncodingParams& enc) {
    require_scheme(enc, Scheme::symmetric, "holevo_chi");
    return sum_over_modes(make_context(n, params, enc), holevo_summand);
}

double heterodyne_info(long n, const ChannelParams& params, const EncodingParams& enc) {
    require_scheme(enc, Scheme::symmetric, "heterodyne_info");
    return sum_over_modes(make_context(n, params, enc), heterodyne_summand);
}

double homodyne_info(long n, const ChannelParams& params, const EncodingParams& enc) {
    require_scheme(enc, Scheme::single_quadrature, "homodyne_info");
    return sum_over_modes(make_context(n, params, enc), homodyne_summand);
}

double finite_rate(RateKind kind, long n, const ChannelParams& params,
                   const EncodingParams& enc) {
    switch (kind) {
        case RateKind::holevo: return holevo_chi(n, params, enc);
        case RateKind::heterodyne: return heterodyne_info(n, params, enc);
        case RateKind::homodyne: return homodyne_info(n, params, enc);
    }
    throw std::invalid_argument("finite_rate: unknown rate kind");
}

double memoryless_baseline(RateKind kind, double N, double eta) {
    if (!(N > 0.0)) throw std::invalid_argument("memoryless_baseline: N must be positive");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("memoryless_baseline: eta must lie in [0, 1]");
    }
    switch (kind) {
        case RateKind::holevo: return entropy_g(eta * N);
        case RateKind::heterodyne: return std::log2(1.0 + eta * N);
        case RateKind::homodyne: return 0.5 * std::log2(1.0 + 4.0 * eta * N);
    }
    throw std::invalid_argument("memoryless_baseline: unknown rate kind");
}

} // namespace bmcap
