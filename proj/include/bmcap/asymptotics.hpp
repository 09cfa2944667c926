// asymptotics.hpp — n -> infinity limits: the modified Bessel function I0,
// the limit energy split (theta, K), and the three rate integrals over
// xi in [0, pi].

#pragma once

#include "bmcap/channel.hpp"
#include "bmcap/rates_finite.hpp"

namespace bmcap {

/// Accuracy request for the adaptive quadrature.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 1 << 16;
};

/// Modified Bessel function of the first kind, order zero. Power series for
/// |x| <= 15, asymptotic expansion beyond; relative accuracy ~1e-12.
/// Throws std::range_error for |x| > 700 (e^x would overflow).
double bessel_i0(double x);

/// Limit values of the energy split:
///   theta = (I0(2r) - 1) / (2N),   K = (2(N + 1/2) - I0(2r)) / I0(2y).
/// Both finite-n K normalizations share this limit. Throws ConstraintError
/// when theta > 1.
EnergyAccount limits_theta_K(double r, double y, double N);

/// Allowed entanglement interval in the n -> infinity limit: r_max solves
/// I0(2r) = 2N + 1, by bisection to 1e-12.
RBounds r_bounds_asymptotic(double N);

/// Integrand of the asymptotic rate at angle xi (bits per unit angle,
/// including the homodyne 1/2). enc.scheme is irrelevant here: the two K
/// normalizations coincide in the limit.
double rate_density(RateKind kind, double xi, const ChannelParams& params,
                    const EncodingParams& enc_limit);

/// (1/pi) * integral of rate_density over [0, pi]: bits per mode in the
/// n -> infinity limit. Adaptive bisection with 15-node Gauss-Legendre
/// panels and an embedded 7-node error estimate; deterministic for a fixed
/// spec. Throws QuadratureError if the subdivision budget is exhausted.
double asymptotic_rate(RateKind kind, const ChannelParams& params,
                       const EncodingParams& enc_limit, const QuadratureSpec& quad = {});

/// Riemann trace average sum_{k=1..n} e^{2 gamma cos(pi k/(n+1))} / (n + 1);
/// converges to I0(2 gamma). Exposed for the verification harness.
double trace_average(double gamma, long n);

} // namespace bmcap
