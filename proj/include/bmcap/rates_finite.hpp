// rates_finite.hpp — Closed-form symplectic spectra of the output states and
// the three finite-n information rates. Everything here is O(n) per call:
// the 2n x 2n matrices are never assembled outside oracle paths, so n can
// reach 10^6 in convergence studies.

#pragma once

#include "bmcap/channel.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace bmcap {

enum class RateKind { holevo, heterodyne, homodyne };

std::string_view to_string(RateKind kind);
std::optional<RateKind> rate_kind_from_string(std::string_view name);

/// Modulation-covariance shape canonically associated with a rate:
/// symmetric for holevo/heterodyne, single_quadrature for homodyne.
Scheme canonical_scheme(RateKind kind);

/// k-th symplectic eigenvalue pair of (V_out, V_bar_out), 1 <= k <= n:
///   nu_k     = (1/2) sqrt(eta^2 + (1-eta)^2 + 2 eta (1-eta) cosh phi_sr)
///   nubar_k  adds eta^2 K^2 + 2 eta^2 K cosh phi_ry + 2 eta (1-eta) K cosh phi_sy
/// with phi_lm = 2 (l - m) cos(pi k/(n+1)). Always nubar_k >= nu_k >= 1/2.
struct NuPair {
    double nu;
    double nu_bar;
};
NuPair closed_form_nu(int k, long n, const ChannelParams& params, const EncodingParams& enc);

/// Holevo quantity chi_n = sum_k [g(nubar_k - 1/2) - g(nu_k - 1/2)], total
/// bits over n uses. Requires the symmetric scheme.
double holevo_chi(long n, const ChannelParams& params, const EncodingParams& enc);

/// Mutual information of joint-quadrature (heterodyne) decoding, total bits.
/// Requires the symmetric scheme.
double heterodyne_info(long n, const ChannelParams& params, const EncodingParams& enc);

/// Mutual information of single-quadrature (homodyne) decoding, total bits.
/// Requires the single_quadrature scheme.
double homodyne_info(long n, const ChannelParams& params, const EncodingParams& enc);

/// Dispatch on kind; enc.scheme must match canonical_scheme(kind). Total bits.
double finite_rate(RateKind kind, long n, const ChannelParams& params,
                   const EncodingParams& enc);

/// Memoryless single-use optima, bits per mode:
/// g(eta N), log2(1 + eta N), (1/2) log2(1 + 4 eta N).
double memoryless_baseline(RateKind kind, double N, double eta);

} // namespace bmcap
