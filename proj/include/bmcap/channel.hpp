// channel.hpp — Model covariances (environment, input seed, classical
// modulation), the beam-splitter channel at covariance level, and the
// photon-number energy constraint.

#pragma once

#include "bmcap/covariance.hpp"

#include <utility>

namespace bmcap {

/// Physical channel setting.
struct ChannelParams {
    double eta = 0.7; ///< beam-splitter transmittivity, in [0, 1]
    double N = 8.0;   ///< mean photon number per mode, > 0
    double s = 0.0;   ///< memory strength (s = 0 is memoryless)

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Shape of the classical-modulation covariance: both quadratures modulated
/// (Holevo / heterodyne decoding) or only q (homodyne decoding).
enum class Scheme { symmetric, single_quadrature };

/// Optimization variables of the encoding.
struct EncodingParams {
    double r = 0.0; ///< input entanglement parameter
    double y = 0.0; ///< classical correlation parameter
    Scheme scheme = Scheme::symmetric;
};

/// Split of the photon budget: theta*N photons per mode spent on input
/// squeezing, the rest on classical modulation of scale K.
struct EnergyAccount {
    double theta = 0.0;
    double K = 0.0;
};

/// Allowed interval for the entanglement parameter at a given (n, N).
/// For n = 1 squeezing costs no energy, so the interval is unbounded.
struct RBounds {
    double r_min;
    double r_max;
    bool bounded;
};

/// Squeezing photon fraction theta_n(r) =
/// [sum_k cosh(2 r cos(pi k/(n+1))) - n] / (2 n N). Even in r, zero at r = 0,
/// strictly increasing in |r| for n >= 2, identically zero for n = 1.
/// Values above 1 are returned as-is; callers enforce the budget.
double theta_n(double r, long n, double N);

/// Roots of theta_n(r) = 1, found by bisection to 1e-12 after doubling the
/// initial bracket [0, 1]. r_min = -r_max by symmetry. The asymptotic
/// counterpart r_bounds_asymptotic lives in asymptotics.hpp.
RBounds r_bounds(long n, double N);

/// Classical-noise scale for the energy left over after squeezing.
/// symmetric:          K_n  = 2nN(1-theta) / sum_k cosh(2 y cos(pi k/(n+1)))
/// single_quadrature:  K'_n = 2nN(1-theta) / sum_k exp(2 y cos(pi k/(n+1)))
/// Both equal 2N(1-theta) at y = 0 and share the n -> infinity limit.
double classical_K(double y, long n, double N, double theta, Scheme scheme);

struct ModelCovariances {
    CovarianceMatrix env; ///< multimode squeezed vacuum, parameter s
    CovarianceMatrix in;  ///< input seed state, parameter r
    CovarianceMatrix cl;  ///< classical-modulation covariance, trace-normalized
};

/// Builds (V_env, V_in, V_cl) for the model. V_cl is scaled so the classical
/// modulation carries exactly (1 - theta_n) N photons per mode; its shape is
/// selected by enc.scheme. Throws ConstraintError if r exceeds the budget.
ModelCovariances build_model_covariances(int n, const ChannelParams& params,
                                         const EncodingParams& enc);

/// V_out = eta V_in + (1 - eta) V_env.
CovarianceMatrix output_covariance(const CovarianceMatrix& V_in,
                                   const CovarianceMatrix& V_env, double eta);

/// V_bar_out = V_out + eta V_cl (output averaged over the classical message).
CovarianceMatrix averaged_output_covariance(const CovarianceMatrix& V_out,
                                            const CovarianceMatrix& V_cl, double eta);

/// Oracle route for the channel action: assembles the 4n x 4n joint
/// covariance diag(V_in, V_env), conjugates by the beam-splitter symplectic
/// matrix and marginalizes. Returns (output marginal, environment-output
/// marginal); the first must equal output_covariance to 1e-12.
std::pair<CovarianceMatrix, CovarianceMatrix>
beamsplitter_joint_transform(const CovarianceMatrix& V_in,
                             const CovarianceMatrix& V_env, double eta);

} // namespace bmcap
