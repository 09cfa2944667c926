#include "bmcap/channel.hpp"

#include "bmcap/errors.hpp"
#include "bmcap/spectral_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bmcap {

void ChannelParams::validate() const {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("ChannelParams: eta must lie in [0, 1], got " +
                                    std::to_string(eta));
    }
    if (!(N > 0.0)) {
        throw std::invalid_argument("ChannelParams: N must be positive, got " +
                                    std::to_string(N));
    }
    if (!std::isfinite(s)) {
        throw std::invalid_argument("ChannelParams: s must be finite");
    }
}

double theta_n(double r, long n, double N) {
    if (n < 1) throw std::invalid_argument("theta_n: n must be >= 1");
    if (!(N > 0.0)) throw std::invalid_argument("theta_n: N must be positive");
    const std::vector<double> c = mode_cosines(static_cast<int>(n));
    // cosh(2rc) - 1 = 2 sinh^2(rc), summed without cancellation
    double acc = 0.0;
    for (double ck : c) {
        const double sh = std::sinh(std::abs(r * ck));
        acc += 2.0 * sh * sh;
    }
    return acc / (2.0 * static_cast<double>(n) * N);
}

namespace {

// Unique positive root of f(r) = 1 for f even and increasing in |r|:
// double [0, 1] until bracketed, then bisect to 1e-12.
template <typename F>
double positive_root_of_unit_level(F&& f, const char* where) {
    double hi = 1.0;
    int doublings = 0;
    while (f(hi) < 1.0) {
        hi *= 2.0;
        if (++doublings > 200) {
            throw SolverError(std::string(where) + ": failed to bracket the root");
        }
    }
    double lo = hi * 0.5;
    if (f(lo) >= 1.0) lo = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12) return 0.5 * (lo + hi);
    }
    throw SolverError(std::string(where) + ": bisection did not converge in 200 iterations");
}

} // namespace

RBounds r_bounds(long n, double N) {
    if (n < 1) throw std::invalid_argument("r_bounds: n must be >= 1");
    if (!(N > 0.0)) throw std::invalid_argument("r_bounds: N must be positive");
    if (n == 1) {
        const double inf = std::numeric_limits<double>::infinity();
        return RBounds{-inf, inf, false};
    }
    const double r_max =
        positive_root_of_unit_level([&](double r) { return theta_n(r, n, N); }, "r_bounds");
    return RBounds{-r_max, r_max, true};
}

double classical_K(double y, long n, double N, double theta, Scheme scheme) {
    if (n < 1) throw std::invalid_argument("classical_K: n must be >= 1");
    if (theta < 0.0 || theta > 1.0) {
        throw ConstraintError("classical_K: theta = " + std::to_string(theta) +
                              " outside [0, 1] (energy budget exceeded)");
    }
    const std::vector<double> c = mode_cosines(static_cast<int>(n));
    double denom = 0.0;
    if (scheme == Scheme::symmetric) {
        for (double ck : c) denom += std::cosh(std::abs(2.0 * y * ck));
    } else {
        for (double ck : c) denom += std::exp(2.0 * y * ck);
    }
    return 2.0 * static_cast<double>(n) * N * (1.0 - theta) / denom;
}

ModelCovariances build_model_covariances(int n, const ChannelParams& params,
                                         const EncodingParams& enc) {
    params.validate();
    const double theta = theta_n(enc.r, n, params.N);
    if (theta > 1.0) {
        throw ConstraintError("build_model_covariances: r = " + std::to_string(enc.r) +
                              " exceeds the energy budget (theta = " + std::to_string(theta) + ")");
    }
    const double K = classical_K(enc.y, n, params.N, theta, enc.scheme);

    CovarianceMatrix env = exp_omega_covariance(n, params.s);
    CovarianceMatrix in = exp_omega_covariance(n, enc.r);

    Eigen::MatrixXd cl = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    if (enc.scheme == Scheme::symmetric) {
        // V_cl = K_n * (1/2) diag(e^{yOmega}, e^{-yOmega})
        cl.topLeftCorner(n, n) = (0.5 * K) * exp_omega(n, enc.y);
        cl.bottomRightCorner(n, n) = (0.5 * K) * exp_omega(n, -enc.y);
    } else {
        // V_cl = K'_n * diag(e^{yOmega}, 0): only q is modulated
        cl.topLeftCorner(n, n) = K * exp_omega(n, enc.y);
    }
    return ModelCovariances{std::move(env), std::move(in), CovarianceMatrix(std::move(cl))};
}

namespace {

void require_same_modes(const CovarianceMatrix& a, const CovarianceMatrix& b,
                        const char* where) {
    if (a.modes() != b.modes()) {
        throw std::invalid_argument(std::string(where) + ": mode-count mismatch (" +
                                    std::to_string(a.modes()) + " vs " +
                                    std::to_string(b.modes()) + ")");
    }
}

} // namespace

CovarianceMatrix output_covariance(const CovarianceMatrix& V_in,
                                   const CovarianceMatrix& V_env, double eta) {
    require_same_modes(V_in, V_env, "output_covariance");
    return CovarianceMatrix(eta * V_in.matrix() + (1.0 - eta) * V_env.matrix());
}

CovarianceMatrix averaged_output_covariance(const CovarianceMatrix& V_out,
                                            const CovarianceMatrix& V_cl, double eta) {
    require_same_modes(V_out, V_cl, "averaged_output_covariance");
    return CovarianceMatrix(V_out.matrix() + eta * V_cl.matrix());
}

std::pair<CovarianceMatrix, CovarianceMatrix>
beamsplitter_joint_transform(const CovarianceMatrix& V_in,
                             const CovarianceMatrix& V_env, double eta) {
    require_same_modes(V_in, V_env, "beamsplitter_joint_transform");
    const int n = V_in.modes();
    const Eigen::Index d = 2 * n;

    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    joint.topLeftCorner(d, d) = V_in.matrix();
    joint.bottomRightCorner(d, d) = V_env.matrix();

    const double t = std::sqrt(eta);
    const double u = std::sqrt(1.0 - eta);
    Eigen::MatrixXd bs = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    bs.topLeftCorner(d, d) = t * Eigen::MatrixXd::Identity(d, d);
    bs.topRightCorner(d, d) = u * Eigen::MatrixXd::Identity(d, d);
    bs.bottomLeftCorner(d, d) = -u * Eigen::MatrixXd::Identity(d, d);
    bs.bottomRightCorner(d, d) = t * Eigen::MatrixXd::Identity(d, d);

    const Eigen::MatrixXd transformed = bs * joint * bs.transpose();
    return {CovarianceMatrix(transformed.topLeftCorner(d, d)),
            CovarianceMatrix(transformed.bottomRightCorner(d, d))};
}

} // namespace bmcap
