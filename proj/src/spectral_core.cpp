#include "bmcap/spectral_core.hpp"

#include "bmcap/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bmcap {

namespace {

void require_positive(int n, const char* where) {
    if (n < 1) {
        throw std::invalid_argument(std::string(where) + ": mode count must be >= 1");
    }
}

} // namespace

Eigen::MatrixXd build_omega(int n) {
    require_positive(n, "build_omega");
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        omega(i, i + 1) = 1.0;
        omega(i + 1, i) = 1.0;
    }
    return omega;
}

std::vector<double> mode_angles(int n) {
    require_positive(n, "mode_angles");
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        x[static_cast<std::size_t>(k - 1)] = std::numbers::pi * k / (n + 1);
    }
    return x;
}

std::vector<double> mode_cosines(int n) {
    require_positive(n, "mode_cosines");
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int k = 1; 2 * k <= n + 1; ++k) {
        const double v = (2 * k == n + 1)
                             ? 0.0
                             : std::cos(std::numbers::pi * k / (n + 1));
        c[static_cast<std::size_t>(k - 1)] = v;
        c[static_cast<std::size_t>(n - k)] = -v; // enforce c_k = -c_{n+1-k} exactly
    }
    return c;
}

std::vector<double> omega_eigenvalues(int n) {
    std::vector<double> lam = mode_cosines(n);
    for (double& v : lam) v *= 2.0;
    return lam;
}

Eigen::MatrixXd omega_eigenbasis(int n) {
    require_positive(n, "omega_eigenbasis");
    const double norm = std::sqrt(2.0 / (n + 1));
    Eigen::MatrixXd basis(n, n);
    for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
            basis(k - 1, j - 1) = norm * std::sin(std::numbers::pi * j * k / (n + 1));
        }
    }
    return basis;
}

Eigen::MatrixXd exp_omega(int n, double gamma) {
    const std::vector<double> lam = omega_eigenvalues(n);
    const Eigen::MatrixXd basis = omega_eigenbasis(n);
    Eigen::VectorXd d(n);
    for (int j = 0; j < n; ++j) {
        d(j) = std::exp(gamma * lam[static_cast<std::size_t>(j)]);
    }
    Eigen::MatrixXd result = basis * d.asDiagonal() * basis.transpose();
    return 0.5 * (result + result.transpose().eval());
}

CovarianceMatrix exp_omega_covariance(int n, double gamma) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = 0.5 * exp_omega(n, gamma);
    m.bottomRightCorner(n, n) = 0.5 * exp_omega(n, -gamma);
    return CovarianceMatrix(std::move(m));
}

double entropy_g(double x) {
    if (x < -1e-12) {
        throw std::domain_error("entropy_g: negative argument " + std::to_string(x) +
                                " (unphysical symplectic eigenvalue)");
    }
    if (x <= 0.0) return 0.0;
    return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& V) {
    const int n = V.modes();
    const Eigen::MatrixXd& m = V.matrix();

    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw SpectralError("symplectic_eigenvalues: covariance matrix not positive definite");
    }

    // Sigma^{-1} V with Sigma = [[0, I], [-I, 0]]:
    //   Sigma^{-1} = [[0, -I], [I, 0]]  =>  M = [[-V_pq, -V_pp], [V_qq, V_qp]]
    Eigen::MatrixXd sv(2 * n, 2 * n);
    sv.topRows(n) = -m.bottomRows(n);
    sv.bottomRows(n) = m.topRows(n);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(sv, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw SpectralError("symplectic_eigenvalues: eigenvalue iteration failed");
    }

    std::vector<double> magnitudes(static_cast<std::size_t>(2 * n));
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        magnitudes[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i).imag());
    }
    std::sort(magnitudes.begin(), magnitudes.end());

    // Eigenvalues come as +-i nu_k: after sorting, each pair of adjacent
    // magnitudes must agree.
    SymplecticSpectrum spectrum;
    spectrum.values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double a = magnitudes[static_cast<std::size_t>(2 * i)];
        const double b = magnitudes[static_cast<std::size_t>(2 * i + 1)];
        if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b))) {
            throw SpectralError("symplectic_eigenvalues: cannot pair spectrum (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
        }
        spectrum.values.push_back(0.5 * (a + b));
    }
    return spectrum;
}

double von_neumann_entropy(const CovarianceMatrix& V) {
    const SymplecticSpectrum spectrum = symplectic_eigenvalues(V);
    double total = 0.0;
    for (double nu : spectrum.values) {
        double x = nu - 0.5;
        // Round-off on pure states puts nu slightly below 1/2; anything within
        // the physicality tolerance counts as exactly pure.
        if (x < 0.0 && x >= -1e-10) x = 0.0;
        total += entropy_g(x);
    }
    return total;
}

} // namespace bmcap
