// covariance.hpp — Quadrature covariance matrices and symplectic spectra

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace bmcap {

/// 2n x 2n real symmetric covariance matrix of n bosonic modes in
/// (q_1..q_n, p_1..p_n) quadrature ordering, hbar = 1 (vacuum variance 1/2
/// per quadrature). Note the block ordering: many libraries interleave
/// (q_1, p_1, q_2, p_2, ...); this one never does.
///
/// Construction validates squareness, even dimension and symmetry
/// (1e-12 relative), then stores the symmetrized matrix. Instances are
/// immutable.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(Eigen::MatrixXd data);

    /// (1/2) * identity, the n-mode vacuum state.
    static CovarianceMatrix vacuum(int n_modes);

    int modes() const noexcept { return n_; }
    const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    // n x n quadrature blocks
    Eigen::MatrixXd qq() const { return m_.topLeftCorner(n_, n_); }
    Eigen::MatrixXd pp() const { return m_.bottomRightCorner(n_, n_); }
    Eigen::MatrixXd qp() const { return m_.topRightCorner(n_, n_); }

private:
    int n_;
    Eigen::MatrixXd m_;
};

/// Symplectic eigenvalues nu_k of a covariance matrix, sorted ascending,
/// all strictly positive. Physical states have every nu_k >= 1/2 (up to
/// round-off); pure states have all nu_k = 1/2.
struct SymplecticSpectrum {
    std::vector<double> values;
};

} // namespace bmcap
