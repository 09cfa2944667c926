#include "bmcap/covariance.hpp"

#include <stdexcept>
#include <string>

namespace bmcap {

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd data) {
    const Eigen::Index rows = data.rows();
    if (rows == 0 || rows != data.cols()) {
        throw std::invalid_argument("CovarianceMatrix: matrix must be square and non-empty");
    }
    if (rows % 2 != 0) {
        throw std::invalid_argument("CovarianceMatrix: dimension must be even (2n x 2n)");
    }
    const double scale = std::max(1.0, data.cwiseAbs().maxCoeff());
    const double asym = (data - data.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw std::invalid_argument("CovarianceMatrix: matrix not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");
    }
    n_ = static_cast<int>(rows / 2);
    m_ = 0.5 * (data + data.transpose());
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("CovarianceMatrix::vacuum: mode count must be >= 1");
    }
    return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

} // namespace bmcap
