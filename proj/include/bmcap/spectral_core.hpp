// spectral_core.hpp — Nearest-neighbour coupling matrix, its closed-form
// eigendecomposition, entropy functions and a generic symplectic-eigenvalue
// solver (the brute-force oracle used to cross-check closed forms).

#pragma once

#include "bmcap/covariance.hpp"

#include <Eigen/Dense>

#include <vector>

namespace bmcap {

/// The n x n tridiagonal coupling matrix: zero diagonal, ones on the first
/// off-diagonals. Couples each mode to its contiguous neighbours.
Eigen::MatrixXd build_omega(int n);

/// Discrete mode angles x_k = pi*k/(n+1), k = 1..n, strictly increasing in
/// (0, pi).
std::vector<double> mode_angles(int n);

/// cos(pi*k/(n+1)) for k = 1..n, evaluated so that the exact spectral
/// symmetry c_k = -c_{n+1-k} holds bitwise (the midpoint, when present, is
/// exactly zero).
std::vector<double> mode_cosines(int n);

/// Closed-form eigenvalues of the coupling matrix: lambda_j = 2cos(pi*j/(n+1)),
/// j = 1..n, in that order. All lie in (-2, 2), symmetric about 0.
std::vector<double> omega_eigenvalues(int n);

/// Orthogonal (and symmetric) sine eigenbasis: S(j,k) = sqrt(2/(n+1)) *
/// sin(j*k*pi/(n+1)), 1-based indices. Columns are the eigenvectors of the
/// coupling matrix.
Eigen::MatrixXd omega_eigenbasis(int n);

/// exp(gamma * Omega), assembled spectrally from the closed-form eigenbasis.
Eigen::MatrixXd exp_omega(int n, double gamma);

/// The model covariance (1/2) diag(exp(gamma*Omega), exp(-gamma*Omega)):
/// a pure n-mode squeezed vacuum for any real gamma. qq-block eigenvalues
/// are (1/2) e^{+2 gamma cos(pi k/(n+1))}, pp-block the reciprocals.
CovarianceMatrix exp_omega_covariance(int n, double gamma);

/// g(x) = (x+1) log2(x+1) - x log2 x, in bits; g(0) = 0 by the usual limit
/// convention. Tiny negative round-off (x >= -1e-12) is clamped to zero;
/// anything more negative signals an unphysical symplectic eigenvalue and
/// throws std::domain_error.
double entropy_g(double x);

/// Symplectic eigenvalues of a positive-definite covariance matrix via the
/// generic route: moduli of the eigenvalue pairs of Sigma^{-1} V, paired by
/// magnitude (tolerance 1e-9 relative). No model structure assumed; this is
/// the oracle path, not the fast path.
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& V);

/// Von Neumann entropy sum_k g(nu_k - 1/2) in bits, computed through the
/// generic symplectic solver. Zero iff the state is pure (all nu_k = 1/2).
double von_neumann_entropy(const CovarianceMatrix& V);

} // namespace bmcap
