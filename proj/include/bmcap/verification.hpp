// verification.hpp — Independent brute-force oracles cross-checking every
// closed-form result. Runnable through the CLI (`bmcap verify`) and reused
// by the test suites.

#pragma once

#include <string>
#include <vector>

namespace bmcap {

struct CheckReport {
    std::string name;
    std::string grid;          ///< human-readable parameter grid
    double max_abs_dev = 0.0;
    double max_rel_dev = 0.0;  ///< scaled: |a-b| / max(1, |b|)
    double tolerance = 0.0;
    bool gate_relative = false; ///< pass gate uses max_rel_dev instead of max_abs_dev
    bool pass = false;
    double wall_seconds = 0.0;
};

/// Closed-form symplectic eigenvalues of (V_out, V_bar_out) versus the
/// generic dense solver, n doubling up to n_max, seeded random parameters
/// constrained to theta <= 0.9 plus deterministic edge cases.
/// Gate: relative, 1e-9.
CheckReport check_symplectic_closed_form(int n_max = 64);

/// Full 4n x 4n beam-splitter conjugation + marginalization versus the
/// covariance-level channel map, entrywise. Gate: absolute, 1e-12.
CheckReport check_beamsplitter_marginal(int n_max = 32);

/// Heterodyne determinant identity and homodyne block-determinant identity
/// versus the explicit eigenvalue sums. Gate: relative, 1e-10.
CheckReport check_determinant_identities(int n_max = 16);

/// Riemann-sum convergence: (a) trace averages to I0 at n = 10^4;
/// (b) per-mode finite-n rates at fixed (r, y) decrease monotonically toward
/// the asymptotic integrals over n = 2^4..2^12 and land within 1e-3.
CheckReport check_riemann_limits();

/// theta_n and K_n versus their closed-form limits at n = 10^4 over
/// (r, y) in {0.5, 1, 2}^2, plus the exactly-known r = y = 0 point.
/// Gate: relative, 1e-3.
CheckReport check_theta_K_limits();

std::vector<CheckReport> run_all_checks(int n_max = 64);

bool all_pass(const std::vector<CheckReport>& reports);

/// Aligned text table, one line per check.
std::string render_report_text(const std::vector<CheckReport>& reports);

std::string render_report_json(const std::vector<CheckReport>& reports);

} // namespace bmcap
