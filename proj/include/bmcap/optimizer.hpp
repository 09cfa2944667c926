// optimizer.hpp — Constrained 2-D maximization of the information rates over
// (r, y), and the parameter sweeps behind every figure-style table.

#pragma once

#include "bmcap/asymptotics.hpp"
#include "bmcap/rates_finite.hpp"
#include "bmcap/table.hpp"

#include <string>
#include <vector>

namespace bmcap {

/// Number of channel uses: a finite n >= 1 or the asymptotic regime.
class ModeCount {
public:
    static ModeCount finite(long n);
    static ModeCount asymptotic() { return ModeCount(0); }

    bool is_asymptotic() const noexcept { return n_ == 0; }
    long n() const;
    std::string to_string() const;

    friend bool operator==(ModeCount a, ModeCount b) { return a.n_ == b.n_; }

private:
    explicit ModeCount(long n) : n_(n) {}
    long n_;
};

/// Objective shared by all searches: bits per mode at (r, y), finite totals
/// divided by n, asymptotic values straight from the rate integral. The
/// scheme is chosen canonically for the kind.
double rate_per_mode(RateKind kind, ModeCount n, const ChannelParams& params, double r,
                     double y, const QuadratureSpec& quad = {});

struct OptimizationResult {
    RateKind kind;
    ModeCount n = ModeCount::asymptotic();
    double r_star = 0.0;
    double y_star = 0.0;
    double value = 0.0; ///< bits per mode
    long evaluations = 0;
    bool converged = false;
};

struct YSearchResult {
    double y_star = 0.0;
    double value = 0.0;
    long evaluations = 0;
};

/// max over y at fixed r. Golden-section search on an adaptively expanded
/// bracket: starts with y in [-1, 1], triples while the best coarse sample
/// sits on the boundary, resolves the argmax to 1e-7. A flat objective snaps
/// to y = 0. Throws SolverError if expansion passes |y| = 50.
YSearchResult maximize_over_y(RateKind kind, ModeCount n, const ChannelParams& params,
                              double r, const QuadratureSpec& quad = {});

/// Full 2-D maximization: 65-point grid over the allowed r interval
/// (endpoints nudged inward by 1e-9) with a nested y search, then
/// coordinate-descent refinement until both parameters move < 1e-6.
/// Ties on plateaus resolve toward smaller |r|, then smaller |y|.
OptimizationResult maximize_over_r_y(RateKind kind, ModeCount n, const ChannelParams& params,
                                     const QuadratureSpec& quad = {});

/// The coordinate-descent stage alone, started from (r0, y0). Exposed so
/// robustness checks can restart the refinement from perturbed points.
OptimizationResult refine_from(RateKind kind, ModeCount n, const ChannelParams& params,
                               double r0, double y0, const QuadratureSpec& quad = {});

enum class SweepAxis { n, r, s, eta };

/// One declarative description per figure-style table.
///   axis n:   rows kind,n,s,N,eta,r_opt,y_opt,value_bits_per_mode
///   axis r:   rows kind,s,r,value (asymptotic, max over y at each r)
///   axis s:   rows kind,s,N,eta,r_opt,y_opt,value_bits_per_mode (asymptotic)
///   axis eta: rows eta,s,C (asymptotic Holevo-style, single kind)
struct SweepSpec {
    std::vector<RateKind> kinds;
    double N = 8.0;
    double eta = 0.7;
    std::vector<double> s_values;
    SweepAxis axis = SweepAxis::n;
    std::vector<long> n_values;      ///< axis n
    int r_points = 129;              ///< axis r: grid resolution over [r_min, r_max]
    std::vector<double> eta_values;  ///< axis eta
    QuadratureSpec quad;
    int threads = 1;
};

/// Evaluates every grid point of the spec (concurrently when threads > 1)
/// and merges rows in grid order, so the output is schedule-independent.
/// A failing grid point aborts with the offending point in the message.
Table sweep(const SweepSpec& spec);

} // namespace bmcap
