#include "bmcap/verification.hpp"

#include "bmcap/asymptotics.hpp"
#include "bmcap/channel.hpp"
#include "bmcap/rates_finite.hpp"
#include "bmcap/spectral_core.hpp"
#include "bmcap/table.hpp"

#include <Eigen/Cholesky>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace bmcap {

namespace {

constexpr std::uint64_t kHarnessSeed = 987654321u;

// Uniform draws built from raw 53-bit mantissas, so every platform with the
// same mt19937_64 stream sees the same parameters.
class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    ChannelParams channel() {
        return ChannelParams{uniform(0.05, 0.95), uniform(1.0, 10.0), uniform(-2.0, 2.0)};
    }

    // Draw r in [-2, 2], shrinking until theta_n(r) <= 0.9: the K -> 0
    // boundary is exercised by dedicated deterministic cases instead.
    double entanglement(long n, double N) {
        double r = uniform(-2.0, 2.0);
        while (theta_n(r, n, N) > 0.9) r *= 0.7;
        return r;
    }

private:
    std::mt19937_64 rng_;
};

double scaled_rel(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

struct DeviationTracker {
    double max_abs = 0.0;
    double max_rel = 0.0;
    void record(double a, double b) {
        max_abs = std::max(max_abs, std::abs(a - b));
        max_rel = std::max(max_rel, scaled_rel(a, b));
    }
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

private:
    using Clock = std::chrono::steady_clock;
    Clock::time_point start_ = Clock::now();
};

std::vector<int> doubling_sizes(int lo, int n_max) {
    std::vector<int> sizes;
    for (int n = lo; n <= n_max; n *= 2) sizes.push_back(n);
    return sizes;
}

} // namespace

CheckReport check_symplectic_closed_form(int n_max) {
    Stopwatch watch;
    ParamSampler sampler(kHarnessSeed);
    DeviationTracker dev;

    for (int n : doubling_sizes(2, n_max)) {
        std::vector<EncodingParams> cases;
        ChannelParams draws[3];
        for (auto& params : draws) {
            params = sampler.channel();
            const double r = sampler.entanglement(n, params.N);
            const double y = sampler.uniform(-2.0, 2.0);
            cases.push_back(EncodingParams{r, y, Scheme::symmetric});
        }
        // deterministic edges: pure output (s = r) and eta = 0
        draws[0].s = cases[0].r;
        draws[1].eta = 0.0;

        for (int i = 0; i < 3; ++i) {
            const ChannelParams& params = draws[i];
            const EncodingParams& enc = cases[static_cast<std::size_t>(i)];
            const ModelCovariances model = build_model_covariances(n, params, enc);
            const CovarianceMatrix v_out = output_covariance(model.in, model.env, params.eta);
            const CovarianceMatrix v_avg =
                averaged_output_covariance(v_out, model.cl, params.eta);

            const SymplecticSpectrum generic_out = symplectic_eigenvalues(v_out);
            const SymplecticSpectrum generic_avg = symplectic_eigenvalues(v_avg);

            std::vector<double> closed_out, closed_avg;
            for (int k = 1; k <= n; ++k) {
                const NuPair nu = closed_form_nu(k, n, params, enc);
                closed_out.push_back(nu.nu);
                closed_avg.push_back(nu.nu_bar);
            }
            std::sort(closed_out.begin(), closed_out.end());
            std::sort(closed_avg.begin(), closed_avg.end());
            for (int k = 0; k < n; ++k) {
                dev.record(generic_out.values[static_cast<std::size_t>(k)],
                           closed_out[static_cast<std::size_t>(k)]);
                dev.record(generic_avg.values[static_cast<std::size_t>(k)],
                           closed_avg[static_cast<std::size_t>(k)]);
            }
        }
    }

    CheckReport report{"symplectic-closed-form",
                       "n=2.." + std::to_string(n_max) + " doubling, 3 seeded draws/n "
                       "(incl. s=r and eta=0 edges)",
                       dev.max_abs,
                       dev.max_rel,
                       1e-9,
                       true,
                       dev.max_rel <= 1e-9,
                       0.0};
    report.wall_seconds = watch.seconds();
    return report;
}

CheckReport check_beamsplitter_marginal(int n_max) {
    Stopwatch watch;
    ParamSampler sampler(kHarnessSeed + 1);
    DeviationTracker dev;

    for (int n : doubling_sizes(1, n_max)) {
        for (double eta : {0.0, 0.3, 0.7, 1.0}) {
            const double s = sampler.uniform(-2.0, 2.0);
            const double r = sampler.uniform(-2.0, 2.0);
            const CovarianceMatrix v_env = exp_omega_covariance(n, s);
            const CovarianceMatrix v_in = exp_omega_covariance(n, r);

            const auto [out, env_out] = beamsplitter_joint_transform(v_in, v_env, eta);
            const CovarianceMatrix expected = output_covariance(v_in, v_env, eta);
            const Eigen::MatrixXd expected_env =
                (1.0 - eta) * v_in.matrix() + eta * v_env.matrix();

            dev.max_abs = std::max(
                dev.max_abs, (out.matrix() - expected.matrix()).cwiseAbs().maxCoeff());
            dev.max_abs = std::max(
                dev.max_abs, (env_out.matrix() - expected_env).cwiseAbs().maxCoeff());
        }
    }
    dev.max_rel = dev.max_abs; // entries are O(1); report the same scale

    CheckReport report{"beamsplitter-marginal",
                       "n=1.." + std::to_string(n_max) +
                           " doubling x eta in {0,0.3,0.7,1}, seeded (s,r)",
                       dev.max_abs,
                       dev.max_rel,
                       1e-12,
                       false,
                       dev.max_abs <= 1e-12,
                       0.0};
    report.wall_seconds = watch.seconds();
    return report;
}

namespace {

double cholesky_log2_det(const Eigen::MatrixXd& m) {
    const Eigen::LLT<Eigen::MatrixXd> llt(m);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        acc += std::log2(llt.matrixL()(i, i));
    }
    return 2.0 * acc;
}

} // namespace

CheckReport check_determinant_identities(int n_max) {
    Stopwatch watch;
    ParamSampler sampler(kHarnessSeed + 2);
    DeviationTracker dev;

    auto het_pair = [&](int n, const ChannelParams& params, const EncodingParams& enc) {
        const ModelCovariances model = build_model_covariances(n, params, enc);
        const CovarianceMatrix v_out = output_covariance(model.in, model.env, params.eta);
        const CovarianceMatrix v_avg = averaged_output_covariance(v_out, model.cl, params.eta);
        const Eigen::MatrixXd half = 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
        const double det_form = 0.5 * (cholesky_log2_det(v_avg.matrix() + half) -
                                       cholesky_log2_det(v_out.matrix() + half));
        dev.record(det_form, heterodyne_info(n, params, enc));
    };
    auto hom_pair = [&](int n, const ChannelParams& params, const EncodingParams& enc) {
        const ModelCovariances model = build_model_covariances(n, params, enc);
        const CovarianceMatrix v_out = output_covariance(model.in, model.env, params.eta);
        const CovarianceMatrix v_avg = averaged_output_covariance(v_out, model.cl, params.eta);
        const double det_form =
            0.5 * (cholesky_log2_det(v_avg.qq()) - cholesky_log2_det(v_out.qq()));
        dev.record(det_form, homodyne_info(n, params, enc));
    };

    // anchors: single use at the origin and a dead channel
    het_pair(1, ChannelParams{0.7, 8.0, 0.0}, EncodingParams{0.0, 0.0, Scheme::symmetric});
    hom_pair(1, ChannelParams{0.7, 8.0, 0.0},
             EncodingParams{0.0, 0.0, Scheme::single_quadrature});
    het_pair(4, ChannelParams{0.0, 8.0, 1.0}, EncodingParams{0.5, 0.3, Scheme::symmetric});
    hom_pair(4, ChannelParams{0.0, 8.0, 1.0},
             EncodingParams{0.5, 0.3, Scheme::single_quadrature});

    for (int n : doubling_sizes(2, n_max)) {
        for (int draw = 0; draw < 3; ++draw) {
            const ChannelParams params = sampler.channel();
            const double r = sampler.entanglement(n, params.N);
            const double y = sampler.uniform(-2.0, 2.0);
            het_pair(n, params, EncodingParams{r, y, Scheme::symmetric});
            hom_pair(n, params, EncodingParams{r, y, Scheme::single_quadrature});
        }
    }

    CheckReport report{"determinant-identities",
                       "n=2.." + std::to_string(n_max) +
                           " doubling, 3 seeded draws/n + origin and eta=0 anchors",
                       dev.max_abs,
                       dev.max_rel,
                       1e-10,
                       true,
                       dev.max_rel <= 1e-10,
                       0.0};
    report.wall_seconds = watch.seconds();
    return report;
}

CheckReport check_riemann_limits() {
    Stopwatch watch;
    DeviationTracker dev;
    bool monotone = true;

    // (a) trace averages vs I0 at n = 10^4; gamma = 0 is exact by counting
    const long n_trace = 10000;
    for (double gamma : {0.5, 1.0, 2.0}) {
        dev.record(trace_average(gamma, n_trace), bessel_i0(2.0 * gamma));
    }
    const double zero_case = trace_average(0.0, n_trace) * (n_trace + 1.0);
    if (zero_case != static_cast<double>(n_trace)) monotone = false;

    // (b) per-mode rates at fixed encodings vs the asymptotic integrals
    const ChannelParams params{0.7, 8.0, 0.8};
    struct LadderCase {
        RateKind kind;
        double r, y;
    };
    const LadderCase cases[] = {
        {RateKind::holevo, 0.4, 0.25},
        {RateKind::holevo, 0.0, 0.0},
        {RateKind::heterodyne, 0.4, 0.25},
        {RateKind::homodyne, 0.4, 0.25},
    };
    double ladder_final = 0.0;
    for (const LadderCase& c : cases) {
        const EncodingParams enc{c.r, c.y, canonical_scheme(c.kind)};
        const double limit = asymptotic_rate(c.kind, params, enc);
        double prev = std::numeric_limits<double>::infinity();
        for (int p = 4; p <= 12; ++p) {
            const long n = 1L << p;
            const double err =
                std::abs(finite_rate(c.kind, n, params, enc) / static_cast<double>(n) - limit);
            if (err >= prev) monotone = false;
            prev = err;
        }
        ladder_final = std::max(ladder_final, prev);
        dev.max_abs = std::max(dev.max_abs, prev);
        dev.max_rel = std::max(dev.max_rel, prev / std::max(1.0, std::abs(limit)));
    }

    CheckReport report{"riemann-limits",
                       "trace avg at n=1e4, gamma in {0,0.5,1,2}; rate ladders n=2^4..2^12",
                       dev.max_abs,
                       dev.max_rel,
                       1e-3,
                       true,
                       monotone && dev.max_rel <= 1e-3 && ladder_final <= 1e-3,
                       0.0};
    if (!monotone) report.grid += " [monotonicity violated]";
    report.wall_seconds = watch.seconds();
    return report;
}

CheckReport check_theta_K_limits() {
    Stopwatch watch;
    DeviationTracker dev;
    const long n = 10000;
    const double N = 8.0;

    for (double r : {0.5, 1.0, 2.0}) {
        for (double y : {0.5, 1.0, 2.0}) {
            const double th_finite = theta_n(r, n, N);
            const EnergyAccount limit = limits_theta_K(r, y, N);
            dev.record(th_finite, limit.theta);
            dev.record(classical_K(y, n, N, th_finite, Scheme::symmetric), limit.K);
            dev.record(classical_K(y, n, N, th_finite, Scheme::single_quadrature), limit.K);
        }
    }
    // r = y = 0 is exact at every n: theta_n = 0 and K_n = 2N
    bool exact_origin = true;
    for (long m : {2L, 7L, 64L, 10000L}) {
        if (theta_n(0.0, m, N) != 0.0) exact_origin = false;
        if (classical_K(0.0, m, N, 0.0, Scheme::symmetric) != 2.0 * N) exact_origin = false;
    }

    CheckReport report{"theta-K-limits",
                       "(r,y) in {0.5,1,2}^2 at n=1e4, both K normalizations; exact origin",
                       dev.max_abs,
                       dev.max_rel,
                       1e-3,
                       true,
                       exact_origin && dev.max_rel <= 1e-3,
                       0.0};
    if (!exact_origin) report.grid += " [origin not exact]";
    report.wall_seconds = watch.seconds();
    return report;
}

std::vector<CheckReport> run_all_checks(int n_max) {
    return {check_symplectic_closed_form(n_max),
            check_beamsplitter_marginal(std::min(n_max, 32)),
            check_determinant_identities(std::min(n_max, 16)),
            check_riemann_limits(),
            check_theta_K_limits()};
}

bool all_pass(const std::vector<CheckReport>& reports) {
    for (const CheckReport& r : reports) {
        if (!r.pass) return false;
    }
    return true;
}

std::string render_report_text(const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    out << std::left << std::setw(26) << "check" << std::setw(13) << "max_abs"
        << std::setw(13) << "max_rel" << std::setw(10) << "tol" << std::setw(6) << "gate"
        << std::setw(9) << "time" << "result\n";
    for (const CheckReport& r : reports) {
        std::ostringstream time;
        time << std::fixed << std::setprecision(2) << r.wall_seconds << "s";
        out << std::left << std::setw(26) << r.name << std::setw(13)
            << format_numeric(r.max_abs) << std::setw(13) << format_numeric(r.max_rel)
            << std::setw(10) << format_numeric(r.tolerance) << std::setw(6)
            << (r.gate_relative ? "rel" : "abs") << std::setw(9) << time.str()
            << (r.pass ? "PASS" : "FAIL") << "\n";
        out << "    grid: " << r.grid << "\n";
    }
    return out.str();
}

std::string render_report_json(const std::vector<CheckReport>& reports) {
    Table t;
    t.columns = {"check", "grid", "max_abs_dev", "max_rel_dev",
                 "tolerance", "gate", "wall_seconds", "pass"};
    for (const CheckReport& r : reports) {
        t.rows.push_back({r.name, r.grid, r.max_abs_dev, r.max_rel_dev, r.tolerance,
                          std::string(r.gate_relative ? "relative" : "absolute"),
                          r.wall_seconds, std::string(r.pass ? "true" : "false")});
    }
    return to_json(t);
}

} // namespace bmcap
