#include "bmcap/optimizer.hpp"

#include "bmcap/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bmcap {

ModeCount ModeCount::finite(long n) {
    if (n < 1) throw std::invalid_argument("ModeCount: n must be >= 1");
    return ModeCount(n);
}

long ModeCount::n() const {
    if (is_asymptotic()) throw std::logic_error("ModeCount: asymptotic count has no n");
    return n_;
}

std::string ModeCount::to_string() const {
    return is_asymptotic() ? "inf" : std::to_string(n_);
}

double rate_per_mode(RateKind kind, ModeCount n, const ChannelParams& params, double r,
                     double y, const QuadratureSpec& quad) {
    const EncodingParams enc{r, y, canonical_scheme(kind)};
    if (n.is_asymptotic()) return asymptotic_rate(kind, params, enc, quad);
    return finite_rate(kind, n.n(), params, enc) / static_cast<double>(n.n());
}

namespace {

constexpr double kInvPhi = 0.61803398874989485; // (sqrt(5) - 1) / 2
constexpr double kEdgeNudge = 1e-9;
constexpr double kGoldenTol = 1e-7;
constexpr double kMoveTol = 1e-6;
constexpr int kGridPoints = 65;
constexpr int kCoarseSamples = 9;

double tie_tolerance(double value) {
    return 1e-12 * std::max(1.0, std::abs(value));
}

struct Objective {
    RateKind kind;
    ModeCount n;
    const ChannelParams& params;
    const QuadratureSpec& quad;
    mutable long evaluations = 0;

    double operator()(double r, double y) const {
        ++evaluations;
        try {
            return rate_per_mode(kind, n, params, r, y, quad);
        } catch (const ConstraintError&) {
            // Round-off can push a boundary probe just past theta = 1.
            return -std::numeric_limits<double>::infinity();
        }
    }
};

struct Point1D {
    double x = 0.0;
    double f = -std::numeric_limits<double>::infinity();
};

// Golden-section maximum of a unimodal f on [lo, hi]; returns the best
// sampled point once the bracket is narrower than xtol.
template <typename F>
Point1D golden_max(F&& f, double lo, double hi, double xtol) {
    Point1D best;
    auto probe = [&](double x) {
        const double v = f(x);
        if (v > best.f) best = {x, v};
        return v;
    };
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = probe(x1);
    double f2 = probe(x2);
    while (hi - lo > xtol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = probe(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = probe(x1);
        }
    }
    return best;
}

YSearchResult maximize_over_y_impl(const Objective& f, double r) {
    double lo = -1.0;
    double hi = 1.0;
    std::array<double, kCoarseSamples> xs{};
    std::array<double, kCoarseSamples> fs{};
    int best = 0;
    while (true) {
        for (int i = 0; i < kCoarseSamples; ++i) {
            xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (kCoarseSamples - 1);
            fs[static_cast<std::size_t>(i)] = f(r, xs[static_cast<std::size_t>(i)]);
        }
        best = static_cast<int>(std::max_element(fs.begin(), fs.end()) - fs.begin());
        const double fmax = fs[static_cast<std::size_t>(best)];
        const double fmin = *std::min_element(fs.begin(), fs.end());
        if (fmax - fmin <= tie_tolerance(fmax)) {
            return {0.0, f(r, 0.0), f.evaluations}; // flat in y
        }
        if (best != 0 && best != kCoarseSamples - 1) break;
        if (3.0 * std::max(std::abs(lo), std::abs(hi)) > 50.0) {
            throw SolverError("maximize_over_y: bracket expansion beyond |y| = 50 "
                              "(objective keeps growing)");
        }
        lo *= 3.0;
        hi *= 3.0;
    }
    Point1D top = golden_max([&](double y) { return f(r, y); },
                             xs[static_cast<std::size_t>(best - 1)],
                             xs[static_cast<std::size_t>(best + 1)], kGoldenTol);
    if (fs[static_cast<std::size_t>(best)] > top.f) {
        top = {xs[static_cast<std::size_t>(best)], fs[static_cast<std::size_t>(best)]};
    }
    const double at_zero = f(r, 0.0);
    if (at_zero >= top.f - tie_tolerance(top.f)) return {0.0, at_zero, f.evaluations};
    return {top.x, top.f, f.evaluations};
}

struct DescentResult {
    double r, y, value;
    bool converged;
};

// Alternating golden-section refinement from (r0, y0); brackets shrink with
// the observed step size and never leave the allowed r interval.
DescentResult coordinate_descent(const Objective& f, const RBounds& rb, double r0, double y0,
                                 double h_r0, double h_y0) {
    double r = r0;
    double y = y0;
    double value = f(r, y);
    double h_r = h_r0;
    double h_y = h_y0;
    bool converged = false;
    for (int iter = 0; iter < 60; ++iter) {
        double r_lo = r - h_r;
        double r_hi = r + h_r;
        if (rb.bounded) {
            r_lo = std::max(r_lo, rb.r_min + kEdgeNudge);
            r_hi = std::min(r_hi, rb.r_max - kEdgeNudge);
        }
        const Point1D r_step =
            golden_max([&](double rr) { return f(rr, y); }, r_lo, r_hi, kGoldenTol);
        const Point1D y_step = golden_max([&](double yy) { return f(r_step.x, yy); },
                                          y - h_y, y + h_y, kGoldenTol);
        const double dr = std::abs(r_step.x - r);
        const double dy = std::abs(y_step.x - y);
        r = r_step.x;
        y = y_step.x;
        value = std::max({value, r_step.f, y_step.f});
        if (dr < kMoveTol && dy < kMoveTol) {
            converged = true;
            break;
        }
        h_r = std::clamp(4.0 * dr, 1e-5, h_r0);
        h_y = std::clamp(4.0 * dy, 1e-5, h_y0);
    }
    return {r, y, value, converged};
}

RBounds bounds_for(ModeCount n, double N) {
    return n.is_asymptotic() ? r_bounds_asymptotic(N) : r_bounds(n.n(), N);
}

// Plateau tie-breaking: prefer (0, 0), then r = 0, then y = 0.
void snap_to_origin(const Objective& f, OptimizationResult& res) {
    const double at_origin = f(0.0, 0.0);
    if (at_origin >= res.value - tie_tolerance(res.value)) {
        res.r_star = 0.0;
        res.y_star = 0.0;
        res.value = std::max(res.value, at_origin);
        return;
    }
    if (res.r_star != 0.0) {
        const double r_zero = f(0.0, res.y_star);
        if (r_zero >= res.value - tie_tolerance(res.value)) {
            res.r_star = 0.0;
            res.value = std::max(res.value, r_zero);
        }
    }
    if (res.y_star != 0.0) {
        const double y_zero = f(res.r_star, 0.0);
        if (y_zero >= res.value - tie_tolerance(res.value)) {
            res.y_star = 0.0;
            res.value = std::max(res.value, y_zero);
        }
    }
}

} // namespace

YSearchResult maximize_over_y(RateKind kind, ModeCount n, const ChannelParams& params,
                              double r, const QuadratureSpec& quad) {
    params.validate();
    const Objective f{kind, n, params, quad};
    return maximize_over_y_impl(f, r);
}

OptimizationResult maximize_over_r_y(RateKind kind, ModeCount n, const ChannelParams& params,
                                     const QuadratureSpec& quad) {
    params.validate();
    const Objective f{kind, n, params, quad};
    OptimizationResult res;
    res.kind = kind;
    res.n = n;

    // n = 1: squeezing costs nothing and does nothing (theta_1 = 0, all mode
    // cosines vanish), so the objective is flat in both parameters.
    if (!n.is_asymptotic() && n.n() == 1) {
        res.value = f(0.0, 0.0);
        res.evaluations = f.evaluations;
        res.converged = true;
        return res;
    }

    const RBounds rb = bounds_for(n, params.N);
    double r_edge = rb.r_max - kEdgeNudge;
    if (!(r_edge > 0.0)) r_edge = 0.5 * rb.r_max;

    double best_r = 0.0;
    YSearchResult best_y{};
    best_y.value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
        const double r = static_cast<double>(i - kGridPoints / 2) /
                         static_cast<double>(kGridPoints / 2) * r_edge;
        const YSearchResult ys = maximize_over_y_impl(f, r);
        if (ys.value > best_y.value) {
            best_y = ys;
            best_r = r;
        }
    }

    const double grid_step = r_edge / (kGridPoints / 2);
    const DescentResult fine =
        coordinate_descent(f, rb, best_r, best_y.y_star, grid_step, 0.5);
    res.r_star = fine.r;
    res.y_star = fine.y;
    res.value = std::max(fine.value, best_y.value);
    res.converged = fine.converged;
    snap_to_origin(f, res);
    res.evaluations = f.evaluations;
    return res;
}

OptimizationResult refine_from(RateKind kind, ModeCount n, const ChannelParams& params,
                               double r0, double y0, const QuadratureSpec& quad) {
    params.validate();
    const Objective f{kind, n, params, quad};
    const RBounds rb = bounds_for(n, params.N);
    const double h_r = rb.bounded ? (rb.r_max - kEdgeNudge) / (kGridPoints / 2) : 0.25;
    const DescentResult fine = coordinate_descent(f, rb, r0, y0, h_r, 0.5);
    OptimizationResult res;
    res.kind = kind;
    res.n = n;
    res.r_star = fine.r;
    res.y_star = fine.y;
    res.value = fine.value;
    res.converged = fine.converged;
    snap_to_origin(f, res);
    res.evaluations = f.evaluations;
    return res;
}

namespace {

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_workers = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);
}

void require_grid(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("sweep: ") + what);
}

template <typename T>
bool strictly_increasing(const std::vector<T>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) return false;
    }
    return true;
}

std::string grid_label(RateKind kind, const std::string& detail) {
    return "kind=" + std::string(to_string(kind)) + " " + detail;
}

// Runs one optimization per task and assembles rows in task order.
Table run_tasks(std::size_t count, int threads, const std::vector<std::string>& columns,
                const std::function<std::vector<Cell>(std::size_t)>& task,
                const std::function<std::string(std::size_t)>& label) {
    std::vector<std::vector<Cell>> rows(count);
    parallel_for(count, threads, [&](std::size_t i) {
        try {
            rows[i] = task(i);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep: failed at " + label(i) + ": " + e.what());
        }
    });
    Table t;
    t.columns = columns;
    t.rows = std::move(rows);
    return t;
}

} // namespace

Table sweep(const SweepSpec& spec) {
    require_grid(!spec.kinds.empty(), "at least one rate kind required");
    require_grid(!spec.s_values.empty() || spec.axis == SweepAxis::eta,
                 "s grid must be nonempty");

    switch (spec.axis) {
        case SweepAxis::n: {
            require_grid(!spec.n_values.empty(), "n grid must be nonempty");
            require_grid(strictly_increasing(spec.n_values), "n grid must be strictly increasing");
            const std::size_t count =
                spec.kinds.size() * spec.n_values.size() * spec.s_values.size();
            auto decode = [&](std::size_t i) {
                const std::size_t per_kind = spec.n_values.size() * spec.s_values.size();
                return std::tuple{spec.kinds[i / per_kind],
                                  spec.n_values[(i % per_kind) / spec.s_values.size()],
                                  spec.s_values[i % spec.s_values.size()]};
            };
            return run_tasks(
                count, spec.threads,
                {"kind", "n", "s", "N", "eta", "r_opt", "y_opt", "value_bits_per_mode"},
                [&](std::size_t i) {
                    const auto [kind, n, s] = decode(i);
                    const ChannelParams params{spec.eta, spec.N, s};
                    const OptimizationResult opt =
                        maximize_over_r_y(kind, ModeCount::finite(n), params, spec.quad);
                    return std::vector<Cell>{std::string(to_string(kind)), n, s, spec.N,
                                             spec.eta, opt.r_star, opt.y_star, opt.value};
                },
                [&](std::size_t i) {
                    const auto [kind, n, s] = decode(i);
                    return grid_label(kind, "n=" + std::to_string(n) +
                                                " s=" + format_numeric(s));
                });
        }
        case SweepAxis::r: {
            require_grid(spec.r_points >= 2, "r grid needs at least two points");
            const RBounds rb = r_bounds_asymptotic(spec.N);
            const double edge = rb.r_max - kEdgeNudge;
            const std::size_t count =
                spec.kinds.size() * spec.s_values.size() * static_cast<std::size_t>(spec.r_points);
            auto decode = [&](std::size_t i) {
                const std::size_t per_kind =
                    spec.s_values.size() * static_cast<std::size_t>(spec.r_points);
                const std::size_t j = i % per_kind;
                const std::size_t ri = j % static_cast<std::size_t>(spec.r_points);
                const double r = -edge + 2.0 * edge * static_cast<double>(ri) /
                                             static_cast<double>(spec.r_points - 1);
                return std::tuple{spec.kinds[i / per_kind],
                                  spec.s_values[j / static_cast<std::size_t>(spec.r_points)], r};
            };
            return run_tasks(
                count, spec.threads, {"kind", "s", "r", "value"},
                [&](std::size_t i) {
                    const auto [kind, s, r] = decode(i);
                    const ChannelParams params{spec.eta, spec.N, s};
                    const YSearchResult ys =
                        maximize_over_y(kind, ModeCount::asymptotic(), params, r, spec.quad);
                    return std::vector<Cell>{std::string(to_string(kind)), s, r, ys.value};
                },
                [&](std::size_t i) {
                    const auto [kind, s, r] = decode(i);
                    return grid_label(kind, "s=" + format_numeric(s) + " r=" + format_numeric(r));
                });
        }
        case SweepAxis::s: {
            require_grid(strictly_increasing(spec.s_values), "s grid must be strictly increasing");
            const std::size_t count = spec.kinds.size() * spec.s_values.size();
            auto decode = [&](std::size_t i) {
                return std::tuple{spec.kinds[i / spec.s_values.size()],
                                  spec.s_values[i % spec.s_values.size()]};
            };
            return run_tasks(
                count, spec.threads,
                {"kind", "s", "N", "eta", "r_opt", "y_opt", "value_bits_per_mode"},
                [&](std::size_t i) {
                    const auto [kind, s] = decode(i);
                    const ChannelParams params{spec.eta, spec.N, s};
                    const OptimizationResult opt =
                        maximize_over_r_y(kind, ModeCount::asymptotic(), params, spec.quad);
                    return std::vector<Cell>{std::string(to_string(kind)), s,    spec.N,
                                             spec.eta,                     opt.r_star,
                                             opt.y_star,                   opt.value};
                },
                [&](std::size_t i) {
                    const auto [kind, s] = decode(i);
                    return grid_label(kind, "s=" + format_numeric(s));
                });
        }
        case SweepAxis::eta: {
            require_grid(spec.kinds.size() == 1, "eta sweep takes exactly one rate kind");
            require_grid(!spec.eta_values.empty(), "eta grid must be nonempty");
            require_grid(strictly_increasing(spec.eta_values),
                         "eta grid must be strictly increasing");
            require_grid(strictly_increasing(spec.s_values), "s grid must be strictly increasing");
            const RateKind kind = spec.kinds.front();
            const std::size_t count = spec.eta_values.size() * spec.s_values.size();
            auto decode = [&](std::size_t i) {
                return std::pair{spec.eta_values[i / spec.s_values.size()],
                                 spec.s_values[i % spec.s_values.size()]};
            };
            return run_tasks(
                count, spec.threads, {"eta", "s", "C"},
                [&](std::size_t i) {
                    const auto [eta, s] = decode(i);
                    const ChannelParams params{eta, spec.N, s};
                    const OptimizationResult opt =
                        maximize_over_r_y(kind, ModeCount::asymptotic(), params, spec.quad);
                    return std::vector<Cell>{eta, s, opt.value};
                },
                [&](std::size_t i) {
                    const auto [eta, s] = decode(i);
                    return grid_label(kind, "eta=" + format_numeric(eta) +
                                                " s=" + format_numeric(s));
                });
        }
    }
    throw std::invalid_argument("sweep: unknown axis");
}

} // namespace bmcap
