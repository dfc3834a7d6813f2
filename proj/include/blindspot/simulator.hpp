#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "blindspot/analytic.hpp"
#include "blindspot/config.hpp"
#include "blindspot/geometry.hpp"
#include "blindspot/rng.hpp"
#include "blindspot/sampling.hpp"

namespace blindspot::sim {

using geom::ObstacleLine;
using geom::ObstacleSegment;
using geom::Point2;

namespace detail {

// Visible-anchor count with early exit once k_min is reached. Lines are
// checked nearest-first so blocked anchors fail fast.
inline bool blindspot_lines(const std::vector<Point2>& anchors,
                            std::vector<ObstacleLine>& lines, int k_min) {
    std::sort(lines.begin(), lines.end(),
              [](const ObstacleLine& a, const ObstacleLine& b) { return a.foot.r < b.foot.r; });
    std::vector<std::pair<double, double>> normals;  // (cos phi, sin phi) paired with r
    std::vector<double> rs;
    normals.reserve(lines.size());
    rs.reserve(lines.size());
    for (const auto& l : lines) {
        normals.emplace_back(std::cos(l.foot.phi), std::sin(l.foot.phi));
        rs.push_back(l.foot.r);
    }
    int visible = 0;
    for (const auto& a : anchors) {
        bool blocked = false;
        for (size_t i = 0; i < rs.size(); ++i) {
            if (a.x * normals[i].first + a.y * normals[i].second >= rs[i]) {
                blocked = true;
                break;
            }
        }
        if (!blocked && ++visible >= k_min) return false;
    }
    return true;
}

inline bool blindspot_segments(const std::vector<Point2>& anchors,
                               const std::vector<ObstacleSegment>& segments, int k_min) {
    const Point2 origin{0.0, 0.0};
    std::vector<std::pair<Point2, Point2>> endpoints;
    endpoints.reserve(segments.size());
    for (const auto& s : segments) endpoints.emplace_back(s.endpoint_a(), s.endpoint_b());
    int visible = 0;
    for (const auto& a : anchors) {
        bool blocked = false;
        for (const auto& [e1, e2] : endpoints) {
            if (geom::segments_intersect(origin, a, e1, e2)) {
                blocked = true;
                break;
            }
        }
        if (!blocked && ++visible >= k_min) return false;
    }
    return true;
}

// Runs fn(i) for i in [0, n) over the requested number of threads. Each index
// owns its work item, so the partition cannot affect results.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::uint64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

// One Monte Carlo trial: true if the typical target is in a blind-spot.
// The obstacle feet and the anchors are drawn from the stream in a fixed
// order that does not depend on the obstacle length, so runs that share
// (master_seed, trial_index) see identical randomness for every L
// (common random numbers).
inline bool simulate_blindspot_trial(const ScenarioConfig& config, rng::RngStream& stream) {
    config.validate();
    auto lines = sampling::sample_obstacle_lines(config.lambda0, config.range, stream);
    const auto anchors = sampling::sample_ppp_disk(config.lambda, config.range, stream);
    if (config.infinite_length())
        return detail::blindspot_lines(anchors, lines, config.k_min);
    std::vector<ObstacleSegment> segments;
    segments.reserve(lines.size());
    for (const auto& l : lines) segments.push_back({l.foot, 0.5 * config.length});
    return detail::blindspot_segments(anchors, segments, config.k_min);
}

// Blind-spot probability estimate over n_trials independent trials. Trial i
// uses the substream (master_seed, i); the result is a plain count, so it is
// identical for any thread count.
inline EstimateResult estimate_blindspot(const ScenarioConfig& config, std::uint64_t n_trials,
                                         std::uint64_t master_seed, unsigned threads = 1) {
    if (n_trials < 1) throw std::invalid_argument("estimate_blindspot: n_trials must be >= 1");
    config.validate();
    std::vector<std::uint8_t> blind(n_trials, 0);
    detail::parallel_for(n_trials, threads, [&](std::uint64_t i) {
        rng::RngStream stream(master_seed, i);
        blind[i] = simulate_blindspot_trial(config, stream) ? 1 : 0;
    });
    const std::uint64_t hits =
        std::accumulate(blind.begin(), blind.end(), std::uint64_t{0});
    const double p = static_cast<double>(hits) / static_cast<double>(n_trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_trials));
    return {p, se, n_trials, master_seed};
}

struct CellAreaSample {
    std::vector<double> areas;
    std::uint64_t n_discarded = 0;  // realizations truncated by the window
};

// Empirical cell-area sampler for the origin cell of the line tessellation.
// The window half-width is chosen so a direction survives to the window
// boundary with probability < 1e-10; feet are sampled on the disk that
// circumscribes the window. Truncated cells are discarded and counted.
inline CellAreaSample sample_cell_areas(double lambda0, std::uint64_t n_samples,
                                        std::uint64_t master_seed, unsigned threads = 1) {
    if (!(lambda0 > 0.0)) throw std::invalid_argument("sample_cell_areas: lambda0 must be > 0");
    if (n_samples < 1) throw std::invalid_argument("sample_cell_areas: n_samples must be >= 1");
    const double window = std::sqrt(-4.0 * std::log(1e-10) / (M_PI * lambda0));
    const double foot_radius = window * std::sqrt(2.0);

    std::vector<double> per_sample(n_samples, -1.0);  // -1 marks a discard
    detail::parallel_for(n_samples, threads, [&](std::uint64_t i) {
        rng::RngStream stream(master_seed, i);
        const auto lines = sampling::sample_obstacle_lines(lambda0, foot_radius, stream);
        const auto cell = geom::cell_containing_origin(lines, window);
        if (!cell.touches_window) per_sample[i] = geom::polygon_area(cell.cell);
    });

    CellAreaSample out;
    out.areas.reserve(n_samples);
    for (double a : per_sample) {
        if (a < 0.0)
            ++out.n_discarded;
        else
            out.areas.push_back(a);
    }
    return out;
}

// E[B_v]: mean unshadowed area in the disk of radius R, estimated by uniform
// probe points against sampled obstacle realizations. The standard error
// comes from the per-draw visible fractions.
inline EstimateResult estimate_mean_unshadowed_area(const ScenarioConfig& config,
                                                    std::uint64_t n_obstacle_draws,
                                                    std::uint64_t n_probe_points,
                                                    std::uint64_t master_seed,
                                                    unsigned threads = 1) {
    config.validate();
    if (n_obstacle_draws < 1 || n_probe_points < 1)
        throw std::invalid_argument("estimate_mean_unshadowed_area: counts must be >= 1");

    const Point2 origin{0.0, 0.0};
    std::vector<double> fractions(n_obstacle_draws, 0.0);
    detail::parallel_for(n_obstacle_draws, threads, [&](std::uint64_t i) {
        rng::RngStream stream(master_seed, i);
        auto lines = sampling::sample_obstacle_lines(config.lambda0, config.range, stream);
        std::vector<ObstacleSegment> segments;
        if (!config.infinite_length()) {
            segments.reserve(lines.size());
            for (const auto& l : lines) segments.push_back({l.foot, 0.5 * config.length});
        }
        std::uint64_t visible = 0;
        for (std::uint64_t j = 0; j < n_probe_points; ++j) {
            const double angle = 2.0 * M_PI * stream.next_double();
            const double dist = config.range * std::sqrt(stream.next_double());
            const Point2 probe{dist * std::cos(angle), dist * std::sin(angle)};
            const bool vis = config.infinite_length()
                                 ? geom::los_visible(origin, probe, lines)
                                 : geom::los_visible(origin, probe, segments);
            if (vis) ++visible;
        }
        fractions[i] = static_cast<double>(visible) / static_cast<double>(n_probe_points);
    });

    const double disk_area = M_PI * config.range * config.range;
    const double mean_frac =
        std::accumulate(fractions.begin(), fractions.end(), 0.0) /
        static_cast<double>(n_obstacle_draws);
    double var = 0.0;
    for (double f : fractions) var += (f - mean_frac) * (f - mean_frac);
    var /= std::max<std::uint64_t>(1, n_obstacle_draws - 1);
    const double se = disk_area * std::sqrt(var / static_cast<double>(n_obstacle_draws));
    return {disk_area * mean_frac, se, n_obstacle_draws, master_seed};
}

enum class Method { mc, analytic_asymptotic, analytic_independent, mc_independent_segments };

inline Method method_from_string(const std::string& name) {
    if (name == "mc") return Method::mc;
    if (name == "analytic_asymptotic") return Method::analytic_asymptotic;
    if (name == "analytic_independent") return Method::analytic_independent;
    if (name == "mc_independent_segments") return Method::mc_independent_segments;
    throw std::invalid_argument("unknown method: " + name);
}

inline std::string method_to_string(Method m) {
    switch (m) {
        case Method::mc: return "mc";
        case Method::analytic_asymptotic: return "analytic_asymptotic";
        case Method::analytic_independent: return "analytic_independent";
        case Method::mc_independent_segments: return "mc_independent_segments";
    }
    return "?";
}

enum class SweepVariable { lambda, length };

struct SweepOptions {
    std::uint64_t n_trials = 100000;
    std::uint64_t master_seed = 0;
    unsigned threads = 1;
    std::uint64_t bv_obstacle_draws = 1000;   // mc_independent_segments only
    std::uint64_t bv_probe_points = 4096;
};

// Evaluates every requested method at every sweep value, in input order.
inline std::vector<SweepRow> run_sweep(const ScenarioConfig& base_config,
                                       SweepVariable variable,
                                       const std::vector<double>& values,
                                       const std::vector<Method>& methods,
                                       const SweepOptions& options) {
    if (values.empty()) throw std::invalid_argument("run_sweep: empty value list");
    if (methods.empty()) throw std::invalid_argument("run_sweep: empty method list");

    std::vector<SweepRow> rows;
    rows.reserve(values.size() * methods.size());
    for (double v : values) {
        ScenarioConfig config = base_config;
        if (variable == SweepVariable::lambda)
            config.lambda = v;
        else
            config.length = v;
        config.validate();

        for (Method m : methods) {
            SweepRow row;
            row.method = method_to_string(m);
            row.lambda = config.lambda;
            row.lambda0 = config.lambda0;
            row.length = config.length;
            row.range = config.range;
            row.k_min = config.k_min;
            switch (m) {
                case Method::mc: {
                    const auto est = estimate_blindspot(config, options.n_trials,
                                                        options.master_seed, options.threads);
                    row.value = est.value;
                    row.stderr_ = est.stderr_;
                    row.n_trials = est.n_trials;
                    row.seed = est.master_seed;
                    break;
                }
                case Method::analytic_asymptotic:
                    row.value = analytic::asymptotic_blindspot(config.lambda, config.lambda0,
                                                               config.k_min);
                    break;
                case Method::analytic_independent:
                    row.value = analytic::independent_blindspot_lines(
                        config.lambda, config.lambda0, config.range, config.k_min);
                    break;
                case Method::mc_independent_segments: {
                    const auto area = estimate_mean_unshadowed_area(
                        config, options.bv_obstacle_draws, options.bv_probe_points,
                        options.master_seed, options.threads);
                    row.value = analytic::independent_blindspot_segments(
                        config.lambda, area.value, config.range, config.k_min);
                    row.n_trials = area.n_trials;
                    row.seed = area.master_seed;
                    break;
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace blindspot::sim
