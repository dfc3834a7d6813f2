#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace blindspot::analytic {

// Three-parameter Gamma fit to the area law of a typical Poisson-Voronoi
// cell (Tanemura's constants for the planar case).
struct GammaFitConstants {
    static constexpr double a = 1.07950;
    static constexpr double b = 3.03226;
    static constexpr double c = 3.31122;
};

class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Adaptive Simpson quadrature with local error control.
struct SimpsonState {
    double rel_tol;
    int max_depth;
};

template <typename F>
double simpson_segment(const F& f, double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

template <typename F>
double adaptive_simpson_rec(const F& f, double lo, double hi, double flo, double fmid,
                            double fhi, double whole, double tol, int depth,
                            const SimpsonState& st) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flmid = f(lmid);
    const double frmid = f(rmid);
    const double left = simpson_segment(f, lo, mid, flo, flmid, fmid);
    const double right = simpson_segment(f, mid, hi, fmid, frmid, fhi);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= st.max_depth)
        throw NumericalFailure("adaptive quadrature failed to converge");
    return adaptive_simpson_rec(f, lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth + 1, st) +
           adaptive_simpson_rec(f, mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth + 1, st);
}

// Pre-splits the interval into uniform panels before recursing, so a sharply
// peaked integrand cannot be missed by the initial coarse samples.
template <typename F>
double adaptive_simpson(const F& f, double lo, double hi, double rel_tol, double abs_floor) {
    const SimpsonState st{rel_tol, 60};
    constexpr int kPanels = 32;
    const double width = (hi - lo) / kPanels;

    // First pass: coarse panel estimates to set an absolute tolerance scale.
    double coarse = 0.0;
    double f_edges[kPanels + 1];
    double f_mids[kPanels];
    for (int i = 0; i <= kPanels; ++i) f_edges[i] = f(lo + i * width);
    for (int i = 0; i < kPanels; ++i) {
        f_mids[i] = f(lo + (i + 0.5) * width);
        coarse += width / 6.0 * (f_edges[i] + 4.0 * f_mids[i] + f_edges[i + 1]);
    }
    const double tol =
        std::max(abs_floor, rel_tol * std::fabs(coarse)) / static_cast<double>(kPanels);

    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        const double a = lo + i * width;
        const double b = a + width;
        const double whole =
            width / 6.0 * (f_edges[i] + 4.0 * f_mids[i] + f_edges[i + 1]);
        total += adaptive_simpson_rec(f, a, b, f_edges[i], f_mids[i], f_edges[i + 1], whole,
                                      tol, 0, st);
    }
    return total;
}

// Regularized lower incomplete gamma P(s, x), series + continued fraction
// (Lentz). Needed for the cell-area CDF.
inline double gamma_p(double s, double x) {
    if (x < 0.0 || s <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(s);
    if (x < s + 1.0) {
        double term = 1.0 / s;
        double sum = term;
        double ap = s;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16)
                return sum * std::exp(-x + s * std::log(x) - lg);
        }
        throw NumericalFailure("gamma_p: series did not converge");
    }
    double b = x + 1.0 - s;
    double c = 1.0 / 1e-300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            return 1.0 - h * std::exp(-x + s * std::log(x) - lg);
    }
    throw NumericalFailure("gamma_p: continued fraction did not converge");
}

}  // namespace detail

// P(Poisson(lambda * area) <= k_min - 1): the probability that fewer than
// k_min anchors fall in a region of the given area. Terms are accumulated in
// log space so large means underflow cleanly to 0.
inline double conditional_blindspot(double lambda, double area, int k_min = 3) {
    if (!(lambda >= 0.0) || !(area >= 0.0))
        throw std::invalid_argument("conditional_blindspot: negative input");
    if (k_min < 1) throw std::invalid_argument("conditional_blindspot: k_min must be >= 1");
    const double mean = lambda * area;
    if (mean == 0.0) return 1.0;
    double sum = 0.0;
    const double log_mean = std::log(mean);
    for (int k = 0; k < k_min; ++k)
        sum += std::exp(-mean + k * log_mean - std::lgamma(k + 1.0));
    return std::min(sum, 1.0);
}

// Area pdf of the origin cell (equivalently of a typical Poisson-Voronoi
// cell with parameter lambda0/4), Gamma-fit form.
inline double gamma_cell_area_pdf(double area, double lambda0) {
    if (!(lambda0 > 0.0)) throw std::invalid_argument("gamma_cell_area_pdf: lambda0 must be > 0");
    if (area < 0.0) return 0.0;
    constexpr double a = GammaFitConstants::a;
    constexpr double b = GammaFitConstants::b;
    constexpr double c = GammaFitConstants::c;
    const double mu = lambda0 / 4.0;
    const double u = mu * area;
    if (u == 0.0) return 0.0;  // c > 1, density vanishes at 0
    const double norm = a * std::pow(b, c / a) / std::tgamma(c / a);
    return norm * std::pow(mu, c) * std::pow(area, c - 1.0) * std::exp(-b * std::pow(u, a));
}

// CDF of the scaled area U = (lambda0/4) * A; reduces to a regularized
// incomplete gamma after t = b * u^a.
inline double gamma_cell_area_cdf_scaled(double u) {
    if (u <= 0.0) return 0.0;
    constexpr double a = GammaFitConstants::a;
    constexpr double b = GammaFitConstants::b;
    constexpr double c = GammaFitConstants::c;
    return detail::gamma_p(c / a, b * std::pow(u, a));
}

inline double gamma_cell_area_cdf(double area, double lambda0) {
    if (!(lambda0 > 0.0)) throw std::invalid_argument("gamma_cell_area_cdf: lambda0 must be > 0");
    return gamma_cell_area_cdf_scaled(lambda0 / 4.0 * area);
}

namespace detail {

// Parameter-free pdf of U = (lambda0/4) * A.
inline double scaled_area_pdf(double u) {
    constexpr double a = GammaFitConstants::a;
    constexpr double b = GammaFitConstants::b;
    constexpr double c = GammaFitConstants::c;
    if (u <= 0.0) return 0.0;
    const double norm = a * std::pow(b, c / a) / std::tgamma(c / a);
    return norm * std::pow(u, c - 1.0) * std::exp(-b * std::pow(u, a));
}

// Upper integration limit: beyond this the scaled-area pdf tail is far below
// 1e-12 of its peak (e^{-b u^a} at u = 40 is ~e^{-160}).
inline constexpr double kScaledAreaUpperLimit = 40.0;

}  // namespace detail

// Blind-spot probability under infinite-line obstacles: the conditional
// blind-spot probability averaged over the cell-area law. Integrated on the
// scaled variable u = (lambda0/4) A, so the result depends on lambda/lambda0
// only.
inline double asymptotic_blindspot(double lambda, double lambda0, int k_min = 3) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("asymptotic_blindspot: lambda must be >= 0");
    if (!(lambda0 > 0.0)) throw std::invalid_argument("asymptotic_blindspot: lambda0 must be > 0");
    if (lambda == 0.0) return 1.0;
    const double ratio = 4.0 * lambda / lambda0;  // lambda * A = ratio * u
    const auto integrand = [ratio, k_min](double u) {
        return conditional_blindspot(ratio, u, k_min) * detail::scaled_area_pdf(u);
    };
    const double value =
        detail::adaptive_simpson(integrand, 0.0, detail::kScaledAreaUpperLimit, 1e-8, 1e-14);
    return std::clamp(value, 0.0, 1.0);
}

// P(v(r, phi) = 1): a point at distance r keeps LoS to the origin iff no
// foot point falls in the disk of diameter r between them.
inline double visibility_probability(double r, double lambda0) {
    if (!(r >= 0.0) || !(lambda0 >= 0.0))
        throw std::invalid_argument("visibility_probability: negative input");
    return std::exp(-lambda0 * M_PI * r * r / 4.0);
}

// Infimum obstacle intensity for which exp(-lambda0 pi R^2 / 4) < delta.
inline double min_lambda0_for_delta(double range, double delta) {
    if (!(range > 0.0)) throw std::invalid_argument("min_lambda0_for_delta: range must be > 0");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("min_lambda0_for_delta: delta must be in (0,1)");
    return -4.0 * std::log(delta) / (M_PI * range * range);
}

struct MeanVisibleArea {
    double mean_area;         // E[A_v] restricted to the disk of radius R
    double anchor_mean;       // lambda * E[A_v]
};

// Mean visible area under independent thinning: integrating the visibility
// probability over the disk gives (4/lambda0)(1 - e^{-lambda0 pi R^2/4}).
inline MeanVisibleArea mean_visible_area_lines(double lambda, double lambda0, double range) {
    if (!(lambda0 > 0.0))
        throw std::invalid_argument("mean_visible_area_lines: lambda0 must be > 0");
    const double mean_area =
        4.0 / lambda0 * (1.0 - std::exp(-lambda0 * M_PI * range * range / 4.0));
    return {mean_area, lambda * mean_area};
}

// Independent-blocking baseline for infinite lines: Poisson CDF at the
// deterministic mean count lambda * E[A_v].
inline double independent_blindspot_lines(double lambda, double lambda0, double range,
                                          int k_min = 3) {
    const auto mv = mean_visible_area_lines(lambda, lambda0, range);
    return conditional_blindspot(lambda, mv.mean_area, k_min);
}

// Independent-blocking baseline for finite segments; E[B_v] is supplied by
// the simulator (no closed form exists for it).
inline double independent_blindspot_segments(double lambda, double mean_unshadowed_area,
                                             double range, int k_min = 3) {
    const double disk_area = M_PI * range * range;
    const double slack = 1e-9 * disk_area;
    if (!(mean_unshadowed_area >= -slack && mean_unshadowed_area <= disk_area + slack))
        throw std::invalid_argument(
            "independent_blindspot_segments: mean area outside [0, pi R^2]");
    return conditional_blindspot(lambda, std::clamp(mean_unshadowed_area, 0.0, disk_area),
                                 k_min);
}

// Smallest anchor intensity whose asymptotic blind-spot probability is at
// most epsilon: bracket by doubling, then bisect on the strictly decreasing
// map lambda -> b_as(lambda, lambda0).
inline double design_anchor_intensity(double lambda0, double epsilon, int k_min = 3) {
    if (!(lambda0 > 0.0)) throw std::invalid_argument("design_anchor_intensity: lambda0 <= 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("design_anchor_intensity: epsilon must be in (0,1)");

    double lo = 0.0;
    double hi = lambda0;
    while (asymptotic_blindspot(hi, lambda0, k_min) >= epsilon) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12 * lambda0)
            throw NumericalFailure("design_anchor_intensity: bracketing failed");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double b = asymptotic_blindspot(mid, lambda0, k_min);
        if (b >= epsilon - 1e-6 && b <= epsilon) return mid;
        if (b > epsilon)
            lo = mid;
        else
            hi = mid;
    }
    throw NumericalFailure("design_anchor_intensity: bisection did not converge");
}

}  // namespace blindspot::analytic
