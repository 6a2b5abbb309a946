#ifndef TSPGAP_ELLIPSE_HPP
#define TSPGAP_ELLIPSE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/families/ijk.hpp"
#include "tspgap/families/pseudo_tour.hpp"

namespace tspgap::ellipse
{

using Point = std::array<double, 2>;

/// No placement exists for the requested parameters.
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// b: half-width of the corner rectangle, e: focal abscissa, f: |abscissa of Y0|.
struct EllipseParams {
    double b = 0.0;
    double e = 0.0;
    double f = 0.0;
};

/// Coordinates by line, X and Z with i+2 points, Y with j+2.
struct Placement {
    int i = 0;
    int j = 0;
    std::vector<Point> X, Y, Z;
};

struct ConstructionResult {
    Instance instance;
    EllipseParams params;
    double ratio = 0.0;
    double tour_length = 0.0; // shortcut of the left directional pseudo-tour
    double lp_cost = 0.0;     // cost of x_{i,j,i}
    double shortcut_spread = 0.0; // max - min over all pseudo-tour shortcuts
    double residual_inner = 0.0;
    double residual_outer = 0.0;
};

inline double dist(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

inline Point mirror_x(const Point& p) { return {-p[0], p[1]}; }

/// Length difference between shortcuts of the left tour and the h-th mid tour,
/// with Y_{h+1} taken from the placement.
inline double diff_inner(const Placement& pl, int h)
{
    const auto& X = pl.X;
    const auto& Y = pl.Y;
    const auto& Z = pl.Z;
    const int li = pl.i + 1, lj = pl.j + 1;
    return dist(X[0], Y[lj]) + dist(X[li], Z[li]) + dist(Y[h], Y[h + 1]) - dist(X[0], Y[h]) - dist(Y[h + 1], Z[li]) -
           dist(X[li], Y[lj]);
}

/// Length difference between shortcuts of the left tour and the h-th up tour.
inline double diff_outer(const Placement& pl, int h)
{
    const auto& X = pl.X;
    const auto& Y = pl.Y;
    const auto& Z = pl.Z;
    const int lj = pl.j + 1;
    return dist(X[0], Y[0]) + dist(Z[0], Y[lj]) - dist(X[0], Z[0]) - dist(Z[h], Y[0]) - dist(Z[h + 1], Y[lj]) +
           dist(Z[h], Z[h + 1]);
}

namespace detail
{

inline constexpr int kCoarse = 256;
inline constexpr int kFallback = 10000;
inline constexpr int kBisect = 200;

/// Root of g on [lo, hi] assuming g(lo) and g(hi) differ in sign.
inline double bisect(const std::function<double(double)>& g, double lo, double hi, double glo)
{
    for (int it = 0; it < kBisect; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// First sign change of g over [lo, hi] on a uniform grid, then bisection.
/// g returns nullopt where it is undefined; such samples break brackets.
inline std::optional<double> grid_root(const std::function<std::optional<double>(double)>& g, double lo, double hi,
                                       int samples)
{
    std::optional<double> prev;
    double prev_t = lo;
    for (int s = 0; s <= samples; ++s) {
        const double t = lo + (hi - lo) * s / samples;
        const auto v = g(t);
        if (v && *v == 0.0) return t;
        if (v && prev && ((*v < 0) != (*prev < 0))) {
            const double a = prev_t;
            const double ga = *prev;
            bool broken = false;
            auto plain = [&](double x) {
                const auto r = g(x);
                if (!r) {
                    broken = true;
                    return ga;
                }
                return *r;
            };
            const double root = bisect(plain, a, t, ga);
            if (!broken) return root;
        }
        prev = v;
        prev_t = t;
    }
    return std::nullopt;
}

/// Coarse scan first; the dense scan only when `thorough`.
inline std::optional<double> find_root(const std::function<std::optional<double>(double)>& g, double lo, double hi,
                                       bool thorough = true)
{
    if (auto r = grid_root(g, lo, hi, kCoarse)) return r;
    if (!thorough) return std::nullopt;
    return grid_root(g, lo, hi, kFallback);
}

inline Placement corners(int i, int j, double b)
{
    Placement pl;
    pl.i = i;
    pl.j = j;
    pl.X.assign(static_cast<std::size_t>(i + 2), Point{0.0, 0.0});
    pl.Z.assign(static_cast<std::size_t>(i + 2), Point{0.0, 0.0});
    pl.Y.assign(static_cast<std::size_t>(j + 2), Point{0.0, 0.0});
    pl.X.front() = {-b, -1.0};
    pl.X.back() = {b, -1.0};
    pl.Z.front() = {-b, 1.0};
    pl.Z.back() = {b, 1.0};
    return pl;
}

/// Places Y_1..Y_{j/2} for a given f; returns the closing residual or nullopt
/// when a step has no root left of the centre.
inline std::optional<double> inner_sweep(Placement& pl, double f)
{
    const int j = pl.j;
    const double b = pl.Z.back()[0];
    pl.Y.front() = {-f, 0.0};
    pl.Y.back() = {f, 0.0};
    const int half = j / 2;
    for (int h = 0; h < half; ++h) {
        const double lo = pl.Y[static_cast<std::size_t>(h)][0];
        auto g = [&](double x) -> std::optional<double> {
            pl.Y[static_cast<std::size_t>(h + 1)] = {x, 0.0};
            return diff_inner(pl, h);
        };
        // diffInner increases with the abscissa of Y_{h+1}.
        const double glo = *g(lo);
        const double ghi = *g(b);
        double x;
        if (glo < 0 && ghi > 0) {
            x = bisect([&](double t) { return *g(t); }, lo, b, glo);
        } else {
            const auto r = grid_root(g, lo, b, kCoarse);
            if (!r) return std::nullopt;
            x = *r;
        }
        if (!(x < 0.0)) return std::nullopt;
        pl.Y[static_cast<std::size_t>(h + 1)] = {x, 0.0};
        pl.Y[static_cast<std::size_t>(j - h)] = {-x, 0.0};
    }
    if (j % 2 == 1) {
        pl.Y[static_cast<std::size_t>((j + 1) / 2)] = {0.0, 0.0};
    } else if (j > 0) {
        pl.Y[static_cast<std::size_t>(half + 1)] = mirror_x(pl.Y[static_cast<std::size_t>(half)]);
    }
    return diff_inner(pl, half);
}

struct Ellipse {
    double A = 0.0; // semi-major
    double B = 0.0; // semi-minor
    [[nodiscard]] Point at(double theta) const { return {A * std::cos(theta), B * std::sin(theta)}; }
};

inline Ellipse ellipse_through(double b, double e)
{
    Ellipse el;
    el.A = 0.5 * (std::hypot(b - e, 1.0) + std::hypot(b + e, 1.0));
    el.B = std::sqrt(std::max(0.0, el.A * el.A - e * e));
    return el;
}

/// Places Z_1..Z_{i/2} (and mirrors) on the ellipse with foci (+-e, 0); returns the
/// closing residual, or nullopt if a hyperbola step fails or crosses the centre.
inline std::optional<double> outer_sweep(Placement& pl, double e)
{
    const int i = pl.i;
    const double b = pl.Z.back()[0];
    const Ellipse el = ellipse_through(b, e);
    if (!(el.B > 0.0)) return std::nullopt;
    const double theta_right = std::atan2(1.0 / el.B, b / el.A);
    double theta = std::acos(-1.0) - theta_right; // Z_0
    const int half = i / 2;
    auto put = [&](int s, const Point& z) {
        pl.Z[static_cast<std::size_t>(s)] = z;
        pl.X[static_cast<std::size_t>(s)] = {z[0], -z[1]};
    };
    for (int h = 0; h < half; ++h) {
        auto g = [&](double t) -> std::optional<double> {
            pl.Z[static_cast<std::size_t>(h + 1)] = el.at(t);
            return diff_outer(pl, h);
        };
        // Walk the arc from Z_h towards Z_{i+1}; the parameter decreases.
        auto gr = [&](double s) { return g(theta - s); };
        const auto r = grid_root(gr, 0.0, theta - theta_right, kCoarse);
        if (!r || *r <= 0.0) return std::nullopt;
        theta -= *r;
        const Point z = el.at(theta);
        if (!(z[0] < 0.0)) return std::nullopt;
        put(h + 1, z);
        put(i - h, mirror_x(z));
    }
    if (i % 2 == 1) {
        put((i + 1) / 2, Point{0.0, el.B});
    } else if (i > 0) {
        put(half + 1, mirror_x(pl.Z[static_cast<std::size_t>(half)]));
    }
    return diff_outer(pl, half);
}

inline double upper_e(double b) { return 50.0 * (b + 1.0); }

} // namespace detail

/// Inner vertices for a given b: Y on the x-axis, symmetric about 0, every diffInner zero.
inline Placement inner_vertices(int i, int j, double b, double eps = 1e-9, bool thorough = true)
{
    if (i < 0 || j < 0) throw std::invalid_argument("i and j must be non-negative");
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("b must be positive");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    Placement pl = detail::corners(i, j, b);
    auto g = [&](double f) { return detail::inner_sweep(pl, f); };
    const auto f = detail::find_root(g, 0.0, b, thorough);
    if (!f || *f <= 0.0 || *f >= b) throw InfeasibleError("no inner placement for b = " + std::to_string(b));
    const auto res = detail::inner_sweep(pl, *f);
    if (!res || std::abs(*res) > eps) throw InfeasibleError("inner placement residual above eps");
    return pl;
}

/// Outer vertices on the ellipse through the corners; returns the placement and e.
/// For i = 0 there is nothing to place and e is reported as 0.
inline std::pair<Placement, double> outer_vertices(const Placement& inner, double eps = 1e-9, bool thorough = true)
{
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    Placement pl = inner;
    if (pl.i == 0) return {pl, 0.0};
    const double b = pl.Z.back()[0];
    auto g = [&](double e) { return detail::outer_sweep(pl, e); };
    const auto e = detail::find_root(g, 0.0, detail::upper_e(b), thorough);
    if (!e) throw InfeasibleError("no focal abscissa places the outer vertices for b = " + std::to_string(b));
    const auto res = detail::outer_sweep(pl, *e);
    if (!res || std::abs(*res) > eps) throw InfeasibleError("outer placement residual above eps");
    return {pl, *e};
}

inline Instance placement_instance(const Placement& pl)
{
    const families::IJK p{pl.i, pl.j, pl.i};
    const families::LabeledVertexSet V(p);
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(2 * V.size()));
    for (const auto* line : {&pl.X, &pl.Y, &pl.Z}) {
        for (const auto& q : *line) {
            c.push_back(q[0]);
            c.push_back(q[1]);
        }
    }
    return Instance(2, std::move(c), NormSpec::euclidean(), V.labels());
}

inline double max_inner_residual(const Placement& pl)
{
    double r = 0.0;
    for (int h = 0; h <= pl.j / 2; ++h) r = std::max(r, std::abs(diff_inner(pl, h)));
    return r;
}

inline double max_outer_residual(const Placement& pl)
{
    double r = 0.0;
    for (int h = 0; h <= pl.i / 2; ++h) r = std::max(r, std::abs(diff_outer(pl, h)));
    return r;
}

namespace detail
{

struct Evaluated {
    Placement placement;
    EllipseParams params;
    double tour_length = 0.0;
    double lp_cost = 0.0;
    double ratio = 0.0;
};

inline Evaluated evaluate(const Placement& pl, EllipseParams prm)
{
    const families::IJK p{pl.i, pl.j, pl.i};
    const Instance inst = placement_instance(pl);
    Evaluated ev;
    ev.placement = pl;
    ev.params = prm;
    ev.lp_cost = fractional_cost(inst, families::fractional_xijk(p));
    for (const auto& t : families::pseudo_tours(p)) {
        if (t.kind == families::PseudoTourKind::left) {
            ev.tour_length = tspgap::tour_length(inst, families::shortcut_tour(t, inst));
            break;
        }
    }
    ev.ratio = ev.tour_length / ev.lp_cost;
    return ev;
}

inline std::optional<Evaluated> try_b(int i, int j, double b, double eps, bool thorough = false)
{
    try {
        Placement in = inner_vertices(i, j, b, eps, thorough);
        auto [pl, e] = outer_vertices(in, eps, thorough);
        const double f = -pl.Y.front()[0];
        return evaluate(pl, EllipseParams{b, e, f});
    } catch (const InfeasibleError&) {
        return std::nullopt;
    }
}

} // namespace detail

/// Builds the symmetric ellipse instance for x_{i,j,i} maximizing the ratio over b.
/// For i = 0 the corners fix b through diffOuter_0 = 0; otherwise b is scanned on a
/// grid and refined by ternary search around the best feasible sample.
inline ConstructionResult ellipse_construct(int i, int j, double eps = 1e-9)
{
    if (i < 0 || j < 0) throw std::invalid_argument("i and j must be non-negative");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");

    std::optional<detail::Evaluated> best;
    if (i == 0) {
        auto g = [&](double b) -> std::optional<double> {
            try {
                Placement pl = inner_vertices(0, j, b, eps, false);
                return diff_outer(pl, 0);
            } catch (const InfeasibleError&) {
                return std::nullopt;
            }
        };
        const auto b = detail::find_root(g, 1e-3, 20.0);
        if (!b) throw InfeasibleError("no b closes the outer condition");
        best = detail::try_b(0, j, *b, eps, true);
        if (!best) throw InfeasibleError("construction failed at the closing b");
        if (std::abs(diff_outer(best->placement, 0)) > eps) throw InfeasibleError("outer residual above eps");
    } else {
        // Log-spaced scan; ratio(b) is undefined outside a window.
        constexpr int kScan = 160;
        const double lo = 0.02, hi = 20.0;
        std::vector<double> bs;
        std::vector<double> rs;
        int arg = -1;
        for (int s = 0; s <= kScan; ++s) {
            const double b = lo * std::pow(hi / lo, static_cast<double>(s) / kScan);
            const auto ev = detail::try_b(i, j, b, eps);
            bs.push_back(b);
            rs.push_back(ev ? ev->ratio : -1.0);
            if (ev && (arg < 0 || ev->ratio > rs[static_cast<std::size_t>(arg)])) arg = s;
        }
        if (arg < 0) throw InfeasibleError("no feasible b found");
        double a = bs[static_cast<std::size_t>(std::max(arg - 1, 0))];
        double c = bs[static_cast<std::size_t>(std::min(arg + 1, kScan))];
        auto ratio_at = [&](double b) {
            const auto ev = detail::try_b(i, j, b, eps);
            return ev ? ev->ratio : -1.0;
        };
        for (int it = 0; it < 100 && c - a > 1e-12 * c; ++it) {
            const double m1 = a + (c - a) / 3.0;
            const double m2 = c - (c - a) / 3.0;
            if (ratio_at(m1) < ratio_at(m2)) {
                a = m1;
            } else {
                c = m2;
            }
        }
        best = detail::try_b(i, j, 0.5 * (a + c), eps, true);
        if (!best || best->ratio < rs[static_cast<std::size_t>(arg)]) {
            best = detail::try_b(i, j, bs[static_cast<std::size_t>(arg)], eps, true);
        }
        if (!best) throw InfeasibleError("refined b is infeasible");
    }

    const families::IJK p{i, j, i};
    Instance inst = placement_instance(best->placement);
    ConstructionResult out{inst, best->params, best->ratio, best->tour_length, best->lp_cost, 0.0,
                           max_inner_residual(best->placement), max_outer_residual(best->placement)};
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (const auto& t : families::pseudo_tours(p)) {
        const double len = tspgap::tour_length(inst, families::shortcut_tour(t, inst));
        mn = std::min(mn, len);
        mx = std::max(mx, len);
    }
    out.shortcut_spread = mx - mn;
    return out;
}

} // namespace tspgap::ellipse

#endif
