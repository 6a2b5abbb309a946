#ifndef TSPGAP_LOCALSEARCH_HPP
#define TSPGAP_LOCALSEARCH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/exact.hpp"
#include "tspgap/lp/simplex.hpp"
#include "tspgap/lp/subtour.hpp"

namespace tspgap::localsearch
{

/// One entry per coordinate, vertex-major (vertex m, axis a at index m*d + a).
using DirectionVector = std::vector<double>;

struct LocalSearchParams {
    double epsilon0 = 0.01;  // restart until the seed ratio exceeds 1 + epsilon0
    double epsilon1 = 1e-6;  // improvement LP objective threshold
    double epsilon2 = 1e-7;  // smallest step length tried
    double epsilon3 = 1e-4;  // near-optimal window, relative to the current optimum
    double p = 2.0;
    int dim = 2;
    int max_iters = 500;
    int halvings = 60;
    int max_restarts = 5000000;
    std::uint64_t rng_seed = 1;
    // Steps come from the LP with current tour gaps and box radius eta; when false the
    // plain improvement direction is scaled by eta instead.
    bool gap_model = true;
};

/// Optimal and near-optimal tours sharing a reference optimum.
struct TourPool {
    std::set<Tour> tours;
    double reference = 0.0;
};

namespace detail
{

inline void require_smooth(const Instance& inst)
{
    if (inst.norm().p <= 1.0) throw std::invalid_argument("gradients need p > 1; use grouped coordinates for p = 1");
}

/// d/dv_m of ||v_m - q||_p, added into g scaled by w.
inline void add_edge_gradient(const Instance& inst, int m, int q, double w, DirectionVector& g)
{
    const int d = inst.dim();
    const double p = inst.norm().p;
    const auto a = inst.point(m), b = inst.point(q);
    const double len = inst.norm().length(a, b);
    const double denom = std::pow(len, p - 1.0);
    for (int k = 0; k < d; ++k) {
        const double diff = a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)];
        const double sgn = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
        g[static_cast<std::size_t>(m * d + k)] += w * sgn * std::pow(std::abs(diff), p - 1.0) / denom;
    }
}

} // namespace detail

inline DirectionVector grad_tour_length(const Instance& inst, const Tour& t)
{
    detail::require_smooth(inst);
    if (t.size() != inst.size()) throw std::invalid_argument("tour size differs from instance size");
    DirectionVector g(static_cast<std::size_t>(inst.size() * inst.dim()), 0.0);
    for (const auto& e : t.edges()) {
        detail::add_edge_gradient(inst, e.u, e.v, 1.0, g);
        detail::add_edge_gradient(inst, e.v, e.u, 1.0, g);
    }
    return g;
}

inline DirectionVector grad_fractional(const Instance& inst, const EdgeWeightVector& x)
{
    detail::require_smooth(inst);
    if (x.size() != inst.size()) throw std::invalid_argument("weight vector size differs from instance size");
    DirectionVector g(static_cast<std::size_t>(inst.size() * inst.dim()), 0.0);
    for (const auto& [e, w] : x.weights()) {
        detail::add_edge_gradient(inst, e.u, e.v, w, g);
        detail::add_edge_gradient(inst, e.v, e.u, w, g);
    }
    return g;
}

/// Gradient of l_T - r l_x.
inline DirectionVector grad_g(const Instance& inst, const Tour& t, const EdgeWeightVector& x, double r)
{
    auto g = grad_tour_length(inst, t);
    const auto gx = grad_fractional(inst, x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= r * gx[i];
    return g;
}

/// Coordinates (per axis) equal within 1e-9 share one variable. For p = 1 this is the
/// only way to keep the length differentiable along the search direction.
struct CoordinateGroups {
    std::vector<int> group_of; // per coordinate
    int count = 0;
};

inline CoordinateGroups group_coordinates(const Instance& inst, double tol = 1e-9)
{
    const int n = inst.size(), d = inst.dim();
    CoordinateGroups cg;
    cg.group_of.assign(static_cast<std::size_t>(n * d), -1);
    for (int a = 0; a < d; ++a) {
        std::vector<int> idx(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) idx[static_cast<std::size_t>(m)] = m;
        std::sort(idx.begin(), idx.end(), [&](int u, int v) { return inst.point(u)[static_cast<std::size_t>(a)] < inst.point(v)[static_cast<std::size_t>(a)]; });
        double last = 0.0;
        for (std::size_t s = 0; s < idx.size(); ++s) {
            const double c = inst.point(idx[s])[static_cast<std::size_t>(a)];
            if (s == 0 || c - last > tol) ++cg.count;
            last = c;
            cg.group_of[static_cast<std::size_t>(idx[s] * d + a)] = cg.count - 1;
        }
    }
    return cg;
}

/// Gradient of l_T - r l_x with respect to grouped coordinates under the 1-norm.
/// Pairs inside one group move together and contribute nothing.
inline DirectionVector grad_g_grouped(const Instance& inst, const CoordinateGroups& cg, const Tour& t,
                                      const EdgeWeightVector& x, double r)
{
    const int d = inst.dim();
    DirectionVector g(static_cast<std::size_t>(cg.count), 0.0);
    auto add = [&](int u, int v, double w) {
        for (int a = 0; a < d; ++a) {
            const auto gu = cg.group_of[static_cast<std::size_t>(u * d + a)];
            const auto gv = cg.group_of[static_cast<std::size_t>(v * d + a)];
            if (gu == gv) continue;
            const double diff = inst.point(u)[static_cast<std::size_t>(a)] - inst.point(v)[static_cast<std::size_t>(a)];
            const double s = diff > 0.0 ? 1.0 : -1.0;
            g[static_cast<std::size_t>(gu)] += w * s;
            g[static_cast<std::size_t>(gv)] -= w * s;
        }
    };
    for (const auto& e : t.edges()) add(e.u, e.v, 1.0);
    for (const auto& [e, w] : x.weights()) add(e.u, e.v, -r * w);
    return g;
}

inline DirectionVector expand_grouped(const CoordinateGroups& cg, const DirectionVector& w)
{
    DirectionVector out(cg.group_of.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = w[static_cast<std::size_t>(cg.group_of[i])];
    return out;
}

struct Improvement {
    DirectionVector w; // per coordinate (expanded when grouped)
    double delta = 0.0;
};

namespace detail
{

/// Maximise delta subject to gap_T + <w, grad g_T> >= delta for pooled tours, |w_i| <= radius.
inline Improvement direction_lp(const Instance& inst, const TourPool& pool, const EdgeWeightVector& x, double r,
                                double radius, bool use_gaps)
{
    if (pool.tours.empty()) throw std::invalid_argument("improvement LP needs a nonempty tour pool");
    const bool grouped = inst.norm().p == 1.0;
    CoordinateGroups cg;
    std::vector<DirectionVector> grads;
    std::vector<double> gaps;
    if (grouped) cg = group_coordinates(inst);
    const double lx = use_gaps ? fractional_cost(inst, x) : 0.0;
    for (const auto& t : pool.tours) {
        grads.push_back(grouped ? grad_g_grouped(inst, cg, t, x, r) : grad_g(inst, t, x, r));
        gaps.push_back(use_gaps ? tour_length(inst, t) - r * lx : 0.0);
    }
    const std::size_t nv = grads.front().size();
    lp::LinearProgram prog;
    prog.sense = lp::Sense::maximize;
    for (std::size_t i = 0; i < nv; ++i) prog.add_variable(0.0, -radius, radius);
    prog.add_variable(1.0, -lp::kInfinity, lp::kInfinity);
    for (std::size_t t = 0; t < grads.size(); ++t) {
        std::vector<double> row(grads[t]);
        row.push_back(-1.0);
        prog.add_row(std::move(row), lp::Relation::greater_equal, -gaps[t]);
    }
    const auto sol = lp::solve_lp(prog);
    if (sol.status != lp::LpStatus::optimal) throw lp::NumericalError("improvement LP not optimal");
    Improvement imp;
    DirectionVector w(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(nv));
    imp.w = grouped ? expand_grouped(cg, w) : std::move(w);
    imp.delta = sol.values[nv];
    return imp;
}

} // namespace detail

/// Maximise delta subject to <w, grad g_T> >= delta for every pooled tour and -1 <= w <= 1.
/// w = 0, delta = 0 is feasible, so the optimum is never negative. For p = 1 the variables
/// are grouped coordinates.
inline Improvement improvement_lp(const Instance& inst, const TourPool& pool, const EdgeWeightVector& x, double r)
{
    auto imp = detail::direction_lp(inst, pool, x, r, 1.0, false);
    imp.delta = std::max(0.0, imp.delta);
    return imp;
}

/// True when no direction improves every pooled tour at first order (delta <= epsilon1).
inline bool local_opt_certificate(const Instance& inst, const TourPool& pool, const EdgeWeightVector& x,
                                  double epsilon1 = 1e-6)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : pool.tours) best = std::min(best, tour_length(inst, t));
    const double r = best / fractional_cost(inst, x);
    return improvement_lp(inst, pool, x, r).delta <= epsilon1;
}

struct Evaluation {
    ExactResult opt;
    lp::SubtourLpResult lp;
    double ratio = 0.0;
};

inline Evaluation evaluate(const Instance& inst)
{
    Evaluation ev{held_karp(inst), lp::solve_subtour_lp(inst), 0.0};
    ev.ratio = ev.opt.length / ev.lp.cost;
    return ev;
}

struct TraceRecord {
    int iteration = 0;
    double ratio = 0.0;
    double delta = 0.0;
    double eta = 0.0; // accepted step, 0 when none
    std::size_t pool_size = 0;
};

enum class StopReason { certified, step_floor, iteration_cap };

inline const char* stop_reason_name(StopReason s)
{
    switch (s) {
    case StopReason::certified: return "certified";
    case StopReason::step_floor: return "step_floor";
    case StopReason::iteration_cap: return "iteration_cap";
    }
    return "?";
}

struct LocalSearchResult {
    Instance instance;
    double ratio = 0.0;
    std::vector<TraceRecord> trace;
    TourPool pool;
    EdgeWeightVector x;
    bool certificate = false;
    StopReason stop = StopReason::certified;
    int restarts = 0; // random seeds rejected before the search began
};

inline Instance random_instance(int n, int dim, double p, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(n * dim));
    for (auto& v : c) v = U(rng);
    return Instance(dim, std::move(c), NormSpec(p));
}

/// Moves every coordinate by a uniform offset in [-scale, scale].
inline Instance perturb_instance(const Instance& inst, double scale, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(-scale, scale);
    auto c = inst.coords();
    for (auto& v : c) v += U(rng);
    return inst.with_coords(std::move(c));
}

namespace detail
{

inline void refresh_pool(TourPool& pool, const Instance& inst, const Tour& best, double opt, double window)
{
    pool.reference = opt;
    pool.tours.insert(best);
    for (auto it = pool.tours.begin(); it != pool.tours.end();) {
        if (tour_length(inst, *it) > opt + window) {
            it = pool.tours.erase(it);
        } else {
            ++it;
        }
    }
}

/// Adds every tour within the window when exhaustive enumeration is affordable.
inline bool enrich_pool(TourPool& pool, const Instance& inst, double window)
{
    if (inst.size() > kBruteForceMax) return false;
    const auto before = pool.tours.size();
    for (auto& t : near_optimal_tours(inst, window)) pool.tours.insert(std::move(t));
    return pool.tours.size() > before;
}

} // namespace detail

/// Gradient ascent on the integrality ratio from a given start.
inline LocalSearchResult local_search_from(Instance start, const LocalSearchParams& prm)
{
    LocalSearchResult res{std::move(start), 0.0, {}, {}, EdgeWeightVector(), false, StopReason::iteration_cap, 0};
    auto ev = evaluate(res.instance);
    res.ratio = ev.ratio;
    double window = prm.epsilon3 * ev.opt.length;
    detail::refresh_pool(res.pool, res.instance, ev.opt.tour, ev.opt.length, window);
    bool enriched = false;

    for (int it = 0; it < prm.max_iters; ++it) {
        TraceRecord rec{it, res.ratio, 0.0, 0.0, res.pool.tours.size()};
        auto imp = improvement_lp(res.instance, res.pool, ev.lp.x, res.ratio);
        rec.delta = imp.delta;
        if (imp.delta <= prm.epsilon1) {
            if (!enriched && detail::enrich_pool(res.pool, res.instance, window)) {
                enriched = true;
                continue;
            }
            res.stop = StopReason::certified;
            res.trace.push_back(rec);
            break;
        }
        bool accepted = false;
        double eta = 1.0;
        for (int h = 0; h <= prm.halvings && eta >= prm.epsilon2; ++h, eta *= 0.5) {
            auto c = res.instance.coords();
            if (prm.gap_model) {
                const auto step = detail::direction_lp(res.instance, res.pool, ev.lp.x, res.ratio, eta, true);
                for (std::size_t q = 0; q < c.size(); ++q) c[q] += step.w[q];
            } else {
                for (std::size_t q = 0; q < c.size(); ++q) c[q] += eta * imp.w[q];
            }
            std::optional<Instance> cand;
            try {
                cand.emplace(res.instance.with_coords(std::move(c)));
            } catch (const std::invalid_argument&) {
                continue; // step made two points coincide
            }
            auto cev = evaluate(*cand);
            if (cev.ratio > res.ratio) {
                res.instance = std::move(*cand);
                ev = std::move(cev);
                res.ratio = ev.ratio;
                window = prm.epsilon3 * ev.opt.length;
                detail::refresh_pool(res.pool, res.instance, ev.opt.tour, ev.opt.length, window);
                enriched = false;
                accepted = true;
                rec.eta = eta;
                break;
            }
        }
        res.trace.push_back(rec);
        if (!accepted) {
            if (!enriched && detail::enrich_pool(res.pool, res.instance, window)) {
                enriched = true;
                continue;
            }
            res.stop = StopReason::step_floor;
            break;
        }
    }
    res.x = ev.lp.x;
    // The certificate is checked against every tour within the window when affordable.
    TourPool full = res.pool;
    detail::enrich_pool(full, res.instance, window);
    res.certificate = improvement_lp(res.instance, full, res.x, res.ratio).delta <= prm.epsilon1;
    return res;
}

/// Random restarts until the seed ratio exceeds 1 + epsilon0, then gradient ascent.
inline LocalSearchResult local_search(int n, const LocalSearchParams& prm)
{
    if (n < 3 || n > kHeldKarpMax) throw std::invalid_argument("local search needs 3 <= n <= 20");
    if (!(prm.epsilon0 > 0 && prm.epsilon1 > 0 && prm.epsilon2 > 0 && prm.epsilon3 > 0)) {
        throw std::invalid_argument("all epsilons must be positive");
    }
    std::mt19937_64 rng(prm.rng_seed);
    for (int attempt = 0; attempt < prm.max_restarts; ++attempt) {
        auto inst = random_instance(n, prm.dim, prm.p, rng);
        if (evaluate(inst).ratio > 1.0 + prm.epsilon0) {
            auto res = local_search_from(std::move(inst), prm);
            res.restarts = attempt;
            return res;
        }
    }
    throw std::runtime_error("no random instance exceeded the ratio floor within " + std::to_string(prm.max_restarts) +
                             " attempts");
}

} // namespace tspgap::localsearch

#endif
