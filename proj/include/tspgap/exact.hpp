#ifndef TSPGAP_EXACT_HPP
#define TSPGAP_EXACT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/lp/subtour.hpp"

namespace tspgap
{

inline constexpr int kHeldKarpMax = 20;
inline constexpr int kBruteForceMax = 11;

/// Raised when an exact method is asked to handle more vertices than its cap.
class SizeCapError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

enum class ExactMethod { held_karp, brute_force };

struct ExactResult {
    Tour tour;
    double length = 0.0;
    ExactMethod method = ExactMethod::held_karp;
};

namespace detail
{

/// Lengths this close count as ties; well above the round-off of a 20-term sum.
inline double tie_tolerance(double scale) { return 1e-12 * std::max(1.0, scale); }

} // namespace detail

/// Bitmask dynamic program anchored at vertex 0. Among optimal tours (up to a 1e-12
/// relative tie window) the lexicographically smallest canonical order is returned.
inline ExactResult held_karp(const Instance& inst)
{
    const int n = inst.size();
    if (n < 3) throw std::invalid_argument("held_karp needs at least 3 vertices");
    if (n > kHeldKarpMax) {
        throw SizeCapError("held_karp is capped at " + std::to_string(kHeldKarpMax) + " vertices, got " +
                           std::to_string(n));
    }
    const auto dist = distance_matrix(inst);
    auto d = [&](int a, int b) { return dist[static_cast<std::size_t>(a * n + b)]; };

    const int k = n - 1; // vertices 1..n-1 map to bits 0..k-1
    const std::size_t full = (std::size_t{1} << k) - 1;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp((full + 1) * static_cast<std::size_t>(k), inf);
    auto cell = [&](std::size_t mask, int v) -> double& { return dp[mask * static_cast<std::size_t>(k) + static_cast<std::size_t>(v)]; };

    for (int v = 0; v < k; ++v) cell(std::size_t{1} << v, v) = d(0, v + 1);
    for (std::size_t mask = 1; mask <= full; ++mask) {
        for (int v = 0; v < k; ++v) {
            if (!(mask & (std::size_t{1} << v))) continue;
            const double cur = cell(mask, v);
            if (cur == inf) continue;
            for (int w = 0; w < k; ++w) {
                const std::size_t bit = std::size_t{1} << w;
                if (mask & bit) continue;
                double& nxt = cell(mask | bit, w);
                const double cand = cur + d(v + 1, w + 1);
                if (cand < nxt) nxt = cand;
            }
        }
    }
    double opt = inf;
    for (int v = 0; v < k; ++v) opt = std::min(opt, cell(full, v) + d(v + 1, 0));
    const double tol = detail::tie_tolerance(opt);

    // Walk the DP backwards from the closing edge; reading it backwards gives the
    // tour forwards from 0, so choosing the smallest feasible vertex at each step
    // yields the lexicographically smallest optimal order.
    std::vector<int> order{0};
    std::size_t mask = full;
    int prev = -1;
    double target = opt;
    for (int step = 0; step < k; ++step) {
        int chosen = -1;
        for (int v = 0; v < k; ++v) {
            if (!(mask & (std::size_t{1} << v))) continue;
            const double link = prev < 0 ? d(v + 1, 0) : d(v + 1, prev + 1);
            if (cell(mask, v) + link <= target + tol) {
                chosen = v;
                break;
            }
        }
        if (chosen < 0) throw std::logic_error("held_karp reconstruction failed");
        order.push_back(chosen + 1);
        target = cell(mask, chosen);
        mask &= ~(std::size_t{1} << chosen);
        prev = chosen;
    }
    ExactResult res{Tour(order), 0.0, ExactMethod::held_karp};
    res.length = tour_length(inst, res.tour);
    return res;
}

/// Visits every canonical tour (vertex 0 first, second vertex smaller than the last).
template <typename Fn>
void for_each_tour(int n, Fn&& fn)
{
    std::vector<int> perm(static_cast<std::size_t>(n - 1));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<int> order(static_cast<std::size_t>(n));
    do {
        if (perm.front() > perm.back()) continue;
        order[0] = 0;
        std::copy(perm.begin(), perm.end(), order.begin() + 1);
        fn(static_cast<const std::vector<int>&>(order));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

/// Exhaustive minimum over all (n-1)!/2 tours; the first optimum in lexicographic order wins.
inline ExactResult brute_force(const Instance& inst)
{
    const int n = inst.size();
    if (n < 3) throw std::invalid_argument("brute_force needs at least 3 vertices");
    if (n > kBruteForceMax) {
        throw SizeCapError("brute_force is capped at " + std::to_string(kBruteForceMax) + " vertices, got " +
                           std::to_string(n));
    }
    const auto dist = distance_matrix(inst);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_order;
    for_each_tour(n, [&](const std::vector<int>& o) {
        double len = 0.0;
        for (int i = 0; i < n; ++i) len += dist[static_cast<std::size_t>(o[i] * n + o[(i + 1) % n])];
        if (len < best - detail::tie_tolerance(best == std::numeric_limits<double>::infinity() ? 0.0 : best)) {
            best = len;
            best_order = o;
        }
    });
    ExactResult res{Tour(best_order), 0.0, ExactMethod::brute_force};
    res.length = tour_length(inst, res.tour);
    return res;
}

/// All tours whose length is within `window` of the optimum (exhaustive, n <= 11).
inline std::vector<Tour> near_optimal_tours(const Instance& inst, double window)
{
    const int n = inst.size();
    if (n > kBruteForceMax) throw SizeCapError("tour enumeration is capped at 11 vertices");
    const auto dist = distance_matrix(inst);
    std::vector<std::pair<double, std::vector<int>>> all;
    double best = std::numeric_limits<double>::infinity();
    for_each_tour(n, [&](const std::vector<int>& o) {
        double len = 0.0;
        for (int i = 0; i < n; ++i) len += dist[static_cast<std::size_t>(o[i] * n + o[(i + 1) % n])];
        best = std::min(best, len);
        if (len <= best + window) all.emplace_back(len, o);
    });
    std::vector<Tour> out;
    for (auto& [len, o] : all) {
        if (len <= best + window) out.emplace_back(std::move(o));
    }
    return out;
}

struct RatioResult {
    ExactResult tour;
    lp::SubtourLpResult lp;
    double ratio = 0.0;
};

/// Optimal tour length over optimal subtour-LP cost, with both certificates.
inline RatioResult integrality_ratio_details(const Instance& inst)
{
    RatioResult r{held_karp(inst), lp::solve_subtour_lp(inst), 0.0};
    r.ratio = r.tour.length / r.lp.cost;
    return r;
}

inline double integrality_ratio(const Instance& inst) { return integrality_ratio_details(inst).ratio; }

} // namespace tspgap

#endif
