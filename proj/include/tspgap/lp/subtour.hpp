#ifndef TSPGAP_LP_SUBTOUR_HPP
#define TSPGAP_LP_SUBTOUR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/lp/min_cut.hpp"
#include "tspgap/lp/simplex.hpp"

namespace tspgap::lp
{

/// Cuts below 2 - kViolation are reported as violated subtour constraints.
inline constexpr double kViolation = 1e-7;

/// Vertex subset S with its x(delta(S)) value at separation time.
struct Cut {
    std::vector<int> subset;
    double cut_value = 0.0;
};

struct SubtourLpResult {
    EdgeWeightVector x;
    double cost = 0.0;
    std::vector<Cut> cuts;
    double final_min_cut = 0.0;
    std::size_t rounds = 0;
};

/// Minimum cut of the support graph of x, whatever its value.
inline MinCutResult support_min_cut(const EdgeWeightVector& x)
{
    const int n = x.size();
    std::vector<double> w(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (const auto& [e, v] : x.weights()) {
        w[static_cast<std::size_t>(e.u * n + e.v)] = v;
        w[static_cast<std::size_t>(e.v * n + e.u)] = v;
    }
    return stoer_wagner(std::move(w), n);
}

/// Most violated subtour elimination constraint of x, if any cut has value below 2 - 1e-7.
inline std::optional<Cut> separate_subtour(const EdgeWeightVector& x)
{
    if (x.size() < 2) return std::nullopt;
    auto mc = support_min_cut(x);
    if (mc.value < 2.0 - kViolation) return Cut{std::move(mc.side), mc.value};
    return std::nullopt;
}

/// Solves the subtour LP by cutting planes: degree equalities and [0,1] bounds first,
/// then one most violated cut per round until separation finds none.
inline SubtourLpResult solve_subtour_lp(const Instance& inst)
{
    const int n = inst.size();
    if (n < 3) throw std::invalid_argument("subtour LP needs at least 3 vertices");
    const auto dist = distance_matrix(inst);

    std::vector<Edge> edges;
    LinearProgram lp;
    lp.sense = Sense::minimize;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
            lp.add_variable(dist[static_cast<std::size_t>(u * n + v)], 0.0, 1.0);
        }
    }
    const auto m = edges.size();
    for (int v = 0; v < n; ++v) {
        std::vector<double> row(m, 0.0);
        for (std::size_t e = 0; e < m; ++e) {
            if (edges[e].u == v || edges[e].v == v) row[e] = 1.0;
        }
        lp.add_row(std::move(row), Relation::equal, 2.0);
    }

    SubtourLpResult res;
    for (;;) {
        ++res.rounds;
        const auto sol = solve_lp(lp);
        if (sol.status != LpStatus::optimal) throw NumericalError("subtour LP relaxation not optimal");
        EdgeWeightVector x(n);
        for (std::size_t e = 0; e < m; ++e) {
            const double v = sol.values[e];
            if (v > 1e-12) x.set(edges[e].u, edges[e].v, v);
        }
        const auto mc = support_min_cut(x);
        if (mc.value >= 2.0 - kViolation) {
            res.x = std::move(x);
            res.cost = fractional_cost(inst, res.x);
            res.final_min_cut = mc.value;
            return res;
        }
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (int v : mc.side) in[static_cast<std::size_t>(v)] = 1;
        std::vector<double> row(m, 0.0);
        for (std::size_t e = 0; e < m; ++e) {
            if (in[static_cast<std::size_t>(edges[e].u)] != in[static_cast<std::size_t>(edges[e].v)]) row[e] = 1.0;
        }
        lp.add_row(std::move(row), Relation::greater_equal, 2.0);
        res.cuts.push_back(Cut{mc.side, mc.value});
        if (res.cuts.size() > static_cast<std::size_t>(10 * n * n)) {
            throw NumericalError("cutting-plane loop did not converge");
        }
    }
}

} // namespace tspgap::lp

#endif
