#ifndef TSPGAP_FAMILIES_SUBDIVIDED_HPP
#define TSPGAP_FAMILIES_SUBDIVIDED_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/exact.hpp"

namespace tspgap::families
{

/// Odd-vertex count above which the matching DP refuses to run.
inline constexpr int kMaxOddVertices = 20;

/// Straight-line planar graph whose edges are subdivided by equidistant points.
struct SubdividedGraphSpec {
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> counts; // interior points per edge
    std::vector<std::string> names; // optional base vertex names
};

class InvalidSpecError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail
{

inline double orient(const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& c)
{
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

inline bool on_segment(const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& p,
                       double eps)
{
    return std::abs(orient(a, b, p)) <= eps && std::min(a[0], b[0]) - eps <= p[0] && p[0] <= std::max(a[0], b[0]) + eps &&
           std::min(a[1], b[1]) - eps <= p[1] && p[1] <= std::max(a[1], b[1]) + eps;
}

/// True if closed segments ab and cd meet.
inline bool segments_meet(const std::array<double, 2>& a, const std::array<double, 2>& b,
                          const std::array<double, 2>& c, const std::array<double, 2>& d, double eps)
{
    const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) && ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps))) {
        return true;
    }
    return on_segment(a, b, c, eps) || on_segment(a, b, d, eps) || on_segment(c, d, a, eps) || on_segment(c, d, b, eps);
}

inline std::vector<std::vector<int>> adjacency(const SubdividedGraphSpec& s)
{
    std::vector<std::vector<int>> adj(s.vertices.size());
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        adj[static_cast<std::size_t>(s.edges[e].first)].push_back(static_cast<int>(e));
        adj[static_cast<std::size_t>(s.edges[e].second)].push_back(static_cast<int>(e));
    }
    return adj;
}

inline bool connected_without(const SubdividedGraphSpec& s, int skip_edge)
{
    const auto n = s.vertices.size();
    const auto adj = adjacency(s);
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int e : adj[static_cast<std::size_t>(v)]) {
            if (e == skip_edge) continue;
            const auto& [a, b] = s.edges[static_cast<std::size_t>(e)];
            const int w = a == v ? b : a;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

inline double edge_length(const SubdividedGraphSpec& s, std::size_t e)
{
    const auto& a = s.vertices[static_cast<std::size_t>(s.edges[e].first)];
    const auto& b = s.vertices[static_cast<std::size_t>(s.edges[e].second)];
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

} // namespace detail

/// Checks indices, counts, connectivity, absence of bridges and of crossings.
inline void validate_spec(const SubdividedGraphSpec& s)
{
    const auto n = s.vertices.size();
    if (n < 2) throw InvalidSpecError("base graph needs at least two vertices");
    if (s.counts.size() != s.edges.size()) throw InvalidSpecError("one subdivision count per edge is required");
    if (!s.names.empty() && s.names.size() != n) throw InvalidSpecError("name count differs from vertex count");
    for (const auto& v : s.vertices) {
        if (!std::isfinite(v[0]) || !std::isfinite(v[1])) throw InvalidSpecError("non-finite base coordinate");
    }
    std::map<std::pair<int, int>, int> seen;
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        auto [a, b] = s.edges[e];
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
            throw InvalidSpecError("edge endpoint out of range");
        }
        if (a == b) throw InvalidSpecError("loops are not allowed");
        if (s.counts[e] < 0) throw InvalidSpecError("subdivision counts must be non-negative");
        if (a > b) std::swap(a, b);
        if (!seen.emplace(std::make_pair(a, b), 0).second) throw InvalidSpecError("parallel edges are not allowed");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (s.vertices[a] == s.vertices[b]) throw InvalidSpecError("base vertices coincide");
        }
    }
    if (!detail::connected_without(s, -1)) throw InvalidSpecError("base graph is not connected");
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        if (!detail::connected_without(s, static_cast<int>(e))) {
            throw InvalidSpecError("base graph is not 2-edge-connected (edge " + std::to_string(e) + " is a bridge)");
        }
    }
    const double eps = 1e-12;
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        for (std::size_t f = e + 1; f < s.edges.size(); ++f) {
            const auto [a, b] = s.edges[e];
            const auto [c, d] = s.edges[f];
            const auto& A = s.vertices[static_cast<std::size_t>(a)];
            const auto& B = s.vertices[static_cast<std::size_t>(b)];
            const auto& C = s.vertices[static_cast<std::size_t>(c)];
            const auto& D = s.vertices[static_cast<std::size_t>(d)];
            const int shared = (a == c || a == d) + (b == c || b == d);
            bool bad = false;
            if (shared == 0) {
                bad = detail::segments_meet(A, B, C, D, eps);
            } else {
                // Sharing one endpoint: only collinear overlap counts as a crossing.
                const auto& other_f = (c == a || c == b) ? D : C;
                const auto& other_e = (a == c || a == d) ? B : A;
                bad = detail::on_segment(A, B, other_f, eps) || detail::on_segment(C, D, other_e, eps);
            }
            if (bad) {
                throw InvalidSpecError("base edges " + std::to_string(e) + " and " + std::to_string(f) + " cross");
            }
        }
    }
}

/// Base vertices first (in spec order), then each edge's interior points from its first endpoint.
inline Instance gen_subdivided(const SubdividedGraphSpec& s)
{
    validate_spec(s);
    std::vector<double> c;
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < s.vertices.size(); ++v) {
        c.push_back(s.vertices[v][0]);
        c.push_back(s.vertices[v][1]);
        labels.push_back(s.names.empty() ? "V" + std::to_string(v) : s.names[v]);
    }
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        const auto& A = s.vertices[static_cast<std::size_t>(s.edges[e].first)];
        const auto& B = s.vertices[static_cast<std::size_t>(s.edges[e].second)];
        const int m = s.counts[e];
        for (int t = 1; t <= m; ++t) {
            const double f = static_cast<double>(t) / (m + 1);
            c.push_back(A[0] + f * (B[0] - A[0]));
            c.push_back(A[1] + f * (B[1] - A[1]));
            labels.push_back("E" + std::to_string(e) + "_" + std::to_string(t));
        }
    }
    return Instance(2, std::move(c), NormSpec::euclidean(), std::move(labels));
}

struct TJoinBound {
    double edge_cost = 0.0; // c(E(G))
    double tjoin_cost = 0.0; // c(J)
    std::vector<int> odd_vertices;
    double ratio = 1.0;
};

/// (c(E) + c(J)) / c(E) with J a minimum T-join on the odd-degree base vertices, found as a
/// minimum perfect matching under shortest-path distances in the base graph.
inline TJoinBound tjoin_bound_details(const SubdividedGraphSpec& s)
{
    validate_spec(s);
    const auto n = s.vertices.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(n * n, inf);
    for (std::size_t v = 0; v < n; ++v) d[v * n + v] = 0.0;
    std::vector<int> deg(n, 0);
    TJoinBound r;
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
        const auto a = static_cast<std::size_t>(s.edges[e].first), b = static_cast<std::size_t>(s.edges[e].second);
        const double len = detail::edge_length(s, e);
        r.edge_cost += len;
        d[a * n + b] = std::min(d[a * n + b], len);
        d[b * n + a] = d[a * n + b];
        ++deg[a];
        ++deg[b];
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) d[a * n + b] = std::min(d[a * n + b], d[a * n + k] + d[k * n + b]);
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (deg[v] % 2 != 0) r.odd_vertices.push_back(static_cast<int>(v));
    }
    const int t = static_cast<int>(r.odd_vertices.size());
    if (t > kMaxOddVertices) {
        throw SizeCapError("T-join matching is capped at " + std::to_string(kMaxOddVertices) + " odd vertices, got " +
                           std::to_string(t));
    }
    // Matching DP: always pair the lowest unmatched odd vertex.
    const std::size_t full = (std::size_t{1} << t) - 1;
    std::vector<double> best(full + 1, inf);
    best[0] = 0.0;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (best[mask] == inf) continue;
        int lo = 0;
        while (mask & (std::size_t{1} << lo)) ++lo;
        const auto ulo = static_cast<std::size_t>(r.odd_vertices[static_cast<std::size_t>(lo)]);
        for (int w = lo + 1; w < t; ++w) {
            if (mask & (std::size_t{1} << w)) continue;
            const auto uw = static_cast<std::size_t>(r.odd_vertices[static_cast<std::size_t>(w)]);
            const std::size_t next = mask | (std::size_t{1} << lo) | (std::size_t{1} << w);
            best[next] = std::min(best[next], best[mask] + d[ulo * n + uw]);
        }
    }
    r.tjoin_cost = best[full];
    r.ratio = (r.edge_cost + r.tjoin_cost) / r.edge_cost;
    return r;
}

inline double tjoin_ratio_bound(const SubdividedGraphSpec& s) { return tjoin_bound_details(s).ratio; }

/// Unit equilateral triangle A, B, C with centre M; sides carry a points, spokes b points.
inline SubdividedGraphSpec tetrahedron_spec(int a, int b)
{
    if (a < 0 || b < 0) throw std::invalid_argument("subdivision counts must be non-negative");
    const double h = std::sqrt(3.0) / 2.0;
    SubdividedGraphSpec s;
    s.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.5, h}, {0.5, h / 3.0}};
    s.names = {"A", "B", "C", "M"};
    s.edges = {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}};
    s.counts = {a, a, a, b, b, b};
    return s;
}

inline Instance gen_tetrahedron(int a, int b) { return gen_subdivided(tetrahedron_spec(a, b)); }

/// Pointy-top hexagons of unit side; odd rows are shifted right by half a cell.
inline SubdividedGraphSpec hexagon_spec(int rows, int cols, int k)
{
    if (rows < 1 || cols < 1 || k < 0) throw std::invalid_argument("hexagon grid needs rows, cols >= 1 and k >= 0");
    const double hx = std::sqrt(3.0) / 2.0;
    // Corners in units (hx, 1/2) relative to the cell centre, counter-clockwise from the top.
    constexpr int corner[6][2] = {{0, 2}, {-1, 1}, {-1, -1}, {0, -2}, {1, -1}, {1, 1}};
    std::map<std::pair<int, int>, int> id;
    std::map<std::pair<int, int>, int> edge_id;
    SubdividedGraphSpec s;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int cx = 2 * c + (r % 2);
            const int cy = 3 * r;
            int prev = -1, first = -1;
            for (int t = 0; t < 6; ++t) {
                const std::pair<int, int> key{cx + corner[t][0], cy + corner[t][1]};
                auto it = id.find(key);
                if (it == id.end()) {
                    it = id.emplace(key, static_cast<int>(s.vertices.size())).first;
                    s.vertices.push_back({key.first * hx, key.second * 0.5});
                }
                const int v = it->second;
                if (prev >= 0) {
                    const auto e = std::minmax(prev, v);
                    if (edge_id.emplace(e, 0).second) s.edges.emplace_back(e.first, e.second);
                }
                if (first < 0) first = v;
                prev = v;
            }
            const auto e = std::minmax(prev, first);
            if (edge_id.emplace(e, 0).second) s.edges.emplace_back(e.first, e.second);
        }
    }
    s.counts.assign(s.edges.size(), k);
    return s;
}

inline Instance gen_hexagon(int rows, int cols, int k) { return gen_subdivided(hexagon_spec(rows, cols, k)); }

} // namespace tspgap::families

#endif
