#ifndef TSPGAP_FAMILIES_PSEUDO_TOUR_HPP
#define TSPGAP_FAMILIES_PSEUDO_TOUR_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/families/ijk.hpp"

namespace tspgap::families
{

/// up/mid/down are the indexed families doubling the Z, Y and X line; the six
/// directional tours double a whole line and differ in their connectors.
enum class PseudoTourKind { up, mid, down, nw, ne, left, right, sw, se };

inline const char* kind_name(PseudoTourKind k)
{
    switch (k) {
    case PseudoTourKind::up: return "up";
    case PseudoTourKind::mid: return "mid";
    case PseudoTourKind::down: return "down";
    case PseudoTourKind::nw: return "nw";
    case PseudoTourKind::ne: return "ne";
    case PseudoTourKind::left: return "left";
    case PseudoTourKind::right: return "right";
    case PseudoTourKind::sw: return "sw";
    case PseudoTourKind::se: return "se";
    }
    return "?";
}

/// Closed walk given as an edge multiset with multiplicities 1 or 2.
struct PseudoTour {
    PseudoTourKind kind = PseudoTourKind::up;
    int index = -1; // member index for up/mid/down, -1 otherwise
    int n = 0;
    std::map<Edge, int> edges;

    [[nodiscard]] std::string tag() const
    {
        std::string t = kind_name(kind);
        if (index >= 0) t += "_" + std::to_string(index);
        return t;
    }

    void add(int a, int b, int mult = 1)
    {
        const Edge e(a, b);
        edges[e] += mult;
    }

    [[nodiscard]] std::vector<int> degrees() const
    {
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (const auto& [e, m] : edges) {
            deg[static_cast<std::size_t>(e.u)] += m;
            deg[static_cast<std::size_t>(e.v)] += m;
        }
        return deg;
    }

    /// Sum of multiplicity times edge length.
    [[nodiscard]] double length(const Instance& inst) const
    {
        double s = 0.0;
        for (const auto& [e, m] : edges) s += m * distance(inst, e.u, e.v);
        return s;
    }
};

namespace detail
{

inline bool multiset_connected(int n, const std::map<Edge, int>& edges)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [e, m] : edges) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

/// Builds one pseudo-tour whose doubled line is L, with M and N the other two lines.
/// `skip` is the omitted L edge for indexed members, -1 for directional ones.
/// Connector pattern: 0 = both ends of L, 1 = L start plus M/N ends, 2 = L end plus M/N starts.
inline PseudoTour build_pseudo_tour(const LabeledVertexSet& V, Line L, Line M, Line N, int skip, int pattern,
                                    PseudoTourKind kind)
{
    PseudoTour t;
    t.kind = kind;
    t.index = pattern == 0 ? skip : -1;
    t.n = V.size();
    for (int s = 0; s < V.last(L); ++s) {
        if (s != skip) t.add(V.index(L, s), V.index(L, s + 1), 2);
    }
    for (Line other : {M, N}) {
        for (int s = 0; s < V.last(other); ++s) t.add(V.index(other, s), V.index(other, s + 1));
    }
    const int l0 = V.index(L, 0), le = V.index(L, V.last(L));
    const int m0 = V.index(M, 0), me = V.index(M, V.last(M));
    const int n0 = V.index(N, 0), ne = V.index(N, V.last(N));
    if (pattern == 0 || pattern == 1) {
        t.add(l0, m0);
        t.add(l0, n0);
    }
    if (pattern == 0 || pattern == 2) {
        t.add(le, me);
        t.add(le, ne);
    }
    if (pattern == 1) t.add(me, ne);
    if (pattern == 2) t.add(m0, n0);
    return t;
}

} // namespace detail

/// Throws if some vertex has odd or zero degree or the multiset is disconnected.
inline void validate_pseudo_tour(const PseudoTour& t)
{
    for (const auto& [e, m] : t.edges) {
        if (e.v >= t.n) throw std::invalid_argument("pseudo-tour edge outside the vertex set");
        if (m < 1 || m > 2) throw std::invalid_argument("pseudo-tour multiplicity must be 1 or 2");
    }
    for (int d : t.degrees()) {
        if (d < 2 || d % 2 != 0) throw std::invalid_argument("pseudo-tour has a vertex of odd or zero degree");
    }
    if (!detail::multiset_connected(t.n, t.edges)) throw std::invalid_argument("pseudo-tour multiset is disconnected");
}

/// All (k+1)+(j+1)+(i+1)+6 pseudo-tours in the order up_0..k, mid_0..j, down_0..i, nw, ne, left, right, sw, se.
inline std::vector<PseudoTour> pseudo_tours(IJK p)
{
    const LabeledVertexSet V(p);
    std::vector<PseudoTour> out;
    for (int l = 0; l <= p.k; ++l) {
        out.push_back(detail::build_pseudo_tour(V, Line::Z, Line::Y, Line::X, l, 0, PseudoTourKind::up));
    }
    for (int l = 0; l <= p.j; ++l) {
        out.push_back(detail::build_pseudo_tour(V, Line::Y, Line::Z, Line::X, l, 0, PseudoTourKind::mid));
    }
    for (int l = 0; l <= p.i; ++l) {
        out.push_back(detail::build_pseudo_tour(V, Line::X, Line::Z, Line::Y, l, 0, PseudoTourKind::down));
    }
    out.push_back(detail::build_pseudo_tour(V, Line::Z, Line::Y, Line::X, -1, 1, PseudoTourKind::nw));
    out.push_back(detail::build_pseudo_tour(V, Line::Z, Line::Y, Line::X, -1, 2, PseudoTourKind::ne));
    out.push_back(detail::build_pseudo_tour(V, Line::Y, Line::Z, Line::X, -1, 1, PseudoTourKind::left));
    out.push_back(detail::build_pseudo_tour(V, Line::Y, Line::Z, Line::X, -1, 2, PseudoTourKind::right));
    out.push_back(detail::build_pseudo_tour(V, Line::X, Line::Z, Line::Y, -1, 1, PseudoTourKind::sw));
    out.push_back(detail::build_pseudo_tour(V, Line::X, Line::Z, Line::Y, -1, 2, PseudoTourKind::se));
    return out;
}

namespace detail
{

/// Doubled path hanging off the single-edge cycle: anchor on the cycle, then path[0..m-1]
/// with path.back() the tip.
struct Excursion {
    int anchor = 0;
    std::vector<int> path;
};

/// Single-edge cycle order plus excursions, when the multiset has that shape.
struct CycleWithExcursions {
    std::vector<int> cycle;
    std::vector<Excursion> excursions;
};

inline std::optional<CycleWithExcursions> decompose(const PseudoTour& t)
{
    const int n = t.n;
    std::vector<std::vector<int>> single(static_cast<std::size_t>(n)), twice(static_cast<std::size_t>(n));
    for (const auto& [e, m] : t.edges) {
        auto& bucket = m == 1 ? single : twice;
        bucket[static_cast<std::size_t>(e.u)].push_back(e.v);
        bucket[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    int start = -1;
    for (int v = 0; v < n; ++v) {
        const auto d = single[static_cast<std::size_t>(v)].size();
        if (d != 0 && d != 2) return std::nullopt;
        if (d == 2 && start < 0) start = v;
    }
    if (start < 0) return std::nullopt;

    CycleWithExcursions out;
    std::vector<char> on_cycle(static_cast<std::size_t>(n), 0);
    int prev = -1, cur = start;
    do {
        out.cycle.push_back(cur);
        on_cycle[static_cast<std::size_t>(cur)] = 1;
        const auto& nb = single[static_cast<std::size_t>(cur)];
        const int nxt = nb[0] != prev ? nb[0] : nb[1];
        prev = cur;
        cur = nxt;
    } while (cur != start && out.cycle.size() <= static_cast<std::size_t>(n));
    if (cur != start) return std::nullopt;

    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int a : out.cycle) {
        const auto& nb = twice[static_cast<std::size_t>(a)];
        if (nb.size() > 1) return std::nullopt;
        if (nb.empty()) continue;
        Excursion ex;
        ex.anchor = a;
        int p = a, c = nb[0];
        for (;;) {
            if (on_cycle[static_cast<std::size_t>(c)] || used[static_cast<std::size_t>(c)]) return std::nullopt;
            used[static_cast<std::size_t>(c)] = 1;
            ex.path.push_back(c);
            const auto& cn = twice[static_cast<std::size_t>(c)];
            if (cn.size() == 1) break;
            if (cn.size() != 2) return std::nullopt;
            const int nx = cn[0] != p ? cn[0] : cn[1];
            p = c;
            c = nx;
        }
        out.excursions.push_back(std::move(ex));
    }
    std::size_t covered = out.cycle.size();
    for (const auto& ex : out.excursions) covered += ex.path.size();
    if (covered != static_cast<std::size_t>(n)) return std::nullopt;
    return out;
}

/// Eulerian walk from vertex 0 (smallest neighbour first), keeping first occurrences.
inline Tour first_occurrence_shortcut(const PseudoTour& t)
{
    std::map<Edge, int> left = t.edges;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.n));
    for (const auto& [e, m] : t.edges) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    std::vector<int> stack{0}, circuit;
    while (!stack.empty()) {
        const int v = stack.back();
        bool moved = false;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            auto it = left.find(Edge(v, w));
            if (it != left.end() && it->second > 0) {
                --it->second;
                stack.push_back(w);
                moved = true;
                break;
            }
        }
        if (!moved) {
            circuit.push_back(v);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    std::vector<char> seen(static_cast<std::size_t>(t.n), 0);
    std::vector<int> order;
    for (int v : circuit) {
        if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            order.push_back(v);
        }
    }
    return Tour(order);
}

} // namespace detail

/// Shortest shortcut of a pseudo-tour made of one single-edge cycle with doubled paths
/// hanging off it. Each path of m vertices is traversed out and back; the shortcut keeps
/// a prefix on the way out and the rest on the way back (m splits) and places the anchor
/// before or after it. The shortest combination wins; ties go to the shorter Euclidean
/// drawing, then to the smaller canonical order. Other shapes fall back to a first-occurrence shortcut of an Eulerian walk.
inline Tour shortcut_tour(const PseudoTour& pt, const Instance& inst)
{
    validate_pseudo_tour(pt);
    if (pt.n != inst.size()) throw std::invalid_argument("pseudo-tour and instance sizes differ");
    const auto shape = detail::decompose(pt);
    if (!shape) return detail::first_occurrence_shortcut(pt);

    const auto& exc = shape->excursions;
    std::vector<int> anchor_of(static_cast<std::size_t>(pt.n), -1);
    for (std::size_t e = 0; e < exc.size(); ++e) anchor_of[static_cast<std::size_t>(exc[e].anchor)] = static_cast<int>(e);

    // Option o for a path of length m: split t = o / 2, anchor before if o is even.
    std::vector<std::size_t> choice(exc.size(), 0);
    auto build = [&]() {
        std::vector<int> order;
        for (int v : shape->cycle) {
            const int e = anchor_of[static_cast<std::size_t>(v)];
            if (e < 0) {
                order.push_back(v);
                continue;
            }
            const auto& path = exc[static_cast<std::size_t>(e)].path;
            const auto m = path.size();
            const auto o = choice[static_cast<std::size_t>(e)];
            const auto split = o / 2;
            const bool before = o % 2 == 0;
            if (before) order.push_back(v);
            for (std::size_t s = 0; s < split; ++s) order.push_back(path[s]);
            for (std::size_t s = m; s-- > split;) order.push_back(path[s]);
            if (!before) order.push_back(v);
        }
        return Tour(order);
    };

    // Among equal lengths the shorter Euclidean drawing wins; it avoids backtracking
    // along a line, which the rectilinear length cannot see.
    const Instance drawn = inst.norm() == NormSpec::euclidean() ? inst : inst.with_norm(NormSpec::euclidean());
    std::optional<Tour> best;
    double best_len = std::numeric_limits<double>::infinity();
    double best_drawn = best_len;
    for (;;) {
        Tour t = build();
        const double len = tour_length(inst, t);
        const double dlen = tour_length(drawn, t);
        const double tol = kTolerance * std::max(1.0, std::abs(len));
        const double dtol = kTolerance * std::max(1.0, std::abs(dlen));
        bool better = !best || len < best_len - tol;
        if (!better && len <= best_len + tol) {
            better = dlen < best_drawn - dtol || (dlen <= best_drawn + dtol && t < *best);
        }
        if (better) {
            best_len = len;
            best_drawn = dlen;
            best = std::move(t);
        }
        std::size_t e = 0;
        for (; e < exc.size(); ++e) {
            if (++choice[e] < 2 * exc[e].path.size()) break;
            choice[e] = 0;
        }
        if (e == exc.size()) break;
    }
    return *best;
}

} // namespace tspgap::families

#endif
