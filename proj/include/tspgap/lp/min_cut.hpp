#ifndef TSPGAP_LP_MIN_CUT_HPP
#define TSPGAP_LP_MIN_CUT_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tspgap::lp
{

struct MinCutResult {
    double value = 0.0;
    std::vector<int> side; // sorted, always contains vertex 0
};

/// Global minimum cut of a dense symmetric non-negative weight matrix (Stoer-Wagner).
/// Among cuts of equal value the lexicographically smallest side containing 0 wins.
inline MinCutResult stoer_wagner(std::vector<double> w, int n)
{
    if (n < 2) throw std::invalid_argument("minimum cut needs at least two vertices");
    if (w.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("weight matrix has wrong size");
    }
    auto W = [&](int a, int b) -> double& { return w[static_cast<std::size_t>(a * n + b)]; };

    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) groups[static_cast<std::size_t>(v)] = {v};
    std::vector<int> active(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) active[static_cast<std::size_t>(v)] = v;

    MinCutResult best;
    best.value = std::numeric_limits<double>::infinity();

    auto canonical_side = [n](std::vector<int> s) {
        std::sort(s.begin(), s.end());
        if (s.empty() || s.front() != 0) {
            std::vector<char> in(static_cast<std::size_t>(n), 0);
            for (int v : s) in[static_cast<std::size_t>(v)] = 1;
            std::vector<int> comp;
            for (int v = 0; v < n; ++v) {
                if (!in[static_cast<std::size_t>(v)]) comp.push_back(v);
            }
            return comp;
        }
        return s;
    };

    while (active.size() > 1) {
        const auto m = active.size();
        std::vector<double> key(m, 0.0);
        std::vector<char> added(m, 0);
        std::size_t prev = 0;
        std::size_t last = 0;
        for (std::size_t step = 0; step < m; ++step) {
            std::size_t sel = m;
            for (std::size_t a = 0; a < m; ++a) {
                if (added[a]) continue;
                if (sel == m || key[a] > key[sel]) sel = a;
            }
            added[sel] = 1;
            prev = last;
            last = sel;
            if (step + 1 == m) break;
            for (std::size_t a = 0; a < m; ++a) {
                if (!added[a]) key[a] += W(active[sel], active[a]);
            }
        }
        const double phase_cut = key[last];
        const int s = active[prev];
        const int t = active[last];
        auto side = canonical_side(groups[static_cast<std::size_t>(t)]);
        if (phase_cut < best.value - 1e-12) {
            best.value = phase_cut;
            best.side = std::move(side);
        } else if (phase_cut <= best.value + 1e-12 && side < best.side) {
            best.value = std::min(best.value, phase_cut);
            best.side = std::move(side);
        }
        // Merge t into s.
        auto& gs = groups[static_cast<std::size_t>(s)];
        const auto& gt = groups[static_cast<std::size_t>(t)];
        gs.insert(gs.end(), gt.begin(), gt.end());
        for (int v = 0; v < n; ++v) {
            W(s, v) += W(t, v);
            W(v, s) = W(s, v);
        }
        W(s, s) = 0.0;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(last));
    }
    return best;
}

} // namespace tspgap::lp

#endif
