#ifndef TSPGAP_CORE_HPP
#define TSPGAP_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace tspgap
{

/// Default comparison tolerance for lengths and costs.
inline constexpr double kTolerance = 1e-9;

/// Exponent of the p-norm used to measure edge lengths (p = 1 rectilinear, p = 2 Euclidean).
struct NormSpec {
    double p = 2.0;

    NormSpec() = default;
    explicit NormSpec(double exponent) : p(exponent)
    {
        if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
            throw std::invalid_argument("norm exponent must be a finite real >= 1");
        }
    }

    static NormSpec rectilinear() { return NormSpec(1.0); }
    static NormSpec euclidean() { return NormSpec(2.0); }

    [[nodiscard]] double length(std::span<const double> a, std::span<const double> b) const
    {
        if (p == 1.0) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
            return s;
        }
        if (p == 2.0) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double t = a[i] - b[i];
                s += t * t;
            }
            return std::sqrt(s);
        }
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), p);
        return std::pow(s, 1.0 / p);
    }

    friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

/// Undirected edge stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b))
    {
        if (a == b) throw std::invalid_argument("edge endpoints must differ");
        if (a < 0 || b < 0) throw std::out_of_range("negative vertex index");
    }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Points embedded in R^d together with the norm that defines all edge costs.
class Instance
{
public:
    Instance(int dim, std::vector<double> coords, NormSpec norm, std::vector<std::string> labels = {})
        : dim_(dim), coords_(std::move(coords)), norm_(norm), labels_(std::move(labels))
    {
        if (dim_ <= 0) throw std::invalid_argument("dimension must be positive");
        if (coords_.size() % static_cast<std::size_t>(dim_) != 0) {
            throw std::invalid_argument("coordinate count is not a multiple of the dimension");
        }
        for (double c : coords_) {
            if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
        }
        const int n = size();
        if (!labels_.empty()) {
            if (static_cast<int>(labels_.size()) != n) throw std::invalid_argument("label count differs from point count");
            std::unordered_set<std::string> seen;
            for (const auto& l : labels_) {
                if (!seen.insert(l).second) throw std::invalid_argument("duplicate label '" + l + "'");
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (std::equal(point(a).begin(), point(a).end(), point(b).begin())) {
                    throw std::invalid_argument("points " + std::to_string(a) + " and " + std::to_string(b) +
                                                " coincide");
                }
            }
        }
    }

    /// Convenience constructor from a list of points.
    static Instance from_points(const std::vector<std::vector<double>>& pts, NormSpec norm,
                                std::vector<std::string> labels = {})
    {
        if (pts.empty()) throw std::invalid_argument("instance needs at least one point");
        const auto d = pts.front().size();
        std::vector<double> flat;
        flat.reserve(pts.size() * d);
        for (const auto& p : pts) {
            if (p.size() != d) throw std::invalid_argument("points have mixed dimensions");
            flat.insert(flat.end(), p.begin(), p.end());
        }
        return Instance(static_cast<int>(d), std::move(flat), norm, std::move(labels));
    }

    [[nodiscard]] int size() const { return static_cast<int>(coords_.size() / static_cast<std::size_t>(dim_)); }
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] const NormSpec& norm() const { return norm_; }
    [[nodiscard]] const std::vector<double>& coords() const { return coords_; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] bool has_labels() const { return !labels_.empty(); }

    [[nodiscard]] std::span<const double> point(int i) const
    {
        return {coords_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

    [[nodiscard]] std::string label(int i) const
    {
        return labels_.empty() ? std::to_string(i) : labels_[static_cast<std::size_t>(i)];
    }

    [[nodiscard]] std::optional<int> find_label(const std::string& l) const
    {
        const auto it = std::find(labels_.begin(), labels_.end(), l);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<int>(it - labels_.begin());
    }

    /// Same labels and norm, new coordinates. Throws if any points coincide.
    [[nodiscard]] Instance with_coords(std::vector<double> coords) const
    {
        return Instance(dim_, std::move(coords), norm_, labels_);
    }

    [[nodiscard]] Instance with_norm(NormSpec norm) const { return Instance(dim_, coords_, norm, labels_); }

private:
    int dim_;
    std::vector<double> coords_;
    NormSpec norm_;
    std::vector<std::string> labels_;
};

/// Hamilton cycle stored in canonical form: starts at vertex 0 and order[1] < order[n-1].
class Tour
{
public:
    Tour() = default;

    explicit Tour(std::vector<int> order) : order_(std::move(order))
    {
        const auto n = order_.size();
        if (n < 3) throw std::invalid_argument("a tour needs at least 3 vertices");
        std::vector<char> seen(n, 0);
        for (int v : order_) {
            if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) {
                throw std::invalid_argument("tour order is not a permutation");
            }
            seen[static_cast<std::size_t>(v)] = 1;
        }
        canonicalize();
    }

    [[nodiscard]] const std::vector<int>& order() const { return order_; }
    [[nodiscard]] int size() const { return static_cast<int>(order_.size()); }

    [[nodiscard]] std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(order_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) {
            out.emplace_back(order_[i], order_[(i + 1) % order_.size()]);
        }
        return out;
    }

    /// The two tour neighbours of each vertex.
    [[nodiscard]] std::vector<std::pair<int, int>> neighbours() const
    {
        const auto n = order_.size();
        std::vector<std::pair<int, int>> nb(n);
        for (std::size_t i = 0; i < n; ++i) {
            nb[static_cast<std::size_t>(order_[i])] = {order_[(i + n - 1) % n], order_[(i + 1) % n]};
        }
        return nb;
    }

    friend auto operator<=>(const Tour&, const Tour&) = default;

private:
    void canonicalize()
    {
        const auto start = std::find(order_.begin(), order_.end(), 0);
        std::rotate(order_.begin(), start, order_.end());
        if (order_[1] > order_.back()) std::reverse(order_.begin() + 1, order_.end());
    }

    std::vector<int> order_;
};

/// Sparse fractional edge weights in [0, 1]; zero weights are not stored.
class EdgeWeightVector
{
public:
    explicit EdgeWeightVector(int n = 0) : n_(n) {}

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] const std::map<Edge, double>& weights() const { return weights_; }
    [[nodiscard]] bool empty() const { return weights_.empty(); }

    void set(int a, int b, double w)
    {
        check_vertex(a);
        check_vertex(b);
        if (!(w >= -kTolerance && w <= 1.0 + kTolerance)) {
            throw std::invalid_argument("edge weight outside [0,1]");
        }
        w = std::clamp(w, 0.0, 1.0);
        const Edge e(a, b);
        if (w == 0.0) {
            weights_.erase(e);
        } else {
            weights_[e] = w;
        }
    }

    [[nodiscard]] double get(int a, int b) const
    {
        const auto it = weights_.find(Edge(a, b));
        return it == weights_.end() ? 0.0 : it->second;
    }

    /// Every weight multiplied by alpha in [0, 1].
    [[nodiscard]] EdgeWeightVector scaled(double alpha) const
    {
        EdgeWeightVector out(n_);
        for (const auto& [e, w] : weights_) out.set(e.u, e.v, alpha * w);
        return out;
    }

    static EdgeWeightVector from_tour(const Tour& t)
    {
        EdgeWeightVector x(t.size());
        for (const auto& e : t.edges()) x.set(e.u, e.v, 1.0);
        return x;
    }

private:
    void check_vertex(int a) const
    {
        if (a < 0 || a >= n_) throw std::out_of_range("vertex index out of range");
    }

    int n_;
    std::map<Edge, double> weights_;
};

inline double distance(const Instance& inst, int a, int b)
{
    const int n = inst.size();
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::out_of_range("vertex index out of range");
    if (a == b) throw std::invalid_argument("distance needs two distinct vertices");
    return inst.norm().length(inst.point(a), inst.point(b));
}

/// Dense symmetric n x n matrix of pairwise distances, row-major.
inline std::vector<double> distance_matrix(const Instance& inst)
{
    const int n = inst.size();
    std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double v = inst.norm().length(inst.point(a), inst.point(b));
            d[static_cast<std::size_t>(a * n + b)] = v;
            d[static_cast<std::size_t>(b * n + a)] = v;
        }
    }
    return d;
}

inline double tour_length(const Instance& inst, const Tour& t)
{
    if (t.size() != inst.size()) throw std::invalid_argument("tour size differs from instance size");
    double s = 0.0;
    const auto& o = t.order();
    for (std::size_t i = 0; i < o.size(); ++i) s += distance(inst, o[i], o[(i + 1) % o.size()]);
    return s;
}

inline double fractional_cost(const Instance& inst, const EdgeWeightVector& x)
{
    if (x.size() != inst.size()) throw std::invalid_argument("weight vector size differs from instance size");
    double s = 0.0;
    for (const auto& [e, w] : x.weights()) s += w * distance(inst, e.u, e.v);
    return s;
}

inline std::vector<double> degree_vector(const EdgeWeightVector& x)
{
    std::vector<double> deg(static_cast<std::size_t>(x.size()), 0.0);
    for (const auto& [e, w] : x.weights()) {
        deg[static_cast<std::size_t>(e.u)] += w;
        deg[static_cast<std::size_t>(e.v)] += w;
    }
    return deg;
}

} // namespace tspgap

#endif
