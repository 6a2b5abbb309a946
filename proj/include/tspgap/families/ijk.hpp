#ifndef TSPGAP_FAMILIES_IJK_HPP
#define TSPGAP_FAMILIES_IJK_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tspgap/core.hpp"

namespace tspgap::families
{

/// Lengths of the three vertex lines: X has i+2 vertices, Y has j+2, Z has k+2.
struct IJK {
    int i = 0;
    int j = 0;
    int k = 0;

    IJK() = default;
    IJK(int i_, int j_, int k_) : i(i_), j(j_), k(k_)
    {
        if (i < 0 || j < 0 || k < 0) throw std::invalid_argument("i, j, k must be non-negative");
    }

    [[nodiscard]] int n() const { return i + j + k + 6; }

    friend auto operator<=>(const IJK&, const IJK&) = default;
};

enum class Line { X, Y, Z };

inline char line_char(Line l) { return l == Line::X ? 'X' : (l == Line::Y ? 'Y' : 'Z'); }

/// Index map X0..X_{i+1}, Y0..Y_{j+1}, Z0..Z_{k+1} -> 0..n-1 in that order.
class LabeledVertexSet
{
public:
    explicit LabeledVertexSet(IJK p) : p_(p) {}

    [[nodiscard]] const IJK& params() const { return p_; }
    [[nodiscard]] int size() const { return p_.n(); }

    /// Index of the last vertex on a line (i+1, j+1 or k+1).
    [[nodiscard]] int last(Line l) const
    {
        switch (l) {
        case Line::X: return p_.i + 1;
        case Line::Y: return p_.j + 1;
        case Line::Z: return p_.k + 1;
        }
        return 0;
    }

    [[nodiscard]] int index(Line l, int s) const
    {
        if (s < 0 || s > last(l)) throw std::out_of_range("position outside the line");
        switch (l) {
        case Line::X: return s;
        case Line::Y: return p_.i + 2 + s;
        case Line::Z: return p_.i + p_.j + 4 + s;
        }
        return 0;
    }

    [[nodiscard]] int X(int s) const { return index(Line::X, s); }
    [[nodiscard]] int Y(int s) const { return index(Line::Y, s); }
    [[nodiscard]] int Z(int s) const { return index(Line::Z, s); }

    [[nodiscard]] std::pair<Line, int> locate(int v) const
    {
        if (v < 0 || v >= size()) throw std::out_of_range("vertex index out of range");
        if (v <= p_.i + 1) return {Line::X, v};
        if (v <= p_.i + p_.j + 3) return {Line::Y, v - (p_.i + 2)};
        return {Line::Z, v - (p_.i + p_.j + 4)};
    }

    [[nodiscard]] std::string label(int v) const
    {
        const auto [l, s] = locate(v);
        return std::string(1, line_char(l)) + std::to_string(s);
    }

    [[nodiscard]] std::vector<std::string> labels() const
    {
        std::vector<std::string> out;
        for (int v = 0; v < size(); ++v) out.push_back(label(v));
        return out;
    }

private:
    IJK p_;
};

/// The fractional tour x_{i,j,k}: unit weight along each line, two half-weight triangles at the ends.
inline EdgeWeightVector fractional_xijk(IJK p)
{
    const LabeledVertexSet V(p);
    EdgeWeightVector x(V.size());
    for (Line l : {Line::X, Line::Y, Line::Z}) {
        for (int s = 0; s < V.last(l); ++s) x.set(V.index(l, s), V.index(l, s + 1), 1.0);
    }
    x.set(V.X(0), V.Y(0), 0.5);
    x.set(V.X(0), V.Z(0), 0.5);
    x.set(V.Y(0), V.Z(0), 0.5);
    const int xi = V.last(Line::X), yj = V.last(Line::Y), zk = V.last(Line::Z);
    x.set(V.X(xi), V.Y(yj), 0.5);
    x.set(V.X(xi), V.Z(zk), 0.5);
    x.set(V.Y(yj), V.Z(zk), 0.5);
    return x;
}

/// b1 (depends on k) and b2 (depends on i) of the planar family.
inline double i2_b1(IJK p)
{
    const double r = (p.j + 1.0) / (p.j + 3.0);
    return 0.5 + r * (1.0 / (p.k + 1) - 0.5);
}

inline double i2_b2(IJK p)
{
    const double r = (p.j + 1.0) / (p.j + 3.0);
    return 0.5 + r * (1.0 / (p.i + 1) - 0.5);
}

/// Planar rectilinear instance. X on y = 0, Z on y = b1 + b2 and the inner line Y at
/// height b2, so that its distance to the X line is b2 and to the Z line is b1.
inline Instance gen_I2(IJK p)
{
    const LabeledVertexSet V(p);
    const double r = (p.j + 1.0) / (p.j + 3.0);
    const double off = 1.0 / (p.j + 3.0);
    const double b1 = i2_b1(p), b2 = i2_b2(p), h = b1 + b2;
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(2 * V.size()));
    auto push = [&](double x, double y) {
        c.push_back(x);
        c.push_back(y);
    };
    for (int s = 0; s <= p.i + 1; ++s) {
        push(s == 0 ? 0.0 : (s == p.i + 1 ? 1.0 : s * r / (p.i + 1) + off), 0.0);
    }
    for (int s = 0; s <= p.j + 1; ++s) push((s + 1) * off, b2);
    for (int s = 0; s <= p.k + 1; ++s) {
        push(s == 0 ? 0.0 : (s == p.k + 1 ? 1.0 : s * r / (p.k + 1) + off), h);
    }
    return Instance(2, std::move(c), NormSpec::rectilinear(), V.labels());
}

/// Three parallel equidistant lines forming a prism in R^3 under the 1-norm.
inline Instance gen_I3(IJK p)
{
    const LabeledVertexSet V(p);
    const double ai = 1.0 / (p.i + 1), aj = 1.0 / (p.j + 1), ak = 1.0 / (p.k + 1);
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(3 * V.size()));
    auto push = [&](double x, double y, double z) {
        c.push_back(x);
        c.push_back(y);
        c.push_back(z);
    };
    for (int s = 0; s <= p.i + 1; ++s) push(0.0, 0.0, s * ai);
    for (int s = 0; s <= p.j + 1; ++s) push(ai + aj, 0.0, s * aj);
    for (int s = 0; s <= p.k + 1; ++s) push(ai, ak, s * ak);
    return Instance(3, std::move(c), NormSpec::rectilinear(), V.labels());
}

inline double closed_form_opt_I2(IJK p) { return 4.0 + 2.0 * i2_b1(p) + 2.0 * i2_b2(p) - 2.0 / (p.j + 3); }

inline double closed_form_lp_I2(IJK p) { return 3.0 + 2.0 * i2_b1(p) + 2.0 * i2_b2(p); }

inline double closed_form_ratio_I2(IJK p)
{
    return 1.0 + 1.0 / (3.0 + 2.0 * (5.0 / (p.j + 1) + 1.0 / (p.k + 1) + 1.0 / (p.i + 1)));
}

inline double metric_sum(IJK p) { return 1.0 / (p.i + 1) + 1.0 / (p.j + 1) + 1.0 / (p.k + 1); }

/// Lower bound on every tour of I3 (attained at the sizes this library can certify).
inline double closed_form_opt_I3(IJK p) { return 4.0 + 2.0 * metric_sum(p); }

inline double closed_form_lp_I3(IJK p) { return 3.0 + 2.0 * metric_sum(p); }

inline double closed_form_ratio_metric(IJK p) { return 1.0 + 1.0 / (3.0 + 2.0 * metric_sum(p)); }

enum class Family { rectilinear, metric };

namespace detail
{

/// Exact rational a/b with positive denominator; only used for comparisons.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

inline Rational make_rational(std::int64_t a, std::int64_t b)
{
    const auto g = std::gcd(a, b);
    return {a / g, b / g};
}

inline Rational add(Rational a, Rational b)
{
    const auto g = std::gcd(a.den, b.den);
    return make_rational(a.num * (b.den / g) + b.num * (a.den / g), a.den / g * b.den);
}

__extension__ using Wide = __int128;

inline bool less(Rational a, Rational b)
{
    return static_cast<Wide>(a.num) * b.den < static_cast<Wide>(b.num) * a.den;
}

/// The sum in the ratio's denominator; the ratio is decreasing in it.
inline Rational penalty(Family f, IJK p)
{
    const std::int64_t wj = f == Family::rectilinear ? 5 : 1;
    Rational s = make_rational(1, p.i + 1);
    s = add(s, make_rational(wj, p.j + 1));
    s = add(s, make_rational(1, p.k + 1));
    return s;
}

} // namespace detail

/// Triple with i+j+k = n-6 maximising the family's closed-form ratio; ties keep the
/// lexicographically smallest triple. Comparison is exact.
inline IJK best_partition(int n, Family f)
{
    if (n < 6) throw std::invalid_argument("best_partition needs n >= 6");
    const int m = n - 6;
    IJK best(0, 0, m);
    bool have = false;
    detail::Rational best_pen;
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; i + j <= m; ++j) {
            const IJK p(i, j, m - i - j);
            const auto pen = detail::penalty(f, p);
            if (!have || detail::less(pen, best_pen)) {
                best = p;
                best_pen = pen;
                have = true;
            }
        }
    }
    return best;
}

inline double closed_form_ratio(IJK p, Family f)
{
    return f == Family::rectilinear ? closed_form_ratio_I2(p) : closed_form_ratio_metric(p);
}

/// Best metric ratio for n points, by residue of n mod 3.
inline double metric_ratio_by_residue(int n)
{
    if (n < 6) throw std::invalid_argument("n must be at least 6");
    switch (n % 3) {
    case 0: return 1.0 + 1.0 / (3.0 + 18.0 / (n - 3));
    case 1: return 1.0 + 1.0 / (3.0 + 2.0 * (6.0 / (n - 4) + 3.0 / (n - 1)));
    default: return 1.0 + 1.0 / (3.0 + 2.0 * (3.0 / (n - 5) + 6.0 / (n - 2)));
    }
}

} // namespace tspgap::families

#endif
