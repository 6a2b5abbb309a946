#ifndef TSPGAP_IO_SVG_HPP
#define TSPGAP_IO_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include "tspgap/core.hpp"

namespace tspgap::io
{

struct SvgOptions {
    double width = 480.0; // drawing box, pixels
    double margin = 24.0;
    double point_radius = 3.0;
    bool labels = true;
};

namespace detail
{

inline std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v); // no "-0.000"
    return buf;
}

inline std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace detail

/// Plots the first two coordinates. Tour edges are drawn solid; fractional edges
/// solid at weight 1 and dashed below. Output depends only on the arguments.
inline std::string render_svg(const Instance& inst, const std::optional<Tour>& tour = std::nullopt,
                              const std::optional<EdgeWeightVector>& x = std::nullopt, const SvgOptions& opt = {})
{
    const int n = inst.size();
    auto coord = [&](int v, int a) { return inst.dim() > a ? inst.point(v)[static_cast<std::size_t>(a)] : 0.0; };
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (int v = 0; v < n; ++v) {
        xmin = std::min(xmin, coord(v, 0));
        xmax = std::max(xmax, coord(v, 0));
        ymin = std::min(ymin, coord(v, 1));
        ymax = std::max(ymax, coord(v, 1));
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double scale = (opt.width - 2 * opt.margin) / span;
    const double w = (xmax - xmin) * scale + 2 * opt.margin;
    const double h = (ymax - ymin) * scale + 2 * opt.margin;
    auto px = [&](int v) { return opt.margin + (coord(v, 0) - xmin) * scale; };
    auto py = [&](int v) { return h - opt.margin - (coord(v, 1) - ymin) * scale; }; // y up

    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(w) + "\" height=\"" + detail::fmt(h) +
         "\" viewBox=\"0 0 " + detail::fmt(w) + " " + detail::fmt(h) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto line = [&](int a, int b, const char* cls) {
        s += "<line class=\"" + std::string(cls) + "\" x1=\"" + detail::fmt(px(a)) + "\" y1=\"" + detail::fmt(py(a)) +
             "\" x2=\"" + detail::fmt(px(b)) + "\" y2=\"" + detail::fmt(py(b)) + "\"";
        if (std::string(cls) == "half") {
            s += " stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
        } else if (std::string(cls) == "tour") {
            s += " stroke=\"#c00000\" stroke-width=\"2\"/>\n";
        } else {
            s += " stroke=\"black\" stroke-width=\"1.5\"/>\n";
        }
    };
    if (x) {
        s += "<g id=\"fractional\">\n";
        for (const auto& [e, wgt] : x->weights()) {
            if (wgt <= kTolerance) continue;
            line(e.u, e.v, wgt >= 1.0 - kTolerance ? "full" : "half");
        }
        s += "</g>\n";
    }
    if (tour) {
        s += "<g id=\"tour\">\n";
        const auto& ord = tour->order();
        for (std::size_t k = 0; k < ord.size(); ++k) line(ord[k], ord[(k + 1) % ord.size()], "tour");
        s += "</g>\n";
    }
    s += "<g id=\"points\">\n";
    for (int v = 0; v < n; ++v) {
        s += "<circle cx=\"" + detail::fmt(px(v)) + "\" cy=\"" + detail::fmt(py(v)) + "\" r=\"" +
             detail::fmt(opt.point_radius) + "\" fill=\"black\"/>\n";
        if (opt.labels) {
            s += "<text x=\"" + detail::fmt(px(v) + 4) + "\" y=\"" + detail::fmt(py(v) - 4) +
                 "\" font-family=\"sans-serif\" font-size=\"11\">" + detail::escape_xml(inst.label(v)) + "</text>\n";
        }
    }
    s += "</g>\n</svg>\n";
    return s;
}

} // namespace tspgap::io

#endif
