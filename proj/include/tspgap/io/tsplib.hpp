#ifndef TSPGAP_IO_TSPLIB_HPP
#define TSPGAP_IO_TSPLIB_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/io/native_format.hpp"

namespace tspgap::io
{

/// floor(1000 * d). The guard absorbs products such as 1000 * 0.3 landing just below an integer.
inline std::int64_t tsplib_cost(double d)
{
    const double v = 1000.0 * d;
    return static_cast<std::int64_t>(std::floor(v + 1e-9 * std::max(1.0, v)));
}

struct TsplibMatrix {
    std::string name;
    int dimension = 0;
    std::vector<std::int64_t> weights; // row-major, dimension x dimension

    [[nodiscard]] std::int64_t at(int a, int b) const
    {
        return weights[static_cast<std::size_t>(a) * static_cast<std::size_t>(dimension) + static_cast<std::size_t>(b)];
    }
};

inline TsplibMatrix tsplib_matrix(const Instance& inst, std::string name)
{
    TsplibMatrix m;
    m.name = std::move(name);
    m.dimension = inst.size();
    m.weights.reserve(static_cast<std::size_t>(m.dimension) * static_cast<std::size_t>(m.dimension));
    for (int a = 0; a < m.dimension; ++a) {
        for (int b = 0; b < m.dimension; ++b) m.weights.push_back(a == b ? 0 : tsplib_cost(distance(inst, a, b)));
    }
    return m;
}

inline std::string write_tsplib(const TsplibMatrix& m, const std::string& comment = {})
{
    std::string out = "NAME: " + m.name + "\nTYPE: TSP\n";
    if (!comment.empty()) out += "COMMENT: " + comment + "\n";
    out += "DIMENSION: " + std::to_string(m.dimension) +
           "\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n";
    for (int a = 0; a < m.dimension; ++a) {
        for (int b = 0; b < m.dimension; ++b) {
            if (b > 0) out += ' ';
            out += std::to_string(m.at(a, b));
        }
        out += '\n';
    }
    out += "EOF\n";
    return out;
}

inline std::string write_tsplib(const Instance& inst, const std::string& name, const std::string& comment = {})
{
    return write_tsplib(tsplib_matrix(inst, name), comment);
}

/// Reads the explicit FULL_MATRIX subset written above.
inline TsplibMatrix read_tsplib(std::string_view text)
{
    TsplibMatrix m;
    std::string type, wtype, wformat;
    std::size_t no = 0, pos = 0;
    bool in_section = false;
    std::size_t section_line = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++no;
        std::string_view l = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        const auto tok = detail::split_ws(l);
        if (tok.empty()) continue;
        if (tok[0] == "EOF") break;
        if (in_section) {
            for (auto t : tok) m.weights.push_back(detail::parse_number<std::int64_t>(t, no, "edge weight"));
            continue;
        }
        if (tok[0] == "EDGE_WEIGHT_SECTION") {
            if (m.dimension <= 0) throw ParseError(no, "EDGE_WEIGHT_SECTION before DIMENSION");
            in_section = true;
            section_line = no;
            continue;
        }
        const auto colon = l.find(':');
        if (colon == std::string_view::npos) throw ParseError(no, "expected 'KEY: value'");
        auto trim = [](std::string_view s) {
            const auto a = s.find_first_not_of(" \t");
            if (a == std::string_view::npos) return std::string_view{};
            const auto b = s.find_last_not_of(" \t");
            return s.substr(a, b - a + 1);
        };
        const auto key = trim(l.substr(0, colon));
        const auto val = trim(l.substr(colon + 1));
        if (key == "NAME") m.name = std::string(val);
        else if (key == "TYPE") type = std::string(val);
        else if (key == "DIMENSION") m.dimension = detail::parse_number<int>(val, no, "dimension");
        else if (key == "EDGE_WEIGHT_TYPE") wtype = std::string(val);
        else if (key == "EDGE_WEIGHT_FORMAT") wformat = std::string(val);
        else if (key == "COMMENT") continue;
        else throw ParseError(no, "unsupported key '" + std::string(key) + "'");
    }
    if (type != "TSP") throw ParseError(no, "TYPE must be TSP");
    if (wtype != "EXPLICIT" || wformat != "FULL_MATRIX") throw ParseError(no, "only EXPLICIT FULL_MATRIX weights are supported");
    if (!in_section) throw ParseError(no, "missing EDGE_WEIGHT_SECTION");
    const auto want = static_cast<std::size_t>(m.dimension) * static_cast<std::size_t>(m.dimension);
    if (m.weights.size() != want) {
        throw ParseError(section_line, "expected " + std::to_string(want) + " weights, found " + std::to_string(m.weights.size()));
    }
    return m;
}

} // namespace tspgap::io

#endif
