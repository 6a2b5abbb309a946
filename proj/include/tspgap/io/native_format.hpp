#ifndef TSPGAP_IO_NATIVE_FORMAT_HPP
#define TSPGAP_IO_NATIVE_FORMAT_HPP

#include <charconv>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tspgap/core.hpp"

// Text layout:
//   tspgap-instance v1
//   n <n> d <d> p <p>
//   <label> <c_1> ... <c_d>     (n lines)
// Blank lines and lines starting with '#' are ignored. Numbers use the shortest
// round-trip decimal form, so write then read is bit-exact.

namespace tspgap::io
{

inline constexpr std::string_view kNativeMagic = "tspgap-instance v1";

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

inline std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string write_native(const Instance& inst)
{
    std::string out(kNativeMagic);
    out += "\nn " + std::to_string(inst.size()) + " d " + std::to_string(inst.dim()) + " p " +
           format_double(inst.norm().p) + "\n";
    for (int v = 0; v < inst.size(); ++v) {
        out += inst.label(v);
        for (double c : inst.point(v)) {
            out += ' ';
            out += format_double(c);
        }
        out += '\n';
    }
    return out;
}

namespace detail
{

inline std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t k = 0;
    while (k < s.size()) {
        while (k < s.size() && (s[k] == ' ' || s[k] == '\t' || s[k] == '\r')) ++k;
        const std::size_t start = k;
        while (k < s.size() && s[k] != ' ' && s[k] != '\t' && s[k] != '\r') ++k;
        if (k > start) out.push_back(s.substr(start, k - start));
    }
    return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what)
{
    T v{};
    const auto* end = tok.data() + tok.size();
    const auto r = std::from_chars(tok.data(), end, v);
    if (r.ec != std::errc{} || r.ptr != end) {
        throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    }
    return v;
}

} // namespace detail

/// Labels equal to the vertex index are treated as "no labels".
inline Instance read_native(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++no;
        auto l = text.substr(pos, nl - pos);
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        const auto first = l.find_first_not_of(" \t");
        if (first != std::string_view::npos && l[first] != '#') lines.emplace_back(no, l);
        pos = nl + 1;
    }
    if (lines.empty()) throw ParseError(1, "empty input");
    if (detail::split_ws(lines[0].second) != std::vector<std::string_view>{"tspgap-instance", "v1"}) {
        throw ParseError(lines[0].first, "missing 'tspgap-instance v1' header");
    }
    if (lines.size() < 2) throw ParseError(lines[0].first, "missing size line");
    const auto hdr = detail::split_ws(lines[1].second);
    const std::size_t hl = lines[1].first;
    if (hdr.size() != 6 || hdr[0] != "n" || hdr[2] != "d" || hdr[4] != "p") {
        throw ParseError(hl, "expected 'n <n> d <d> p <p>'");
    }
    const int n = detail::parse_number<int>(hdr[1], hl, "point count");
    const int d = detail::parse_number<int>(hdr[3], hl, "dimension");
    const double p = detail::parse_number<double>(hdr[5], hl, "norm exponent");
    if (n <= 0) throw ParseError(hl, "point count must be positive");
    if (d <= 0) throw ParseError(hl, "dimension must be positive");
    if (lines.size() - 2 != static_cast<std::size_t>(n)) {
        throw ParseError(lines.back().first, "expected " + std::to_string(n) + " point lines, found " +
                                                 std::to_string(lines.size() - 2));
    }
    std::vector<double> coords;
    std::vector<std::string> labels;
    bool trivial = true;
    for (int v = 0; v < n; ++v) {
        const auto& [ln, l] = lines[static_cast<std::size_t>(v) + 2];
        const auto tok = detail::split_ws(l);
        if (tok.size() != static_cast<std::size_t>(d) + 1) {
            throw ParseError(ln, "expected a label and " + std::to_string(d) + " coordinates");
        }
        labels.emplace_back(tok[0]);
        if (labels.back() != std::to_string(v)) trivial = false;
        for (int a = 1; a <= d; ++a) coords.push_back(detail::parse_number<double>(tok[static_cast<std::size_t>(a)], ln, "coordinate"));
    }
    if (trivial) labels.clear();
    try {
        return Instance(d, std::move(coords), NormSpec(p), std::move(labels));
    } catch (const std::invalid_argument& e) {
        throw ParseError(hl, e.what());
    }
}

} // namespace tspgap::io

#endif
