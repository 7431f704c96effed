#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nsplit/catalog.hpp"
#include "nsplit/study.hpp"

namespace nsplit {

enum class ChartKind { convergence, work_precision };

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string tick_label(int decade) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "1e%d", decade);
    return buf;
}

}  // namespace detail

/// Deterministic log-log SVG chart of a study: one polyline per method plus
/// dashed reference-slope guides for the design orders present. Convergence
/// charts plot error against dt; work-precision charts plot error against
/// total RHS evaluations.
inline std::string emit_svg(const StudyResult& result, ChartKind kind) {
    struct Series {
        std::string method;
        std::vector<double> x, y;
    };
    std::vector<Series> series;
    for (const StudyRow& row : result.rows) {
        if (!std::isfinite(row.error) || row.error <= 0.0) continue;
        const double x = kind == ChartKind::convergence ? row.dt : static_cast<double>(row.rhs_evals_total);
        auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.method == row.method; });
        if (it == series.end()) {
            series.push_back({row.method, {}, {}});
            it = series.end() - 1;
        }
        it->x.push_back(x);
        it->y.push_back(row.error);
    }
    if (series.empty()) throw std::invalid_argument("emit_svg: no plottable rows");
    for (const Series& s : series)
        if (s.x.size() < 2)
            throw std::invalid_argument("emit_svg: method '" + s.method + "' has fewer than two plottable rows");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    const double lx0 = std::log10(xmin) - 0.15, lx1 = std::log10(xmax) + 0.15;
    const double ly0 = std::log10(ymin) - 0.35, ly1 = std::log10(ymax) + 0.15;

    const double width = 760, height = 540;
    const double left = 80, right = width - 170, top = 24, bottom = height - 56;
    const auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * (right - left); };
    const auto py = [&](double y) { return bottom - (std::log10(y) - ly0) / (ly1 - ly0) * (bottom - top); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
    const char* xlabel = kind == ChartKind::convergence ? "dt" : "RHS evaluations";

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fmt(width) +
           "\" height=\"" + detail::fmt(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + detail::fmt(left) + "\" y=\"" + detail::fmt(top) + "\" width=\"" + detail::fmt(right - left) +
           "\" height=\"" + detail::fmt(bottom - top) + "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // decade grid + tick labels
    for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
        const double x = px(std::pow(10.0, d));
        svg += "<line x1=\"" + detail::fmt(x) + "\" y1=\"" + detail::fmt(top) + "\" x2=\"" + detail::fmt(x) +
               "\" y2=\"" + detail::fmt(bottom) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + detail::fmt(x) + "\" y=\"" + detail::fmt(bottom + 18) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + detail::tick_label(d) +
               "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
        const double y = py(std::pow(10.0, d));
        svg += "<line x1=\"" + detail::fmt(left) + "\" y1=\"" + detail::fmt(y) + "\" x2=\"" + detail::fmt(right) +
               "\" y2=\"" + detail::fmt(y) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + detail::fmt(left - 8) + "\" y=\"" + detail::fmt(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" + detail::tick_label(d) +
               "</text>\n";
    }
    svg += "<text x=\"" + detail::fmt((left + right) / 2) + "\" y=\"" + detail::fmt(height - 14) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" + std::string(xlabel) +
           "</text>\n";
    svg += "<text x=\"18\" y=\"" + detail::fmt((top + bottom) / 2) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           detail::fmt((top + bottom) / 2) + ")\">error</text>\n";

    // reference-slope guides, one per design order present
    std::set<int> orders;
    for (const Series& s : series) {
        try {
            orders.insert(make_method(s.method, result.n_operators == 0 ? 2 : result.n_operators).design_order);
        } catch (const std::exception&) {
            // unknown id: no guide
        }
    }
    for (int p : orders) {
        const double slope = kind == ChartKind::convergence ? static_cast<double>(p) : -static_cast<double>(p);
        const double gx0 = std::pow(10.0, lx0 + 0.6 * (lx1 - lx0));
        const double gx1 = std::pow(10.0, lx0 + 0.95 * (lx1 - lx0));
        const double gy0 = std::pow(10.0, ly0 + 0.12 * (ly1 - ly0));
        const double gy1 = gy0 * std::pow(gx1 / gx0, slope);
        svg += "<line x1=\"" + detail::fmt(px(gx0)) + "\" y1=\"" + detail::fmt(py(gy0)) + "\" x2=\"" +
               detail::fmt(px(gx1)) + "\" y2=\"" + detail::fmt(py(gy1)) +
               "\" stroke=\"#888888\" stroke-dasharray=\"5,4\"/>\n";
        svg += "<text x=\"" + detail::fmt(px(gx1) + 4) + "\" y=\"" + detail::fmt(py(gy1)) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#666666\">slope " +
               std::to_string(kind == ChartKind::convergence ? p : -p) + "</text>\n";
    }

    // data polylines + legend
    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = palette[si % (sizeof palette / sizeof palette[0])];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i)
            pts += detail::fmt(px(s.x[i])) + "," + detail::fmt(py(s.y[i])) + " ";
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.8\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg += "<circle cx=\"" + detail::fmt(px(s.x[i])) + "\" cy=\"" + detail::fmt(py(s.y[i])) +
                   "\" r=\"3\" fill=\"" + color + "\"/>\n";
        const double ly = top + 16 + 18 * static_cast<double>(si);
        svg += "<line x1=\"" + detail::fmt(right + 10) + "\" y1=\"" + detail::fmt(ly - 4) + "\" x2=\"" +
               detail::fmt(right + 34) + "\" y2=\"" + detail::fmt(ly - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + detail::fmt(right + 40) + "\" y=\"" + detail::fmt(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + s.method + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace nsplit
