#include "catseries/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "catseries/format.hpp"

namespace cts {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 770.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 430.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string color(std::size_t k) { return kPalette[k % std::size(kPalette)]; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi) {
    const double range = hi - lo;
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (raw <= step) break;
    }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + step * 1e-9; v += step) {
        ticks.push_back(v);
    }
    return ticks;
}

struct Range {
    double lo, hi;
};

Range padded(double lo, double hi, double pad_fraction = 0.05) {
    if (!(hi > lo)) {
        const double w = std::max(std::abs(lo) * 0.1, 1.0);
        return {lo - w, hi + w};
    }
    const double pad = (hi - lo) * pad_fraction;
    return {lo - pad, hi + pad};
}

class Canvas {
public:
    Canvas(Range x, Range y) : x_(x), y_(y) {}

    double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kRight - kLeft); }
    double py(double y) const { return kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (kBottom - kTop); }
    bool inside(double x, double y) const {
        return x >= x_.lo && x <= x_.hi && y >= y_.lo && y <= y_.hi;
    }

    void axes(std::string_view xlabel, std::string_view ylabel,
              const std::vector<std::pair<double, std::string>>& yticks = {}) {
        body_ << "<g class=\"axes\">\n";
        body_ << "<rect class=\"frame\" x=\"" << num(kLeft) << "\" y=\"" << num(kTop)
              << "\" width=\"" << num(kRight - kLeft) << "\" height=\"" << num(kBottom - kTop)
              << "\"/>\n";
        for (double t : nice_ticks(x_.lo, x_.hi)) {
            body_ << "<line class=\"tick\" x1=\"" << num(px(t)) << "\" y1=\"" << num(kBottom)
                  << "\" x2=\"" << num(px(t)) << "\" y2=\"" << num(kBottom + 5) << "\"/>\n";
            text(px(t), kBottom + 20, tick_label(t), "ticklabel", "middle");
        }
        auto ys = yticks;
        if (ys.empty()) {
            for (double t : nice_ticks(y_.lo, y_.hi)) ys.emplace_back(t, tick_label(t));
        }
        for (const auto& [t, label] : ys) {
            body_ << "<line class=\"tick\" x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(t))
                  << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(py(t)) << "\"/>\n";
            text(kLeft - 8, py(t) + 4, label, "ticklabel", "end");
        }
        text((kLeft + kRight) / 2, kHeight - 25, xlabel, "axislabel", "middle");
        body_ << "<text class=\"axislabel\" text-anchor=\"middle\" transform=\"translate(20,"
              << num((kTop + kBottom) / 2) << ") rotate(-90)\">" << xml_escape(ylabel)
              << "</text>\n";
        body_ << "</g>\n";
    }

    void hline(double y, std::string_view cls) {
        body_ << "<line class=\"" << cls << "\" x1=\"" << num(kLeft) << "\" y1=\"" << num(py(y))
              << "\" x2=\"" << num(kRight) << "\" y2=\"" << num(py(y)) << "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, std::string_view cls) {
        body_ << "<line class=\"" << cls << "\" x1=\"" << num(px(x1)) << "\" y1=\"" << num(py(y1))
              << "\" x2=\"" << num(px(x2)) << "\" y2=\"" << num(py(y2)) << "\"/>\n";
    }

    void polyline(const std::vector<Point2>& pts, std::string_view cls, const std::string& stroke) {
        body_ << "<polyline class=\"" << cls << "\" stroke=\"" << stroke << "\" points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (k) body_ << ' ';
            body_ << num(px(pts[k].x)) << ',' << num(py(pts[k].y));
        }
        body_ << "\"/>\n";
    }

    void circle(double x, double y, double radius, std::string_view cls, const std::string& fill) {
        body_ << "<circle class=\"" << cls << "\" cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
              << "\" r=\"" << num(radius) << "\" fill=\"" << fill << "\"/>\n";
    }

    void bar(double x_center, double half_width, double height, std::size_t length,
             std::size_t count) {
        const double left = px(x_center - half_width);
        const double right = px(x_center + half_width);
        const double top = py(height);
        const double base = py(0.0);
        body_ << "<rect class=\"bar\" data-length=\"" << length << "\" data-count=\"" << count
              << "\" x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
              << num(right - left) << "\" height=\"" << num(base - top) << "\"/>\n";
    }

    void text(double x, double y, std::string_view content, std::string_view cls,
              std::string_view anchor = "start") {
        body_ << "<text class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y)
              << "\" text-anchor=\"" << anchor << "\">" << xml_escape(content) << "</text>\n";
    }

    void legend(const std::vector<std::string>& labels) {
        for (std::size_t k = 0; k < labels.size(); ++k) {
            const double y = kTop + 12 + 16 * static_cast<double>(k);
            body_ << "<rect class=\"legendkey\" x=\"" << num(kRight - 110) << "\" y=\""
                  << num(y - 8) << "\" width=\"10\" height=\"10\" fill=\"" << color(k) << "\"/>\n";
            text(kRight - 95, y + 1, labels[k], "legend");
        }
    }

    std::string finish(std::string_view title) const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
            << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
            << "\">\n"
            << "<style>\n"
            << "text{font-family:sans-serif;font-size:12px;fill:#222}\n"
            << ".title{font-size:16px;font-weight:bold}\n"
            << ".note{font-size:11px;font-style:italic;fill:#666}\n"
            << ".frame{fill:none;stroke:#444;stroke-width:1}\n"
            << ".tick{stroke:#444;stroke-width:1}\n"
            << ".series{fill:none;stroke-width:1.5}\n"
            << ".stem{stroke:#1f77b4;stroke-width:2}\n"
            << ".zero{stroke:#999;stroke-width:1}\n"
            << ".limit{stroke:#d62728;stroke-width:1.2;stroke-dasharray:6,4}\n"
            << ".bar{fill:#1f77b4;stroke:#fff;stroke-width:0.5}\n"
            << ".alarm{stroke:#d62728;stroke-width:1}\n"
            << "</style>\n"
            << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
            << "\" fill=\"#fff\"/>\n";
        out << "<text class=\"title\" x=\"" << num(kWidth / 2) << "\" y=\"28\" "
            << "text-anchor=\"middle\">" << xml_escape(title) << "</text>\n";
        out << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    Range x_, y_;
    std::ostringstream body_;
};

std::string title_or(const SvgStyle& style, std::string_view fallback) {
    return style.title.empty() ? std::string(fallback) : style.title;
}

std::string render(const TimeSeriesPlot& plot, const SvgStyle& style) {
    const auto& s = plot.series;
    const std::size_t r = s.categories();
    Canvas canvas(padded(1.0, static_cast<double>(s.length()), 0.02),
                  {0.5, static_cast<double>(r) + 0.5});
    std::vector<std::pair<double, std::string>> yticks;
    for (std::size_t i = 0; i < r; ++i) yticks.emplace_back(i + 1.0, s.alphabet().symbol(i));
    canvas.axes("t", "category", yticks);
    std::vector<Point2> pts;
    for (std::size_t t = 0; t < s.length(); ++t) {
        const double x = static_cast<double>(t + 1);
        const double y = static_cast<double>(s[t] + 1);
        if (t > 0) pts.push_back({x, pts.back().y});
        pts.push_back({x, y});
    }
    canvas.polyline(pts, "series", color(0));
    canvas.text(kLeft, kBottom + 55, "Nominal data: the vertical order of categories is arbitrary.",
                "note");
    return canvas.finish(title_or(style, "Time series plot"));
}

std::string render(const RateEvolution& rate, const SvgStyle& style) {
    const std::size_t T = rate.cumulative.rows();
    const std::size_t r = rate.cumulative.cols();
    if (T == 0) throw ValidationError("nothing to plot");
    Canvas canvas(padded(1.0, static_cast<double>(T), 0.02), padded(0.0, static_cast<double>(T)));
    canvas.axes("t", "cumulated count");
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Point2> pts;
        for (std::size_t t = 0; t < T; ++t) {
            pts.push_back({static_cast<double>(t + 1), static_cast<double>(rate.cumulative(t, i))});
        }
        canvas.polyline(pts, "series", color(i));
    }
    canvas.legend(rate.alphabet.symbols());
    return canvas.finish(title_or(style, "Rate evolution graph"));
}

std::string render(const PatternHistogram& hist, const SvgStyle& style) {
    if (hist.counts.empty()) throw ValidationError("no cycles to plot");
    const double max_len = static_cast<double>(hist.counts.rbegin()->first);
    std::size_t max_count = 0;
    for (const auto& [len, count] : hist.counts) max_count = std::max(max_count, count);
    Canvas canvas({0.0, max_len + 1.0}, {0.0, static_cast<double>(max_count) * 1.1});
    canvas.axes("cycle length", "count");
    for (const auto& [len, count] : hist.counts) {
        canvas.bar(static_cast<double>(len), 0.4, static_cast<double>(count), len, count);
    }
    return canvas.finish(title_or(style, "Pattern histogram (category " + hist.label + ")"));
}

std::string render(const IfsPlot& plot, const SvgStyle& style) {
    const auto& pts = plot.fractal.points;
    if (pts.empty()) throw ValidationError("nothing to plot");
    Range xr, yr;
    if (plot.window) {
        if (!(plot.window->x1 > plot.window->x0 && plot.window->y1 > plot.window->y0)) {
            throw ValidationError("plot window must have x0 < x1 and y0 < y1");
        }
        xr = {plot.window->x0, plot.window->x1};
        yr = {plot.window->y0, plot.window->y1};
    } else {
        const double bound = plot.fractal.beta / (1.0 - plot.fractal.alpha);
        double extent = bound;
        for (const auto& p : pts) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
        xr = padded(-extent, extent);
        yr = padded(-extent, extent);
    }
    Canvas canvas(xr, yr);
    canvas.axes("x", "y");
    for (const auto& p : pts) {
        if (canvas.inside(p.x, p.y)) canvas.circle(p.x, p.y, 2.0, "point", color(0));
    }
    return canvas.finish(title_or(style, "IFS circle transformation"));
}

std::string render(const DependencePlotData& dep, const SvgStyle& style) {
    if (dep.lags.empty()) throw ValidationError("nothing to plot");
    double lo = std::min(0.0, dep.critical_lower.value_or(0.0));
    double hi = std::max(0.0, dep.critical_upper);
    for (double e : dep.estimates) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    Canvas canvas({0.0, static_cast<double>(dep.lags.back()) + 1.0}, padded(lo, hi, 0.08));
    const bool v = dep.family == TestFamily::cramers_v;
    canvas.axes("lag", v ? "Cramer's v" : "Cohen's kappa");
    canvas.hline(0.0, "zero");
    canvas.hline(dep.critical_upper, "limit");
    if (dep.critical_lower) canvas.hline(*dep.critical_lower, "limit");
    for (std::size_t k = 0; k < dep.lags.size(); ++k) {
        const double x = static_cast<double>(dep.lags[k]);
        canvas.line(x, 0.0, x, dep.estimates[k], "stem");
        canvas.circle(x, dep.estimates[k], 3.0, "stemhead", color(0));
    }
    return canvas.finish(
        title_or(style, v ? "Serial dependence plot (Cramer's v)" : "Serial dependence plot (Cohen's kappa)"));
}

Range statistic_range(double lo, double hi) {
    lo = std::min(lo, -1.0);
    hi = std::max(hi, 1.0);
    return padded(lo, hi, 0.08);
}

double finite_clamp(double v) {
    constexpr double cap = 1e6;
    return std::isfinite(v) ? v : (v > 0 ? cap : -cap);
}

std::string render(const CycleLengthChart& chart, const SvgStyle& style) {
    if (chart.points.empty()) throw ValidationError("nothing to plot");
    double lo = 0.0, hi = 0.0;
    double tmax = 0.0;
    for (const auto& p : chart.points) {
        lo = std::min(lo, finite_clamp(p.statistic));
        hi = std::max(hi, finite_clamp(p.statistic));
        tmax = std::max(tmax, static_cast<double>(p.time + 1));
    }
    Canvas canvas(padded(1.0, tmax, 0.02), statistic_range(lo, hi));
    canvas.axes("t", "standardized cycle length");
    canvas.hline(1.0, "limit");
    canvas.hline(-1.0, "limit");
    std::vector<Point2> pts;
    for (const auto& p : chart.points) {
        pts.push_back({static_cast<double>(p.time + 1), finite_clamp(p.statistic)});
    }
    canvas.polyline(pts, "series", color(0));
    for (const auto& p : chart.points) {
        canvas.circle(static_cast<double>(p.time + 1), finite_clamp(p.statistic), p.alarm ? 3.5 : 2.0,
                      p.alarm ? "alarm" : "point", p.alarm ? color(1) : color(p.category));
    }
    return canvas.finish(title_or(style, "Control chart (cycle length)"));
}

std::string render(const EwmaChart& chart, const SvgStyle& style) {
    const std::size_t T = chart.statistics.rows();
    if (T == 0) throw ValidationError("nothing to plot");
    std::vector<std::vector<Point2>> lines;
    std::vector<std::string> labels;
    if (chart.kind == ChartKind::ewma_minmax) {
        lines.resize(2);
        for (std::size_t t = 0; t < T; ++t) {
            lines[0].push_back({static_cast<double>(t + 1), chart.minimum[t]});
            lines[1].push_back({static_cast<double>(t + 1), chart.maximum[t]});
        }
        labels = {"T min", "T max"};
    } else {
        lines.resize(chart.statistics.cols());
        for (std::size_t i = 0; i < lines.size(); ++i) {
            for (std::size_t t = 0; t < T; ++t) {
                lines[i].push_back({static_cast<double>(t + 1), chart.statistics(t, i)});
            }
            labels.push_back("T " + chart.alphabet.symbol(i));
        }
    }
    double lo = 0.0, hi = 0.0;
    for (const auto& line : lines)
        for (const auto& p : line) {
            lo = std::min(lo, p.y);
            hi = std::max(hi, p.y);
        }
    Canvas canvas(padded(1.0, static_cast<double>(T), 0.02), statistic_range(lo, hi));
    canvas.axes("t", "standardized EWMA statistic");
    canvas.hline(1.0, "limit");
    canvas.hline(-1.0, "limit");
    for (std::size_t k = 0; k < lines.size(); ++k) canvas.polyline(lines[k], "series", color(k));
    canvas.legend(labels);
    return canvas.finish(title_or(style, "Control chart (EWMA of the marginal distribution)"));
}

// CSV -----------------------------------------------------------------------

std::string csv(const TimeSeriesPlot& plot, bool) {
    std::string out = "t,code,symbol\n";
    for (std::size_t t = 0; t < plot.series.length(); ++t) {
        out += std::to_string(t + 1) + ',' + std::to_string(plot.series[t] + 1) + ',' +
               csv_field(plot.series.alphabet().symbol(plot.series[t])) + '\n';
    }
    return out;
}

std::string csv(const RateEvolution& rate, bool) {
    std::string out = "t";
    for (const auto& s : rate.alphabet.symbols()) out += ',' + csv_field(s);
    out += '\n';
    for (std::size_t t = 0; t < rate.cumulative.rows(); ++t) {
        out += std::to_string(t + 1);
        for (auto c : rate.cumulative.row(t)) out += ',' + std::to_string(c);
        out += '\n';
    }
    return out;
}

std::string csv(const PatternHistogram& hist, bool) {
    std::string out = "length,count\n";
    for (const auto& [len, count] : hist.counts) {
        out += std::to_string(len) + ',' + std::to_string(count) + '\n';
    }
    return out;
}

std::string csv(const IfsPlot& plot, bool bitexact) {
    std::string out = "t,x,y\n";
    for (std::size_t t = 0; t < plot.fractal.points.size(); ++t) {
        const auto& p = plot.fractal.points[t];
        out += std::to_string(t + 1) + ',' + format_number(p.x, bitexact) + ',' +
               format_number(p.y, bitexact) + '\n';
    }
    return out;
}

std::string csv(const DependencePlotData& dep, bool bitexact) {
    std::string out = "lag,estimate,critical_lower,critical_upper,p_value\n";
    for (std::size_t k = 0; k < dep.lags.size(); ++k) {
        out += std::to_string(dep.lags[k]) + ',' + format_number(dep.estimates[k], bitexact) + ',' +
               (dep.critical_lower ? format_number(*dep.critical_lower, bitexact) : "") + ',' +
               format_number(dep.critical_upper, bitexact) + ',' +
               format_number(dep.p_values[k], bitexact) + '\n';
    }
    return out;
}

std::string csv(const CycleLengthChart& chart, bool bitexact) {
    std::string out = "t,category,length,mean,lcl,ucl,statistic,alarm\n";
    for (const auto& p : chart.points) {
        out += std::to_string(p.time + 1) + ',' + std::to_string(p.category + 1) + ',' +
               std::to_string(p.length) + ',' + format_number(p.mean, bitexact) + ',' +
               format_number(p.lcl, bitexact) + ',' + format_number(p.ucl, bitexact) + ',' +
               format_number(p.statistic, bitexact) + ',' + (p.alarm ? "1" : "0") + '\n';
    }
    return out;
}

std::string csv(const EwmaChart& chart, bool bitexact) {
    std::string out = "t";
    if (chart.kind == ChartKind::ewma_minmax) {
        out += ",T_min,T_max";
    } else {
        for (const auto& s : chart.alphabet.symbols()) out += ',' + csv_field("T_" + s);
    }
    out += ",alarm\n";
    for (std::size_t t = 0; t < chart.statistics.rows(); ++t) {
        out += std::to_string(t + 1);
        if (chart.kind == ChartKind::ewma_minmax) {
            out += ',' + format_number(chart.minimum[t], bitexact) + ',' +
                   format_number(chart.maximum[t], bitexact);
        } else {
            for (double v : chart.statistics.row(t)) out += ',' + format_number(v, bitexact);
        }
        out += chart.alarms[t] ? ",1\n" : ",0\n";
    }
    return out;
}

}  // namespace

std::string render_svg(const PlotData& data, const SvgStyle& style) {
    return std::visit([&](const auto& d) { return render(d, style); }, data);
}

std::string to_csv(const PlotData& data, bool bitexact) {
    return std::visit([&](const auto& d) { return csv(d, bitexact); }, data);
}

}  // namespace cts
