#pragma once

#include <optional>
#include <string>
#include <variant>

#include "catseries/core.hpp"
#include "catseries/viz.hpp"

namespace cts {

struct TimeSeriesPlot {
    CategoricalSeries series;
};

/// Axis ranges for zooming into a region of the IFS scatter.
struct PlotWindow {
    double x0, x1, y0, y1;
};

struct IfsPlot {
    FractalSeries fractal;
    std::optional<PlotWindow> window;
};

using PlotData = std::variant<TimeSeriesPlot, RateEvolution, PatternHistogram, IfsPlot,
                              DependencePlotData, CycleLengthChart, EwmaChart>;

struct SvgStyle {
    std::string title;
};

/// Deterministic SVG 1.1 document on a fixed 800x500 viewBox with embedded CSS.
///
/// Time series: step plot (annotated as arbitrary ordering for nominal data).
/// Rate evolution: one line per category. Pattern histogram: one bar per
/// observed cycle length. IFS: scatter, clipped to the window when given.
/// Dependence: stems with dashed critical lines. Control charts: standardized
/// statistics with dashed limits at +-1 and alarms marked.
/// Throws ValidationError when there is nothing to draw.
[[nodiscard]] std::string render_svg(const PlotData& data, const SvgStyle& style = {});

/// Tabular form of the plot with a header row:
///   time series      t,code,symbol
///   rate evolution   t,<symbol_1>,...,<symbol_r>
///   pattern          length,count
///   ifs              t,x,y
///   dependence       lag,estimate,critical_lower,critical_upper,p_value
///   cycle chart      t,category,length,mean,lcl,ucl,statistic,alarm
///   ewma             t,T_<symbol_1>,...,T_<symbol_r>,alarm   (or t,T_min,T_max,alarm)
/// Times are 1-based.
[[nodiscard]] std::string to_csv(const PlotData& data, bool bitexact = false);

}  // namespace cts
