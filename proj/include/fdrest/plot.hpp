// Plot-data assembly and emission: JSON series for external renderers and
// a minimal static SVG with axes, points, the step-up rejection line, the
// horizontal threshold line, and a legend.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdrest/table.hpp"

namespace fdrest {

struct PlotSpec {
    enum class Axis { rank, zvalues };
    Axis x_axis = Axis::rank;
    bool raw_points = true;
    bool adjusted_points = true;
    bool fdr_points = true;
    bool rejection_line = true;
    bool threshold_line = true;
    double threshold = 0.05;
    std::optional<std::pair<double, double>> xlim;
    std::optional<std::pair<double, double>> ylim;
};

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotData {
    std::string x_axis;
    double threshold = 0.05;
    std::vector<PlotSeries> series;
};

// Point series use rank or z-value x-coordinates per spec.x_axis; the
// rejection line carries samples threshold * i / m at the same
// x-coordinates; the threshold line is two endpoints at y = threshold.
PlotData make_plot_data(const ResultsTable& results, const PlotSpec& spec);

void write_plot_json(const PlotData& data, std::ostream& os);
void write_plot_svg(const PlotData& data, const PlotSpec& spec, std::ostream& os);

}  // namespace fdrest
