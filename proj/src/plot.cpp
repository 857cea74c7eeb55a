#include "fdrest/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fdrest {

namespace {

// plotting ranks: ascending in raw_p, ties broken by row position
std::vector<double> plot_ranks(const ResultsTable& results) {
    std::vector<std::size_t> present;
    for (std::size_t i = 0; i < results.rows.size(); ++i) {
        if (!results.rows[i].missing) present.push_back(i);
    }
    std::vector<std::size_t> order(present.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return results.rows[present[a]].raw_p < results.rows[present[b]].raw_p;
    });
    std::vector<double> ranks(results.rows.size(),
                              std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < order.size(); ++k) {
        ranks[present[order[k]]] = static_cast<double>(k + 1);
    }
    return ranks;
}

struct Tick {
    double value;
    std::string label;
};

std::vector<Tick> make_ticks(double lo, double hi, int want) {
    std::vector<Tick> ticks;
    if (!(hi > lo)) return ticks;
    const double raw_step = (hi - lo) / want;
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (double mult : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * mult >= raw_step) {
            step = mag * mult;
            break;
        }
    }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 1e-9 * step; v += step) {
        const double snapped = std::abs(v) < 1e-9 * step ? 0.0 : v;
        std::ostringstream os;
        os << snapped;
        ticks.push_back({v, os.str()});
    }
    return ticks;
}

}  // namespace

PlotData make_plot_data(const ResultsTable& results, const PlotSpec& spec) {
    PlotData data;
    data.x_axis = spec.x_axis == PlotSpec::Axis::rank ? "rank" : "zvalues";
    data.threshold = spec.threshold;

    const auto ranks = plot_ranks(results);
    const bool use_rank = spec.x_axis == PlotSpec::Axis::rank;
    const std::size_t m = results.m;

    const auto x_of = [&](std::size_t i) {
        return use_rank ? ranks[i] : results.rows[i].z;
    };
    const auto usable = [&](std::size_t i) {
        return !results.rows[i].missing && !std::isnan(x_of(i));
    };

    const auto point_series = [&](const std::string& name, auto getter) {
        PlotSeries s;
        s.name = name;
        for (std::size_t i = 0; i < results.rows.size(); ++i) {
            if (!usable(i)) continue;
            const double y = getter(results.rows[i]);
            if (std::isnan(y)) continue;
            s.x.push_back(x_of(i));
            s.y.push_back(y);
        }
        return s;
    };

    if (spec.raw_points) {
        data.series.push_back(point_series(
            "raw_pvalues", [](const ResultsRow& r) { return r.raw_p; }));
    }
    if (spec.adjusted_points) {
        data.series.push_back(point_series(
            "adjusted_pvalues", [](const ResultsRow& r) { return r.adjusted_p; }));
    }
    if (spec.fdr_points) {
        data.series.push_back(
            point_series("fdrs", [](const ResultsRow& r) { return r.fdr; }));
    }
    if (spec.rejection_line && m > 0) {
        // step-up rejection boundary: threshold * i / m at the rank-i feature
        PlotSeries s;
        s.name = "rejection_line";
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < results.rows.size(); ++i) {
            if (!usable(i)) continue;
            pts.emplace_back(ranks[i], x_of(i));
        }
        std::sort(pts.begin(), pts.end());
        for (const auto& [rank, x] : pts) {
            s.x.push_back(x);
            s.y.push_back(spec.threshold * rank / static_cast<double>(m));
        }
        data.series.push_back(std::move(s));
    }
    if (spec.threshold_line) {
        PlotSeries s;
        s.name = "threshold_line";
        double lo = 0.0, hi = 1.0;
        if (spec.xlim) {
            lo = spec.xlim->first;
            hi = spec.xlim->second;
        } else {
            bool any = false;
            for (std::size_t i = 0; i < results.rows.size(); ++i) {
                if (!usable(i)) continue;
                const double x = x_of(i);
                if (!any) {
                    lo = hi = x;
                    any = true;
                } else {
                    lo = std::min(lo, x);
                    hi = std::max(hi, x);
                }
            }
        }
        s.x = {lo, hi};
        s.y = {spec.threshold, spec.threshold};
        data.series.push_back(std::move(s));
    }
    return data;
}

void write_plot_json(const PlotData& data, std::ostream& os) {
    nlohmann::json j;
    j["x_axis"] = data.x_axis;
    j["threshold"] = data.threshold;
    j["series"] = nlohmann::json::array();
    for (const auto& s : data.series) {
        nlohmann::json e;
        e["name"] = s.name;
        e["x"] = s.x;
        e["y"] = s.y;
        j["series"].push_back(std::move(e));
    }
    os << j.dump(2) << '\n';
}

void write_plot_svg(const PlotData& data, const PlotSpec& spec, std::ostream& os) {
    constexpr double W = 720, H = 480;
    constexpr double ml = 64, mr = 24, mt = 24, mb = 48;

    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool any = false;
    for (const auto& s : data.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!any) {
                xlo = xhi = s.x[i];
                ylo = 0.0;
                yhi = s.y[i];
                any = true;
            } else {
                xlo = std::min(xlo, s.x[i]);
                xhi = std::max(xhi, s.x[i]);
                yhi = std::max(yhi, s.y[i]);
            }
        }
    }
    yhi = std::min(1.05, std::max(yhi * 1.05, 0.05));
    if (spec.xlim) std::tie(xlo, xhi) = *spec.xlim;
    if (spec.ylim) std::tie(ylo, yhi) = *spec.ylim;
    if (!(xhi > xlo)) xhi = xlo + 1.0;
    if (!(yhi > ylo)) yhi = ylo + 1.0;

    const auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (W - ml - mr); };
    const auto py = [&](double y) { return H - mb - (y - ylo) / (yhi - ylo) * (H - mt - mb); };
    const auto in_range = [&](double x, double y) {
        return x >= xlo && x <= xhi && y >= ylo && y <= yhi;
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
       << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
       << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    for (const auto& t : make_ticks(xlo, xhi, 6)) {
        const double x = px(t.value);
        os << "<line x1=\"" << x << "\" y1=\"" << H - mb << "\" x2=\"" << x
           << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << x << "\" y=\"" << H - mb + 18
           << "\" font-size=\"11\" text-anchor=\"middle\">" << t.label
           << "</text>\n";
    }
    for (const auto& t : make_ticks(ylo, yhi, 6)) {
        const double y = py(t.value);
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << y << "\" x2=\"" << ml
           << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
           << "\" font-size=\"11\" text-anchor=\"end\">" << t.label
           << "</text>\n";
    }
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 10
       << "\" font-size=\"13\" text-anchor=\"middle\">"
       << (data.x_axis == "rank" ? "rank" : "z-value") << "</text>\n";

    const auto color_of = [](const std::string& name) {
        if (name == "raw_pvalues") return "black";
        if (name == "adjusted_pvalues") return "firebrick";
        if (name == "fdrs") return "dodgerblue";
        return "black";
    };

    for (const auto& s : data.series) {
        if (s.name == "rejection_line" || s.name == "threshold_line") {
            os << "<polyline fill=\"none\" stroke=\""
               << (s.name == "threshold_line" ? "dodgerblue" : "black")
               << "\"" << (s.name == "threshold_line" ? " stroke-dasharray=\"6 4\"" : "")
               << " points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                const double xc = std::clamp(s.x[i], xlo, xhi);
                const double yc = std::clamp(s.y[i], ylo, yhi);
                os << px(xc) << ',' << py(yc) << ' ';
            }
            os << "\"/>\n";
            continue;
        }
        const char* col = color_of(s.name);
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!in_range(s.x[i], s.y[i])) continue;
            const double x = px(s.x[i]);
            const double y = py(s.y[i]);
            if (s.name == "adjusted_pvalues") {  // triangles
                os << "<polygon fill=\"" << col << "\" points=\"" << x << ','
                   << y - 4 << ' ' << x - 3.5 << ',' << y + 3 << ' ' << x + 3.5
                   << ',' << y + 3 << "\"/>\n";
            } else {
                os << "<circle cx=\"" << x << "\" cy=\"" << y
                   << "\" r=\"3\" fill=\"" << col << "\"/>\n";
            }
        }
    }

    // legend
    double ly = mt + 12;
    os << "<g font-size=\"12\">\n";
    for (const auto& s : data.series) {
        const char* col = s.name == "threshold_line" ? "dodgerblue"
                                                     : color_of(s.name);
        os << "<rect x=\"" << ml + 10 << "\" y=\"" << ly - 8
           << "\" width=\"10\" height=\"10\" fill=\"" << col << "\"/>"
           << "<text x=\"" << ml + 26 << "\" y=\"" << ly << "\">" << s.name
           << "</text>\n";
        ly += 16;
    }
    os << "</g>\n</svg>\n";
}

}  // namespace fdrest
