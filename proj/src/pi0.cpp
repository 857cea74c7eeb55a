#include "fdrest/pi0.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdrest/spline.hpp"

namespace fdrest {

std::vector<double> Pi0Spec::default_lambda_grid() {
    std::vector<double> grid(20);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = static_cast<double>(i) * 0.05;
    }
    return grid;
}

int scott_bin_count(const PValueSet& p) {
    const std::size_t m = p.m();
    if (m < 2) throw std::invalid_argument("scott_bin_count: need at least 2 p-values");

    double sum = 0.0;
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.is_missing(i)) continue;
        sum += p.value(i);
        lo = std::min(lo, p.value(i));
        hi = std::max(hi, p.value(i));
    }
    if (lo == hi) {
        throw std::invalid_argument(
            "scott_bin_count: all p-values identical; supply hist_breaks explicitly");
    }
    const double mean = sum / static_cast<double>(m);
    double ss = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p.is_missing(i)) {
            const double d = p.value(i) - mean;
            ss += d * d;
        }
    }
    const double sd = std::sqrt(ss / static_cast<double>(m - 1));

    const double width = 3.49 * sd * std::pow(static_cast<double>(m), -1.0 / 3.0);
    auto bins = static_cast<long>(std::ceil(1.0 / width));
    bins = std::clamp(bins, 1L, static_cast<long>(m) - 1L);
    return static_cast<int>(bins);
}

Pi0Estimate last_hist_height(const PValueSet& p, std::optional<int> breaks) {
    const std::size_t m = p.m();
    if (m < 2) throw std::invalid_argument("last_hist_height: need at least 2 p-values");

    const int bins = breaks ? *breaks : scott_bin_count(p);
    if (bins < 1) throw std::invalid_argument("last_hist_height: bin count must be positive");
    if (static_cast<std::size_t>(bins) >= m) {
        throw std::invalid_argument("last_hist_height: bin count must be below m");
    }

    // bin b covers ((b-1)/B, b/B]; the first bin also includes 0
    std::vector<int> heights(static_cast<std::size_t>(bins), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.is_missing(i)) continue;
        const double v = p.value(i);
        long b = v <= 0.0 ? 1 : static_cast<long>(std::ceil(v * bins));
        b = std::clamp(b, 1L, static_cast<long>(bins));
        ++heights[static_cast<std::size_t>(b - 1)];
    }

    Pi0Estimate est;
    est.method = "last_hist";
    est.value = std::min(1.0, static_cast<double>(heights.back()) * bins /
                                  static_cast<double>(m));
    est.diagnostics = HistogramDiagnostics{bins, std::move(heights)};
    return est;
}

Pi0Estimate storey_pi0(const PValueSet& p,
                       const std::vector<double>& lambda_grid) {
    const std::size_t m = p.m();
    if (m < 2) throw std::invalid_argument("storey_pi0: need at least 2 p-values");
    if (lambda_grid.size() < 4) {
        throw std::invalid_argument("storey_pi0: lambda grid needs at least 4 points");
    }
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (lambda_grid[i] < 0.0 || lambda_grid[i] >= 1.0 ||
            (i > 0 && lambda_grid[i] <= lambda_grid[i - 1])) {
            throw std::invalid_argument(
                "storey_pi0: lambda grid must be strictly ascending in [0, 1)");
        }
    }

    // The spline is fit to the raw estimates. They can exceed 1 for large
    // lambda and small m; clamping them first drags the fit down, so only
    // the final value is clamped.
    std::vector<double> raw(lambda_grid.size());
    for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!p.is_missing(i) && p.value(i) > lambda_grid[k]) ++count;
        }
        raw[k] = static_cast<double>(count) /
                 (static_cast<double>(m) * (1.0 - lambda_grid[k]));
    }

    const auto spline = SmoothingSpline::fit(lambda_grid, raw, 3.0);
    const double at_one = spline(1.0);

    Pi0Estimate est;
    est.method = "storey";
    est.value = std::clamp(at_one, 0.0, 1.0);
    est.diagnostics = StoreyDiagnostics{lambda_grid, std::move(raw), at_one};
    return est;
}

Pi0Estimate get_pi0(const PValueSet& p, const Pi0Spec& spec) {
    switch (spec.mode) {
        case Pi0Mode::set_value: {
            if (spec.set_value < 0.0 || spec.set_value > 1.0) {
                throw std::invalid_argument("set_value pi0 must lie in [0, 1]");
            }
            Pi0Estimate est;
            est.method = "set";
            est.value = spec.set_value;
            return est;
        }
        case Pi0Mode::last_hist:
            return last_hist_height(p, spec.hist_breaks);
        case Pi0Mode::storey:
            return storey_pi0(p, spec.lambda_grid);
    }
    throw std::invalid_argument("get_pi0: unknown mode");
}

}  // namespace fdrest
