// Null-proportion estimation: fixed value, Last Histogram Height with
// Scott's-rule binning, and Storey's smoothed lambda method.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fdrest/pvalues.hpp"

namespace fdrest {

enum class Pi0Mode { set_value, last_hist, storey };

struct Pi0Spec {
    Pi0Mode mode = Pi0Mode::set_value;
    double set_value = 1.0;
    std::optional<int> hist_breaks;  // empty means Scott's rule
    std::vector<double> lambda_grid = default_lambda_grid();

    // 0, 0.05, ..., 0.95
    static std::vector<double> default_lambda_grid();
};

struct HistogramDiagnostics {
    int bin_count = 0;
    std::vector<int> bin_heights;  // H_1..H_B, sums to m
};

struct StoreyDiagnostics {
    std::vector<double> lambda_grid;
    std::vector<double> raw_estimates;  // #{p > lambda} / (m (1 - lambda))
    double spline_value_at_1 = 0.0;     // before clamping
};

struct Pi0Estimate {
    double value = 1.0;  // clamped to [0, 1]
    std::string method;
    std::variant<std::monostate, HistogramDiagnostics, StoreyDiagnostics>
        diagnostics;
};

// Scott's normal reference rule: bin width 3.49 s m^{-1/3}, bin count
// B = ceil(1/width) clamped to [1, m-1]. Throws for m < 2 or zero sample
// standard deviation (caller should supply hist_breaks explicitly).
int scott_bin_count(const PValueSet& p);

// pi0 = min(1, H_B B / m), H_B the count in the right-most of B equal-width
// bins over [0, 1] (left-open right-closed, first bin closed at 0).
// Requires 1 <= B < m.
Pi0Estimate last_hist_height(const PValueSet& p,
                             std::optional<int> breaks = std::nullopt);

// Storey's smoothed estimator: raw estimates on the lambda grid, cubic
// smoothing spline with 3 effective df, value = spline at lambda = 1
// (linear extrapolation past the last knot), clamped to [0, 1].
Pi0Estimate storey_pi0(const PValueSet& p,
                       const std::vector<double>& lambda_grid =
                           Pi0Spec::default_lambda_grid());

Pi0Estimate get_pi0(const PValueSet& p, const Pi0Spec& spec);

}  // namespace fdrest
