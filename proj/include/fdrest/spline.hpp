// Penalized natural cubic smoothing spline with the smoothing parameter
// tuned so that the smoother-matrix trace hits a requested effective
// degrees of freedom. Knots sit at the data points; evaluation outside
// the knot range is linear (natural boundary conditions).

#pragma once

#include <vector>

namespace fdrest {

class SmoothingSpline {
public:
    // x strictly ascending, at least 4 points; target_df in (2, n).
    // Tunes the penalty by bisection until |trace - target_df| <= df_tol.
    static SmoothingSpline fit(const std::vector<double>& x,
                               const std::vector<double>& y,
                               double target_df, double df_tol = 0.01);

    double operator()(double t) const;

    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& fitted() const { return g_; }
    double effective_df() const { return df_; }
    double penalty() const { return lambda_; }

private:
    SmoothingSpline() = default;
    std::vector<double> x_;      // knots
    std::vector<double> g_;      // fitted values at knots
    std::vector<double> gamma_;  // second derivatives at knots (0 at ends)
    double df_ = 0.0;
    double lambda_ = 0.0;
};

}  // namespace fdrest
