// Two-group mixture model pieces: the mixture density for plots, the
// empirical mixture CDF, and the univariate Gaussian lower bound on the
// FDR of a single test.

#pragma once

#include <vector>

#include "fdrest/pvalues.hpp"

namespace fdrest {

struct TwoGroupModel {
    double pi0 = 1.0;
    double null_mean = 0.0;
    double null_sd = 1.0;
    double alt_mean = 2.0;
    double alt_sd = 1.0;
};

// pi0 N(z; mu0, sd0) + (1 - pi0) N(z; mu1, sd1)
double mixture_density(double z, const TwoGroupModel& model);

// step-function estimate rank(p_i)/m per feature; NaN at missing entries
std::vector<double> empirical_mixture_cdf(const PValueSet& p,
                                          const RankVector& ranks);

struct LowerBoundConfig {
    double default_odds = 1.0;  // pi1 / pi0
};

// (1 + exp(z^2/2) odds)^{-1}; returns 0 exactly where exp(z^2/2) would
// overflow. Strictly decreasing in |z|, 0.5 at z = 0 for unit odds.
double lower_bound_fdr(double z, const LowerBoundConfig& config = {});

}  // namespace fdrest
