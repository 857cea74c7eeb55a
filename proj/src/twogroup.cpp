#include "fdrest/twogroup.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdrest/normal.hpp"

namespace fdrest {

double mixture_density(double z, const TwoGroupModel& model) {
    if (!(model.null_sd > 0.0) || !(model.alt_sd > 0.0)) {
        throw std::invalid_argument("mixture_density: sd values must be positive");
    }
    if (!(model.pi0 >= 0.0 && model.pi0 <= 1.0)) {
        throw std::invalid_argument("mixture_density: pi0 must lie in [0, 1]");
    }
    const double f0 = norm_pdf((z - model.null_mean) / model.null_sd) / model.null_sd;
    const double f1 = norm_pdf((z - model.alt_mean) / model.alt_sd) / model.alt_sd;
    return model.pi0 * f0 + (1.0 - model.pi0) * f1;
}

std::vector<double> empirical_mixture_cdf(const PValueSet& p,
                                          const RankVector& ranks) {
    if (ranks.ranks.size() != p.size()) {
        throw std::invalid_argument("empirical_mixture_cdf: rank vector length mismatch");
    }
    const double m = static_cast<double>(p.m());
    std::vector<double> cdf(p.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p.is_missing(i)) cdf[i] = ranks.ranks[i] / m;
    }
    return cdf;
}

double lower_bound_fdr(double z, const LowerBoundConfig& config) {
    if (!(config.default_odds > 0.0)) {
        throw std::invalid_argument("lower_bound_fdr: odds must be positive");
    }
    if (std::isnan(z) || std::isinf(z)) {
        throw std::invalid_argument("lower_bound_fdr: z must be finite");
    }
    const double w = 0.5 * z * z;
    if (w > 700.0) return 0.0;  // exp would overflow; the bound underflows
    return 1.0 / (1.0 + std::exp(w) * config.default_odds);
}

}  // namespace fdrest
