// Multiple-testing adjustment methods. Every method produces two distinct
// outputs: per-feature FDR estimates (no step adjustment, need not be
// monotone) and step-adjusted p-values for error control (monotone in raw
// p-value rank). The two are frequently confused; this module never
// conflates them.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdrest/pi0.hpp"
#include "fdrest/pvalues.hpp"

namespace fdrest {

enum class MethodKind { bh, by, bonferroni, holm, hochberg, sidak };

enum class ByCorrelation { positive, negative };

struct AdjustmentMethod {
    MethodKind kind = MethodKind::bh;
    ByCorrelation by_correlation = ByCorrelation::positive;  // BY only
};

AdjustmentMethod parse_method(const std::string& name);  // "BH", "by", "bon", ...
std::string method_label(const AdjustmentMethod& m);

// Both sequences aligned to input order, capped at 1; NaN at missing
// entries. Adjusted p-values are non-decreasing when re-ordered by raw
// p-value rank; FDRs carry no such constraint.
struct MethodOutput {
    std::vector<double> adjusted_pvalues;
    std::vector<double> fdrs;
};

// c(m) = sum_{j=1..m} 1/j, the Benjamini-Yekutieli dependence correction
double harmonic_number(std::size_t m);

MethodOutput compute_bh(const PValueSet& p, double pi0, const RankVector& ranks);
MethodOutput compute_by(const PValueSet& p, double pi0, const RankVector& ranks,
                        ByCorrelation corr = ByCorrelation::positive);
MethodOutput compute_bonferroni(const PValueSet& p, double pi0);
MethodOutput compute_sidak(const PValueSet& p, double pi0);
MethodOutput compute_holm(const PValueSet& p, double pi0, const RankVector& ranks);
MethodOutput compute_hochberg(const PValueSet& p, double pi0, const RankVector& ranks);

struct FdrResult {
    AdjustmentMethod method;
    PValueSet raw;
    MethodOutput output;
    std::vector<bool> reject;  // adjusted_i <= threshold
    double pi0 = 1.0;
    double threshold = 0.05;
    RankVector ranks;
    std::vector<std::size_t> order;  // row i came from input position order[i]
};

struct PfdrOptions {
    AdjustmentMethod method{};
    double threshold = 0.05;
    Pi0Spec pi0{};
    TiePolicy ties = TiePolicy::random;
    std::uint64_t seed = 0;
    bool sort_results = false;  // order rows by ascending FDR
    bool just_fdr = false;      // populate only the fdr sequence
};

FdrResult p_fdr(const PValueSet& p, const PfdrOptions& options = {});

}  // namespace fdrest
