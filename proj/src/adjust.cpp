#include "fdrest/adjust.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fdrest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

void check_pi0(double pi0) {
    if (!(pi0 >= 0.0 && pi0 <= 1.0)) {
        throw std::invalid_argument("pi0 must lie in [0, 1]");
    }
}

void check_ranks(const PValueSet& p, const RankVector& ranks) {
    if (ranks.ranks.size() != p.size()) {
        throw std::invalid_argument("rank vector length does not match p-values");
    }
}

// indices of non-missing entries sorted by ascending p-value
std::vector<std::size_t> sorted_present(const PValueSet& p) {
    auto idx = p.present_indices();
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return p.value(a) < p.value(b);
    });
    return idx;
}

double cap(double v) { return std::min(1.0, v); }

// Per-feature FDR min(1, p * scale(rank) * pi0) plus the step envelope of
// p_(j) * scale(j) over the sorted order: suffix minimum for step-up
// methods (BH, BY, Hochberg), prefix maximum for step-down (Holm).
template <typename ScaleFn>
MethodOutput stepped_output(const PValueSet& p, double pi0,
                            const RankVector& ranks, bool step_up,
                            ScaleFn scale) {
    check_pi0(pi0);
    check_ranks(p, ranks);
    if (p.m() == 0) throw std::invalid_argument("no p-values left after NA removal");

    MethodOutput out;
    out.adjusted_pvalues.assign(p.size(), kNaN);
    out.fdrs.assign(p.size(), kNaN);

    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.is_missing(i)) continue;
        out.fdrs[i] = cap(p.value(i) * scale(ranks.ranks[i]) * pi0);
    }

    const auto order = sorted_present(p);
    const std::size_t m = order.size();
    std::vector<double> env(m);
    for (std::size_t j = 0; j < m; ++j) {
        env[j] = p.value(order[j]) * scale(static_cast<double>(j + 1));
    }
    if (step_up) {
        for (std::size_t j = m - 1; j-- > 0;) {
            env[j] = std::min(env[j], env[j + 1]);
        }
    } else {
        for (std::size_t j = 1; j < m; ++j) {
            env[j] = std::max(env[j], env[j - 1]);
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        out.adjusted_pvalues[order[j]] = cap(env[j]);
    }
    return out;
}

}  // namespace

AdjustmentMethod parse_method(const std::string& name) {
    const std::string s = lower(name);
    if (s == "bh") return {MethodKind::bh, ByCorrelation::positive};
    if (s == "by") return {MethodKind::by, ByCorrelation::positive};
    if (s == "bonferroni" || s == "bon") return {MethodKind::bonferroni, ByCorrelation::positive};
    if (s == "holm") return {MethodKind::holm, ByCorrelation::positive};
    if (s == "hochberg" || s == "hoch") return {MethodKind::hochberg, ByCorrelation::positive};
    if (s == "sidak") return {MethodKind::sidak, ByCorrelation::positive};
    throw std::invalid_argument("unknown adjustment method: " + name);
}

std::string method_label(const AdjustmentMethod& m) {
    switch (m.kind) {
        case MethodKind::bh: return "BH";
        case MethodKind::by:
            return m.by_correlation == ByCorrelation::positive ? "BY(positive)"
                                                               : "BY(negative)";
        case MethodKind::bonferroni: return "Bonferroni";
        case MethodKind::holm: return "Holm";
        case MethodKind::hochberg: return "Hochberg";
        case MethodKind::sidak: return "Sidak";
    }
    return "?";
}

double harmonic_number(std::size_t m) {
    double c = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
        c += 1.0 / static_cast<double>(j);
    }
    return c;
}

MethodOutput compute_bh(const PValueSet& p, double pi0, const RankVector& ranks) {
    const double m = static_cast<double>(p.m());
    return stepped_output(p, pi0, ranks, /*step_up=*/true,
                          [m](double rank) { return m / rank; });
}

MethodOutput compute_by(const PValueSet& p, double pi0, const RankVector& ranks,
                        ByCorrelation /*corr*/) {
    // The same harmonic-sum constant is used for both correlation settings;
    // it is valid under arbitrary dependence, which covers the negative case.
    const double mc = static_cast<double>(p.m()) * harmonic_number(p.m());
    return stepped_output(p, pi0, ranks, /*step_up=*/true,
                          [mc](double rank) { return mc / rank; });
}

MethodOutput compute_holm(const PValueSet& p, double pi0, const RankVector& ranks) {
    const double m = static_cast<double>(p.m());
    return stepped_output(p, pi0, ranks, /*step_up=*/false,
                          [m](double rank) { return m + 1.0 - rank; });
}

MethodOutput compute_hochberg(const PValueSet& p, double pi0, const RankVector& ranks) {
    // same per-feature FDR as Holm; the envelope steps up instead of down
    const double m = static_cast<double>(p.m());
    return stepped_output(p, pi0, ranks, /*step_up=*/true,
                          [m](double rank) { return m + 1.0 - rank; });
}

MethodOutput compute_bonferroni(const PValueSet& p, double pi0) {
    check_pi0(pi0);
    if (p.m() == 0) throw std::invalid_argument("no p-values left after NA removal");
    const double m = static_cast<double>(p.m());
    MethodOutput out;
    out.adjusted_pvalues.assign(p.size(), kNaN);
    out.fdrs.assign(p.size(), kNaN);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.is_missing(i)) continue;
        out.adjusted_pvalues[i] = cap(p.value(i) * m);
        out.fdrs[i] = cap(p.value(i) * m * pi0);
    }
    return out;
}

MethodOutput compute_sidak(const PValueSet& p, double pi0) {
    check_pi0(pi0);
    if (p.m() == 0) throw std::invalid_argument("no p-values left after NA removal");
    const double m = static_cast<double>(p.m());
    MethodOutput out;
    out.adjusted_pvalues.assign(p.size(), kNaN);
    out.fdrs.assign(p.size(), kNaN);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.is_missing(i)) continue;
        const double v = p.value(i);
        // expm1/log1p keeps precision for small p; m = 1 is the identity
        const double base =
            p.m() == 1 ? v : (v == 1.0 ? 1.0 : -std::expm1(m * std::log1p(-v)));
        out.adjusted_pvalues[i] = cap(base);
        out.fdrs[i] = cap(base * pi0);
    }
    return out;
}

FdrResult p_fdr(const PValueSet& p, const PfdrOptions& options) {
    if (p.m() == 0) throw std::invalid_argument("no p-values left after NA removal");
    if (!(options.threshold >= 0.0 && options.threshold <= 1.0)) {
        throw std::invalid_argument("threshold must lie in [0, 1]");
    }

    FdrResult res;
    res.method = options.method;
    res.raw = p;
    res.threshold = options.threshold;
    res.pi0 = get_pi0(p, options.pi0).value;
    res.ranks = rank_with_ties(p, options.ties, options.seed);

    switch (options.method.kind) {
        case MethodKind::bh:
            res.output = compute_bh(p, res.pi0, res.ranks);
            break;
        case MethodKind::by:
            res.output = compute_by(p, res.pi0, res.ranks,
                                    options.method.by_correlation);
            break;
        case MethodKind::bonferroni:
            res.output = compute_bonferroni(p, res.pi0);
            break;
        case MethodKind::holm:
            res.output = compute_holm(p, res.pi0, res.ranks);
            break;
        case MethodKind::hochberg:
            res.output = compute_hochberg(p, res.pi0, res.ranks);
            break;
        case MethodKind::sidak:
            res.output = compute_sidak(p, res.pi0);
            break;
    }

    res.reject.assign(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p.is_missing(i)) {
            res.reject[i] = res.output.adjusted_pvalues[i] <= options.threshold;
        }
    }

    res.order.resize(p.size());
    std::iota(res.order.begin(), res.order.end(), std::size_t{0});

    if (options.sort_results) {
        std::vector<std::size_t> perm(p.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            const double fa = res.output.fdrs[a];
            const double fb = res.output.fdrs[b];
            if (std::isnan(fa)) return false;  // missing rows sink to the end
            if (std::isnan(fb)) return true;
            return fa < fb;
        });
        res.raw = res.raw.permuted(perm);
        res.order = perm;
        MethodOutput sorted_out;
        sorted_out.adjusted_pvalues.resize(p.size());
        sorted_out.fdrs.resize(p.size());
        std::vector<bool> sorted_reject(p.size());
        std::vector<double> sorted_ranks(p.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            sorted_out.adjusted_pvalues[i] = res.output.adjusted_pvalues[perm[i]];
            sorted_out.fdrs[i] = res.output.fdrs[perm[i]];
            sorted_reject[i] = res.reject[perm[i]];
            sorted_ranks[i] = res.ranks.ranks[perm[i]];
        }
        res.output = std::move(sorted_out);
        res.reject = std::move(sorted_reject);
        res.ranks.ranks = std::move(sorted_ranks);
    }

    if (options.just_fdr) {
        res.output.adjusted_pvalues.clear();
        res.reject.clear();
    }
    return res;
}

}  // namespace fdrest
