#include "fdrest/pvalues.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fdrest/normal.hpp"

namespace fdrest {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

Sidedness parse_sidedness(const std::string& s) {
    if (s == "two.sided" || s == "two-sided") return Sidedness::two_sided;
    if (s == "greater") return Sidedness::greater;
    if (s == "less") return Sidedness::less;
    throw std::invalid_argument("unknown sidedness: " + s);
}

std::string sidedness_label(Sidedness s) {
    switch (s) {
        case Sidedness::two_sided: return "two.sided";
        case Sidedness::greater: return "greater";
        case Sidedness::less: return "less";
    }
    return "?";
}

TiePolicy parse_tie_policy(const std::string& s) {
    if (s == "first") return TiePolicy::first;
    if (s == "last") return TiePolicy::last;
    if (s == "average") return TiePolicy::average;
    if (s == "min") return TiePolicy::min;
    if (s == "max") return TiePolicy::max;
    if (s == "random") return TiePolicy::random;
    throw std::invalid_argument("unknown ties method: " + s);
}

std::string tie_policy_label(TiePolicy t) {
    switch (t) {
        case TiePolicy::first: return "first";
        case TiePolicy::last: return "last";
        case TiePolicy::average: return "average";
        case TiePolicy::min: return "min";
        case TiePolicy::max: return "max";
        case TiePolicy::random: return "random";
    }
    return "?";
}

PValueSet PValueSet::from_values(std::vector<double> values,
                                 std::vector<std::string> ids, bool na_remove) {
    if (!ids.empty() && ids.size() != values.size()) {
        throw std::invalid_argument("ids and values must have the same length");
    }
    for (double v : values) {
        if (!std::isnan(v) && (v < 0.0 || v > 1.0)) {
            throw std::invalid_argument("p-value outside [0, 1]");
        }
    }

    PValueSet out;
    if (na_remove) {
        out.values_.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (std::isnan(values[i])) continue;
            out.values_.push_back(values[i]);
            if (!ids.empty()) out.ids_.push_back(std::move(ids[i]));
        }
        out.na_mask_.assign(out.values_.size(), false);
        out.m_ = out.values_.size();
    } else {
        out.na_mask_.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            out.na_mask_[i] = std::isnan(values[i]);
        }
        out.m_ = static_cast<std::size_t>(
            std::count(out.na_mask_.begin(), out.na_mask_.end(), false));
        out.values_ = std::move(values);
        out.ids_ = std::move(ids);
    }
    return out;
}

std::vector<std::size_t> PValueSet::present_indices() const {
    std::vector<std::size_t> idx;
    idx.reserve(m_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!na_mask_[i]) idx.push_back(i);
    }
    return idx;
}

PValueSet PValueSet::permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != values_.size()) {
        throw std::invalid_argument("permutation length mismatch");
    }
    PValueSet out;
    out.values_.resize(values_.size());
    out.na_mask_.resize(values_.size());
    if (!ids_.empty()) out.ids_.resize(ids_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.values_[i] = values_[perm[i]];
        out.na_mask_[i] = na_mask_[perm[i]];
        if (!ids_.empty()) out.ids_[i] = ids_[perm[i]];
    }
    out.m_ = m_;
    return out;
}

RankVector rank_with_ties(const PValueSet& p, TiePolicy policy,
                          std::uint64_t seed) {
    const auto present = p.present_indices();
    if (present.empty()) {
        throw std::invalid_argument("rank_with_ties: no p-values left after NA removal");
    }

    // order of non-missing entries, stable so that "first" follows input order
    std::vector<std::size_t> order(present.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return p.value(present[a]) < p.value(present[b]);
    });

    RankVector rv;
    rv.policy = policy;
    rv.seed = seed;
    rv.ranks.assign(p.size(), kNaN);

    std::mt19937_64 gen(seed);

    std::size_t g = 0;
    while (g < order.size()) {
        std::size_t h = g + 1;
        const double v = p.value(present[order[g]]);
        while (h < order.size() && p.value(present[order[h]]) == v) ++h;
        // tie group occupies sorted positions g..h-1 (0-based)
        switch (policy) {
            case TiePolicy::first:
                for (std::size_t k = g; k < h; ++k)
                    rv.ranks[present[order[k]]] = static_cast<double>(k + 1);
                break;
            case TiePolicy::last:
                for (std::size_t k = g; k < h; ++k)
                    rv.ranks[present[order[k]]] = static_cast<double>(g + h - k);
                break;
            case TiePolicy::average: {
                const double avg = 0.5 * static_cast<double>(g + h + 1);
                for (std::size_t k = g; k < h; ++k)
                    rv.ranks[present[order[k]]] = avg;
                break;
            }
            case TiePolicy::min:
                for (std::size_t k = g; k < h; ++k)
                    rv.ranks[present[order[k]]] = static_cast<double>(g + 1);
                break;
            case TiePolicy::max:
                for (std::size_t k = g; k < h; ++k)
                    rv.ranks[present[order[k]]] = static_cast<double>(h);
                break;
            case TiePolicy::random: {
                std::vector<std::size_t> pos(h - g);
                std::iota(pos.begin(), pos.end(), g + 1);
                std::shuffle(pos.begin(), pos.end(), gen);
                for (std::size_t k = g; k < h; ++k)
                    rv.ranks[present[order[k]]] = static_cast<double>(pos[k - g]);
                break;
            }
        }
        g = h;
    }
    return rv;
}

double p_to_z(double p, Sidedness sidedness) {
    if (std::isnan(p)) return kNaN;
    if (p <= 0.0) {
        throw std::domain_error("p_to_z: p = 0 has no finite z-value");
    }
    if (p > 1.0) throw std::domain_error("p_to_z: p > 1");
    switch (sidedness) {
        case Sidedness::two_sided:
            // equals Phi^{-1}(1 - p/2); evaluated in the lower tail for accuracy
            return -inv_norm_cdf(0.5 * p) + 0.0;  // +0.0 normalizes -0 at p = 1
        case Sidedness::greater:
            if (p == 1.0) throw std::domain_error("p_to_z: one-sided p = 1 has no finite z-value");
            return -inv_norm_cdf(p);
        case Sidedness::less:
            if (p == 1.0) throw std::domain_error("p_to_z: one-sided p = 1 has no finite z-value");
            return inv_norm_cdf(p);
    }
    return kNaN;
}

double z_to_p(double z, Sidedness sidedness) {
    if (std::isnan(z)) return kNaN;
    switch (sidedness) {
        case Sidedness::two_sided:
            return std::erfc(std::fabs(z) / 1.4142135623730951);
        case Sidedness::greater:
            return norm_cdf(-z);
        case Sidedness::less:
            return norm_cdf(z);
    }
    return kNaN;
}

ZValueSet p_to_z(const PValueSet& p, Sidedness sidedness) {
    ZValueSet out;
    out.sidedness = sidedness;
    out.values.assign(p.size(), kNaN);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p.is_missing(i)) out.values[i] = p_to_z(p.value(i), sidedness);
    }
    return out;
}

}  // namespace fdrest
