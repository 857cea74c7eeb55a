// Test-only oracles: deliberately naive implementations, independent of
// the library code paths they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracles {

// min over j >= i of values[j], literal O(m^2) scan
inline std::vector<double> suffix_min(const std::vector<double>& values) {
    const std::size_t m = values.size();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double best = values[i];
        for (std::size_t j = i + 1; j < m; ++j) best = std::min(best, values[j]);
        out[i] = best;
    }
    return out;
}

// max over j <= i of values[j], literal O(m^2) scan
inline std::vector<double> prefix_max(const std::vector<double>& values) {
    const std::size_t m = values.size();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double best = values[0];
        for (std::size_t j = 1; j <= i; ++j) best = std::max(best, values[j]);
        out[i] = best;
    }
    return out;
}

inline std::vector<std::size_t> ascending_order(const std::vector<double>& p) {
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    return order;
}

// adjusted p-values from scale(j) applied at sorted position j, enveloped
// by the naive suffix-min (step-up) or prefix-max (step-down) scan
template <typename ScaleFn>
std::vector<double> adjusted_oracle(const std::vector<double>& p, bool step_up,
                                    ScaleFn scale) {
    const auto order = ascending_order(p);
    const std::size_t m = p.size();
    std::vector<double> scaled(m);
    for (std::size_t j = 0; j < m; ++j) {
        scaled[j] = p[order[j]] * scale(static_cast<double>(j + 1));
    }
    const auto env = step_up ? suffix_min(scaled) : prefix_max(scaled);
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        out[order[j]] = std::min(1.0, env[j]);
    }
    return out;
}

// direct evaluation of the step-up selection rule: find the largest k with
// p_(k) <= gamma k / m, select the k smallest p-values
inline std::set<std::size_t> bh_select_oracle(const std::vector<double>& p,
                                              double gamma) {
    const auto order = ascending_order(p);
    const std::size_t m = p.size();
    std::size_t k = 0;
    for (std::size_t j = 1; j <= m; ++j) {
        if (p[order[j - 1]] <= gamma * static_cast<double>(j) / static_cast<double>(m)) {
            k = j;
        }
    }
    std::set<std::size_t> selected;
    for (std::size_t j = 0; j < k; ++j) selected.insert(order[j]);
    return selected;
}

// tie-group ranks: enumerate groups of equal values, assign the group
// minimum / maximum / mean of the occupied 1-based sorted positions
enum class GroupRank { min, max, average };

inline std::vector<double> group_rank_oracle(const std::vector<double>& p,
                                             GroupRank mode) {
    const auto order = ascending_order(p);
    const std::size_t m = p.size();
    std::vector<double> ranks(m, 0.0);
    std::size_t g = 0;
    while (g < m) {
        std::size_t h = g + 1;
        while (h < m && p[order[h]] == p[order[g]]) ++h;
        double r = 0.0;
        switch (mode) {
            case GroupRank::min: r = static_cast<double>(g + 1); break;
            case GroupRank::max: r = static_cast<double>(h); break;
            case GroupRank::average:
                r = 0.5 * static_cast<double>(g + 1 + h);
                break;
        }
        for (std::size_t j = g; j < h; ++j) ranks[order[j]] = r;
        g = h;
    }
    return ranks;
}

inline double harmonic_direct(std::size_t m) {
    double c = 0.0;
    for (std::size_t j = 1; j <= m; ++j) c += 1.0 / static_cast<double>(j);
    return c;
}

// composite Simpson quadrature
template <typename Fn>
double simpson(Fn f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

// random p-vector with a controllable share of duplicated (tied) entries
inline std::vector<double> random_pvector(std::mt19937_64& gen, std::size_t m,
                                          bool with_ties) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> p(m);
    for (auto& v : p) v = unif(gen);
    if (with_ties && m >= 2) {
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        const std::size_t dups = m / 4 + 1;
        for (std::size_t d = 0; d < dups; ++d) {
            p[pick(gen)] = p[pick(gen)];
        }
    }
    return p;
}

}  // namespace oracles
