// Validated p-value sets, rank computation with tie policies, and
// p-value <-> z-value transforms.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fdrest {

enum class Sidedness { two_sided, greater, less };

Sidedness parse_sidedness(const std::string& s);  // "two.sided" | "greater" | "less"
std::string sidedness_label(Sidedness s);

enum class TiePolicy { first, last, average, min, max, random };

TiePolicy parse_tie_policy(const std::string& s);
std::string tie_policy_label(TiePolicy t);

// Raw p-values with optional feature ids and a missing-value mask.
// Non-missing entries are validated to lie in [0, 1]. With na_remove
// (the default) missing entries are dropped at construction; otherwise
// they are retained, masked, and never counted toward m.
class PValueSet {
public:
    PValueSet() = default;  // empty set, m() == 0

    static PValueSet from_values(std::vector<double> values,
                                 std::vector<std::string> ids = {},
                                 bool na_remove = true);

    std::size_t size() const { return values_.size(); }  // entries incl. missing
    std::size_t m() const { return m_; }                 // non-missing count

    double value(std::size_t i) const { return values_[i]; }
    bool is_missing(std::size_t i) const { return na_mask_[i]; }
    bool has_ids() const { return !ids_.empty(); }

    const std::vector<double>& values() const { return values_; }
    const std::vector<bool>& na_mask() const { return na_mask_; }
    const std::vector<std::string>& ids() const { return ids_; }

    // indices of non-missing entries, in input order
    std::vector<std::size_t> present_indices() const;

    // reorder all aligned sequences; perm must be a permutation of 0..size()-1
    PValueSet permuted(const std::vector<std::size_t>& perm) const;

private:
    std::vector<double> values_;
    std::vector<std::string> ids_;
    std::vector<bool> na_mask_;
    std::size_t m_ = 0;
};

// Rank values aligned to PValueSet order; missing entries hold NaN.
// Average ranks are fractional, hence double.
struct RankVector {
    std::vector<double> ranks;
    TiePolicy policy = TiePolicy::random;
    std::uint64_t seed = 0;
};

// Ranks ascending in p; ties resolved per policy. The random policy is
// deterministic for a fixed seed. Throws on empty input (m == 0).
RankVector rank_with_ties(const PValueSet& p, TiePolicy policy,
                          std::uint64_t seed = 0);

// z_i = Phi^{-1}(1 - p/2) (two-sided), Phi^{-1}(1 - p) (greater),
// Phi^{-1}(p) (less). p = 0 has no finite z and raises std::domain_error,
// as do one-sided transforms at p = 1.
double p_to_z(double p, Sidedness sidedness);
double z_to_p(double z, Sidedness sidedness);

struct ZValueSet {
    std::vector<double> values;  // NaN at missing entries
    Sidedness sidedness = Sidedness::two_sided;
};

ZValueSet p_to_z(const PValueSet& p, Sidedness sidedness);

}  // namespace fdrest
