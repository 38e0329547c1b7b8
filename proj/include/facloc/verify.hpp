#ifndef FACLOC_VERIFY_HPP
#define FACLOC_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "facloc/core.hpp"
#include "facloc/enumerate.hpp"
#include "facloc/mechanisms.hpp"
#include "facloc/rational.hpp"

namespace facloc {

// ---------------------------------------------------------------------------
// Strategyproofness

/// A profitable misreport: agent `agent_index` of `instance` lowers its true
/// cost from `true_cost` to `deviated_cost` by reporting `misreport`.
struct SPViolation {
    LineInstance instance;
    int agent_index = 0;
    ApprovalPair misreport;
    std::int64_t true_cost = 0;
    std::int64_t deviated_cost = 0;
    Solution truthful_outcome;
    Solution deviated_outcome;
};

/// Tries every agent and every alternative report in `domain`; returns the
/// first strict improvement (agents left to right, reports in domain order).
std::optional<SPViolation> check_strategyproof(const Mechanism& mechanism, const LineInstance& instance,
                                               PrefDomain domain = PrefDomain::Approving);

/// Re-evaluates both instances of a violation; true iff it reproduces a strict gain.
bool replay_violation(const Mechanism& mechanism, const SPViolation& violation);

struct SPSweepReport {
    std::string mechanism;
    std::uint64_t instances_checked = 0;
    std::uint64_t instances_skipped = 0;  ///< outside mechanism.accepts
    std::uint64_t violation_count = 0;
    std::vector<SPViolation> violations;  ///< first few, in enumeration order
};

SPSweepReport sp_sweep(const Mechanism& mechanism, const EnumerationFamily& family, std::size_t keep = 10,
                       int jobs = 1);

// ---------------------------------------------------------------------------
// Approximation ratios

/// A non-negative ratio, or +infinity (optimal value 0, mechanism value > 0).
class Ratio {
public:
    Ratio() = default;
    explicit Ratio(Rational value) : value_(value) {}
    static Ratio unbounded() {
        Ratio r;
        r.unbounded_ = true;
        return r;
    }
    /// 0/0 counts as 1.
    static Ratio of(std::int64_t mechanism_value, std::int64_t optimal_value);

    bool is_unbounded() const { return unbounded_; }
    const Rational& value() const { return value_; }

    bool operator==(const Ratio& rhs) const = default;
    bool operator<(const Ratio& rhs) const;
    bool operator>(const Ratio& rhs) const { return rhs < *this; }
    bool operator<=(const Ratio& rhs) const { return !(rhs < *this); }

    std::string to_string() const { return unbounded_ ? std::string("inf") : value_.to_string(); }

private:
    Rational value_{0};
    bool unbounded_ = false;
};

struct RatioRow {
    std::uint64_t instance_id = 0;
    int m = 0;
    int n = 0;
    std::int64_t mech_value = 0;
    std::int64_t opt_value = 0;
    Ratio ratio;
};

struct RatioReport {
    std::string mechanism;
    ObjectiveKind objective = ObjectiveKind::SocialCost;
    Ratio max_ratio{Rational(0)};
    std::optional<LineInstance> witness;  ///< first instance attaining max_ratio
    Solution witness_solution;
    std::int64_t witness_mech_value = 0;
    std::int64_t witness_opt_value = 0;
    std::uint64_t witness_id = 0;
    std::uint64_t instances_checked = 0;
    std::uint64_t instances_skipped = 0;

    /// Keeps the larger ratio; on ties keeps *this (the earlier instance).
    void merge(const RatioReport& later);
};

struct SweepOptions {
    int jobs = 1;
    /// Called once per evaluated instance, in enumeration order.
    std::function<void(const RatioRow&)> on_row;
    /// Called after each finished chunk with (chunks done, chunks total).
    std::function<void(std::size_t, std::size_t)> on_progress;
};

RatioReport ratio_sweep(const Mechanism& mechanism, ObjectiveKind objective, const EnumerationFamily& family,
                        const SweepOptions& options = {});

/// Same over an explicit list; instance ids are list indices.
RatioReport ratio_sweep(const Mechanism& mechanism, ObjectiveKind objective, std::span<const LineInstance> instances);

/// CSV header and row used by the sweep output.
std::string ratio_csv_header();
std::string ratio_csv_row(const std::string& mechanism, ObjectiveKind objective, const RatioRow& row);

nlohmann::json to_json(const RatioReport& report);

// ---------------------------------------------------------------------------
// Lower-bound search over mechanism tables

struct ChainSearchOptions {
    /// Candidate solutions satisfy value < bound * optimum (strict) or <=.
    bool strict = true;
    /// Optional per-profile whitelist (empty inner vector = unrestricted).
    /// Used to pin without-loss-of-generality choices when replaying a proof.
    std::vector<std::vector<Solution>> pinned;
};

/// Outcome of searching for a strategyproof mechanism table whose ratio stays
/// under the bound on every profile of the family.
struct TableSearchResult {
    bool satisfiable = false;
    ObjectiveKind objective = ObjectiveKind::SocialCost;
    Rational bound;
    bool strict = true;
    std::vector<LineInstance> profiles;
    std::vector<Solution> table;  ///< one entry per profile when satisfiable
    std::vector<std::size_t> candidate_counts;
    std::size_t sp_edges = 0;  ///< profile pairs differing in one agent's report
    std::uint64_t nodes = 0;   ///< search nodes visited
};

/// Backtracking with forward checking over one solution per profile.
/// Variables and values are tried in order, so a SAT witness is the
/// lexicographically first table. Throws std::invalid_argument when the
/// profiles do not share one line size and position set.
TableSearchResult proof_chain_search(ObjectiveKind objective, const Rational& bound,
                                     const std::vector<LineInstance>& profiles,
                                     const ChainSearchOptions& options = {});

/// Independent replay of a table: feasibility, ratio cap on every profile, and
/// no profitable in-family misreport. Returns a description of the first
/// failure, or nullopt when the table passes.
std::optional<std::string> check_table(ObjectiveKind objective, const Rational& bound, bool strict,
                                       const std::vector<LineInstance>& profiles,
                                       const std::vector<Solution>& table);

nlohmann::json to_json(const TableSearchResult& result);

// ---------------------------------------------------------------------------
// Empirical checks of the analytic bounds

struct LemmaReport {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::optional<std::string> first_failure;
    std::optional<std::string> note;

    bool passed() const { return failures == 0; }
};

/// sc_lower_bound(n1, n2) <= SC* on every instance of the family.
LemmaReport check_sc_lower_bound_lemma(const EnumerationFamily& family);

/// Both max-cost bounds against MC*: every agent pair (with q shared
/// approvals) and every qualifying triple (both / f1 / f2, left to right).
LemmaReport check_mc_pair_lemma(const EnumerationFamily& family);
LemmaReport check_mc_triple_lemma(const EnumerationFamily& family);

/// technical_lemma_value(x, y) <= 13/4 for 0 <= x, y <= cap with x + y >= 6.
/// `note` records the maximum and where it is first attained.
LemmaReport check_technical_lemma(int cap);

}  // namespace facloc

#endif  // FACLOC_VERIFY_HPP
