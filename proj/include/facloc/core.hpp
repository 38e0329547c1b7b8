#ifndef FACLOC_CORE_HPP
#define FACLOC_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace facloc {

/// Raised when an instance or solution falls outside the model, e.g.
/// unsorted positions, too few agents, or a preference outside the active
/// domain. The message names the violated invariant.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Which facilities an agent approves.
struct ApprovalPair {
    bool f1 = false;
    bool f2 = false;

    bool approves(int facility) const { return facility == 1 ? f1 : f2; }
    bool approves_any() const { return f1 || f2; }
    bool approves_both() const { return f1 && f2; }

    /// Two-bit code: f1 is bit 0, f2 is bit 1.
    int code() const { return (f1 ? 1 : 0) | (f2 ? 2 : 0); }
    static ApprovalPair from_code(int code) { return {(code & 1) != 0, (code & 2) != 0}; }

    bool operator==(const ApprovalPair&) const = default;
};

/// "f1", "f2", "both" or "none".
std::string to_string(ApprovalPair prefs);

/// The set of approval pairs an agent may hold or report.
enum class PrefDomain {
    Approving,  ///< at least one facility approved (default)
    Full,       ///< all of {0,1}^2
};

/// Approval pairs of the domain in a fixed order: f1, f2, both[, none].
std::vector<ApprovalPair> domain_pairs(PrefDomain domain);

struct Agent {
    int pos = 0;  ///< 1-based node index
    ApprovalPair prefs;

    bool operator==(const Agent&) const = default;
};

/// A line of m nodes (1..m) with agents at distinct nodes, sorted by node.
class LineInstance {
public:
    LineInstance() = default;

    /// Checks the structural invariants: 2 <= n <= m, positions strictly
    /// increasing and inside [1, m]. Throws DomainError otherwise.
    LineInstance(int m, std::vector<Agent> agents);

    int m() const { return m_; }
    int n() const { return static_cast<int>(agents_.size()); }
    const std::vector<Agent>& agents() const { return agents_; }
    const Agent& agent(int index) const { return agents_.at(static_cast<std::size_t>(index)); }

    bool has_empty_nodes() const { return n() < m_; }
    bool is_occupied(int node) const;
    std::vector<int> positions() const;

    /// Positions of the agents that approve `facility` (1 or 2), ascending.
    std::vector<int> approver_positions(int facility) const;
    int approver_count(int facility) const;

    /// Copy with agent `index` reporting `prefs` instead; positions unchanged.
    LineInstance with_report(int index, ApprovalPair prefs) const;

    /// Throws DomainError if some agent's preference is outside `domain`.
    void check_domain(PrefDomain domain) const;
    bool in_domain(PrefDomain domain) const;

    bool operator==(const LineInstance&) const = default;

private:
    int m_ = 0;
    std::vector<Agent> agents_;
};

/// Facility 1 at node z1, facility 2 at node z2.
struct Solution {
    int z1 = 0;
    int z2 = 0;

    int facility(int j) const { return j == 1 ? z1 : z2; }

    auto operator<=>(const Solution&) const = default;
};

std::string to_string(const Solution& solution);

bool is_feasible(const LineInstance& instance, const Solution& solution);

/// Throws std::invalid_argument when z1 == z2 or a node is off the line.
void require_feasible(const LineInstance& instance, const Solution& solution);

enum class ObjectiveKind { SocialCost, MaxCost };

/// "sc" / "mc".
std::string to_string(ObjectiveKind objective);
ObjectiveKind parse_objective(const std::string& text);

/// Total distance from agent `agent_index` to the facilities it approves.
std::int64_t agent_cost(const LineInstance& instance, int agent_index, const Solution& solution);

/// Cost of an agent at `pos` holding `prefs`; no feasibility check.
std::int64_t cost_of(int pos, ApprovalPair prefs, const Solution& solution);

std::int64_t social_cost(const LineInstance& instance, const Solution& solution);
std::int64_t max_cost(const LineInstance& instance, const Solution& solution);
std::int64_t objective_value(ObjectiveKind objective, const LineInstance& instance, const Solution& solution);

/// The sub-line from the first to the last occupied node, re-indexed from 1.
/// Node k of `instance` corresponds to node k + offset of the original line.
struct Window {
    LineInstance instance;
    int offset = 0;

    Solution to_original(const Solution& solution) const {
        return {solution.z1 + offset, solution.z2 + offset};
    }
    Solution from_original(const Solution& solution) const {
        return {solution.z1 - offset, solution.z2 - offset};
    }
};

Window occupied_window(const LineInstance& instance);

/// Reflects the line: node x becomes m + 1 - x. An involution.
LineInstance mirror_instance(const LineInstance& instance);
Solution mirror_solution(int m, const Solution& solution);

}  // namespace facloc

#endif  // FACLOC_CORE_HPP
