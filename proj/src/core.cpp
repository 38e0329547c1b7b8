#include "facloc/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace facloc {

std::string to_string(ApprovalPair prefs) {
    if (prefs.approves_both()) return "both";
    if (prefs.f1) return "f1";
    if (prefs.f2) return "f2";
    return "none";
}

std::vector<ApprovalPair> domain_pairs(PrefDomain domain) {
    std::vector<ApprovalPair> pairs{{true, false}, {false, true}, {true, true}};
    if (domain == PrefDomain::Full) {
        pairs.push_back({false, false});
    }
    return pairs;
}

LineInstance::LineInstance(int m, std::vector<Agent> agents) : m_(m), agents_(std::move(agents)) {
    const int n = static_cast<int>(agents_.size());
    if (n < 2) {
        throw DomainError("instance needs at least 2 agents (n = " + std::to_string(n) + ")");
    }
    if (n > m_) {
        throw DomainError("more agents than nodes (n = " + std::to_string(n) + ", m = " + std::to_string(m_) + ")");
    }
    for (int i = 0; i < n; ++i) {
        const int pos = agents_[static_cast<std::size_t>(i)].pos;
        if (pos < 1 || pos > m_) {
            throw DomainError("agent " + std::to_string(i) + " at node " + std::to_string(pos) +
                              " lies outside [1, " + std::to_string(m_) + "]");
        }
        if (i > 0 && agents_[static_cast<std::size_t>(i - 1)].pos >= pos) {
            throw DomainError("agent positions must be strictly increasing (agent " + std::to_string(i) +
                              " at node " + std::to_string(pos) + ")");
        }
    }
}

bool LineInstance::is_occupied(int node) const {
    return std::binary_search(agents_.begin(), agents_.end(), Agent{node, {}},
                              [](const Agent& a, const Agent& b) { return a.pos < b.pos; });
}

std::vector<int> LineInstance::positions() const {
    std::vector<int> out;
    out.reserve(agents_.size());
    for (const auto& a : agents_) out.push_back(a.pos);
    return out;
}

std::vector<int> LineInstance::approver_positions(int facility) const {
    std::vector<int> out;
    for (const auto& a : agents_) {
        if (a.prefs.approves(facility)) out.push_back(a.pos);
    }
    return out;
}

int LineInstance::approver_count(int facility) const {
    return static_cast<int>(std::count_if(agents_.begin(), agents_.end(),
                                          [facility](const Agent& a) { return a.prefs.approves(facility); }));
}

LineInstance LineInstance::with_report(int index, ApprovalPair prefs) const {
    LineInstance copy = *this;
    copy.agents_.at(static_cast<std::size_t>(index)).prefs = prefs;
    return copy;
}

void LineInstance::check_domain(PrefDomain domain) const {
    if (domain == PrefDomain::Full) return;
    for (int i = 0; i < n(); ++i) {
        if (!agents_[static_cast<std::size_t>(i)].prefs.approves_any()) {
            throw DomainError("agent " + std::to_string(i) + " approves no facility (pass --allow-empty-prefs)");
        }
    }
}

bool LineInstance::in_domain(PrefDomain domain) const {
    return domain == PrefDomain::Full ||
           std::all_of(agents_.begin(), agents_.end(), [](const Agent& a) { return a.prefs.approves_any(); });
}

std::string to_string(const Solution& solution) {
    return "(" + std::to_string(solution.z1) + "," + std::to_string(solution.z2) + ")";
}

bool is_feasible(const LineInstance& instance, const Solution& solution) {
    return solution.z1 != solution.z2 && solution.z1 >= 1 && solution.z1 <= instance.m() && solution.z2 >= 1 &&
           solution.z2 <= instance.m();
}

void require_feasible(const LineInstance& instance, const Solution& solution) {
    if (!is_feasible(instance, solution)) {
        throw std::invalid_argument("infeasible solution " + to_string(solution) + " on a line of " +
                                    std::to_string(instance.m()) + " nodes");
    }
}

std::string to_string(ObjectiveKind objective) { return objective == ObjectiveKind::SocialCost ? "sc" : "mc"; }

ObjectiveKind parse_objective(const std::string& text) {
    if (text == "sc") return ObjectiveKind::SocialCost;
    if (text == "mc") return ObjectiveKind::MaxCost;
    throw std::invalid_argument("unknown objective '" + text + "' (expected sc or mc)");
}

std::int64_t cost_of(int pos, ApprovalPair prefs, const Solution& solution) {
    std::int64_t cost = 0;
    if (prefs.f1) cost += std::abs(pos - solution.z1);
    if (prefs.f2) cost += std::abs(pos - solution.z2);
    return cost;
}

std::int64_t agent_cost(const LineInstance& instance, int agent_index, const Solution& solution) {
    if (agent_index < 0 || agent_index >= instance.n()) {
        throw std::invalid_argument("agent index " + std::to_string(agent_index) + " out of range");
    }
    require_feasible(instance, solution);
    const Agent& a = instance.agent(agent_index);
    return cost_of(a.pos, a.prefs, solution);
}

std::int64_t social_cost(const LineInstance& instance, const Solution& solution) {
    require_feasible(instance, solution);
    std::int64_t total = 0;
    for (const auto& a : instance.agents()) total += cost_of(a.pos, a.prefs, solution);
    return total;
}

std::int64_t max_cost(const LineInstance& instance, const Solution& solution) {
    require_feasible(instance, solution);
    std::int64_t worst = 0;
    for (const auto& a : instance.agents()) worst = std::max(worst, cost_of(a.pos, a.prefs, solution));
    return worst;
}

std::int64_t objective_value(ObjectiveKind objective, const LineInstance& instance, const Solution& solution) {
    return objective == ObjectiveKind::SocialCost ? social_cost(instance, solution) : max_cost(instance, solution);
}

Window occupied_window(const LineInstance& instance) {
    const int first = instance.agents().front().pos;
    const int last = instance.agents().back().pos;
    const int offset = first - 1;
    if (offset == 0 && last == instance.m()) {
        return {instance, 0};
    }
    std::vector<Agent> shifted = instance.agents();
    for (auto& a : shifted) a.pos -= offset;
    return {LineInstance(last - offset, std::move(shifted)), offset};
}

LineInstance mirror_instance(const LineInstance& instance) {
    const int m = instance.m();
    std::vector<Agent> reflected(instance.agents().rbegin(), instance.agents().rend());
    for (auto& a : reflected) a.pos = m + 1 - a.pos;
    return LineInstance(m, std::move(reflected));
}

Solution mirror_solution(int m, const Solution& solution) { return {m + 1 - solution.z1, m + 1 - solution.z2}; }

}  // namespace facloc
