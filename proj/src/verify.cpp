#include "facloc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "facloc/instance_io.hpp"
#include "facloc/oracle.hpp"

namespace facloc {

using nlohmann::json;

namespace {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first
/// exception thrown by any task is rethrown on the caller's thread.
template <class Fn>
void run_chunks(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    const std::size_t thread_count = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    for (std::size_t t = 0; t < thread_count; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
}

Solution apply_checked(const Mechanism& mechanism, const LineInstance& instance) {
    const Solution z = mechanism(instance);
    if (!is_feasible(instance, z)) {
        throw std::logic_error("mechanism " + mechanism.name + " returned infeasible " + to_string(z) + " on " +
                               dump_instance(instance));
    }
    return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// Strategyproofness

std::optional<SPViolation> check_strategyproof(const Mechanism& mechanism, const LineInstance& instance,
                                               PrefDomain domain) {
    const Solution truthful = apply_checked(mechanism, instance);
    const auto reports = domain_pairs(domain);
    for (int i = 0; i < instance.n(); ++i) {
        const Agent& agent = instance.agent(i);
        const std::int64_t true_cost = cost_of(agent.pos, agent.prefs, truthful);
        if (true_cost == 0) continue;
        for (const ApprovalPair lie : reports) {
            if (lie == agent.prefs) continue;
            const Solution deviated = apply_checked(mechanism, instance.with_report(i, lie));
            const std::int64_t deviated_cost = cost_of(agent.pos, agent.prefs, deviated);
            if (deviated_cost < true_cost) {
                return SPViolation{instance, i, lie, true_cost, deviated_cost, truthful, deviated};
            }
        }
    }
    return std::nullopt;
}

bool replay_violation(const Mechanism& mechanism, const SPViolation& violation) {
    const Agent& agent = violation.instance.agent(violation.agent_index);
    const Solution truthful = mechanism(violation.instance);
    const Solution deviated = mechanism(violation.instance.with_report(violation.agent_index, violation.misreport));
    const std::int64_t true_cost = cost_of(agent.pos, agent.prefs, truthful);
    const std::int64_t deviated_cost = cost_of(agent.pos, agent.prefs, deviated);
    return true_cost == violation.true_cost && deviated_cost == violation.deviated_cost &&
           deviated_cost < true_cost;
}

SPSweepReport sp_sweep(const Mechanism& mechanism, const EnumerationFamily& family, std::size_t keep, int jobs) {
    const auto chunks = partition(family);
    std::vector<SPSweepReport> partial(chunks.size());
    run_chunks(chunks.size(), jobs, [&](std::size_t c) {
        SPSweepReport& part = partial[c];
        for_each_in_chunk(chunks[c], family.domain, [&](const LineInstance& inst, std::uint64_t) {
            if (!mechanism.accepts(inst)) {
                ++part.instances_skipped;
                return;
            }
            ++part.instances_checked;
            if (auto v = check_strategyproof(mechanism, inst, family.domain)) {
                ++part.violation_count;
                if (part.violations.size() < keep) part.violations.push_back(std::move(*v));
            }
        });
    });
    SPSweepReport report;
    report.mechanism = mechanism.name;
    for (auto& part : partial) {
        report.instances_checked += part.instances_checked;
        report.instances_skipped += part.instances_skipped;
        report.violation_count += part.violation_count;
        for (auto& v : part.violations) {
            if (report.violations.size() < keep) report.violations.push_back(std::move(v));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Approximation ratios

Ratio Ratio::of(std::int64_t mechanism_value, std::int64_t optimal_value) {
    if (optimal_value == 0) {
        return mechanism_value == 0 ? Ratio(Rational(1)) : Ratio::unbounded();
    }
    return Ratio(Rational(mechanism_value, optimal_value));
}

bool Ratio::operator<(const Ratio& rhs) const {
    if (unbounded_) return false;
    if (rhs.unbounded_) return true;
    return value_ < rhs.value_;
}

void RatioReport::merge(const RatioReport& later) {
    instances_checked += later.instances_checked;
    instances_skipped += later.instances_skipped;
    if (later.witness && (!witness || later.max_ratio > max_ratio)) {
        max_ratio = later.max_ratio;
        witness = later.witness;
        witness_solution = later.witness_solution;
        witness_mech_value = later.witness_mech_value;
        witness_opt_value = later.witness_opt_value;
        witness_id = later.witness_id;
    }
}

namespace {

struct ChunkResult {
    RatioReport report;
    std::vector<RatioRow> rows;
};

void evaluate_into(const Mechanism& mechanism, ObjectiveKind objective, const LineInstance& inst, std::uint64_t id,
                   ChunkResult& out, bool keep_rows) {
    if (!mechanism.accepts(inst)) {
        ++out.report.instances_skipped;
        return;
    }
    const Solution z = apply_checked(mechanism, inst);
    const std::int64_t mech_value = objective_value(objective, inst, z);
    const std::int64_t opt_value = optimal_cost(inst, objective).value;
    const Ratio ratio = Ratio::of(mech_value, opt_value);
    RatioReport& r = out.report;
    ++r.instances_checked;
    if (!r.witness || ratio > r.max_ratio) {
        r.max_ratio = ratio;
        r.witness = inst;
        r.witness_solution = z;
        r.witness_mech_value = mech_value;
        r.witness_opt_value = opt_value;
        r.witness_id = id;
    }
    if (keep_rows) out.rows.push_back({id, inst.m(), inst.n(), mech_value, opt_value, ratio});
}

}  // namespace

RatioReport ratio_sweep(const Mechanism& mechanism, ObjectiveKind objective, const EnumerationFamily& family,
                        const SweepOptions& options) {
    const auto chunks = partition(family);
    std::vector<ChunkResult> partial(chunks.size());
    const bool keep_rows = static_cast<bool>(options.on_row);
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    run_chunks(chunks.size(), options.jobs, [&](std::size_t c) {
        for_each_in_chunk(chunks[c], family.domain, [&](const LineInstance& inst, std::uint64_t id) {
            evaluate_into(mechanism, objective, inst, id, partial[c], keep_rows);
        });
        if (options.on_progress) {
            std::lock_guard lock(progress_mutex);
            options.on_progress(++done, chunks.size());
        }
    });
    RatioReport report;
    report.mechanism = mechanism.name;
    report.objective = objective;
    for (const auto& part : partial) {
        report.merge(part.report);
        if (keep_rows) {
            for (const auto& row : part.rows) options.on_row(row);
        }
    }
    return report;
}

RatioReport ratio_sweep(const Mechanism& mechanism, ObjectiveKind objective, std::span<const LineInstance> instances) {
    ChunkResult result;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        evaluate_into(mechanism, objective, instances[i], i, result, false);
    }
    result.report.mechanism = mechanism.name;
    result.report.objective = objective;
    return result.report;
}

std::string ratio_csv_header() { return "mechanism,objective,m,n,instance_id,mech_value,opt_value,ratio_num,ratio_den"; }

std::string ratio_csv_row(const std::string& mechanism, ObjectiveKind objective, const RatioRow& row) {
    std::ostringstream out;
    out << mechanism << ',' << to_string(objective) << ',' << row.m << ',' << row.n << ',' << row.instance_id << ','
        << row.mech_value << ',' << row.opt_value << ',';
    // unbounded ratios are written as 1/0
    if (row.ratio.is_unbounded()) {
        out << "1,0";
    } else {
        out << row.ratio.value().numerator() << ',' << row.ratio.value().denominator();
    }
    return out.str();
}

json to_json(const RatioReport& report) {
    json out{{"mechanism", report.mechanism},
             {"objective", to_string(report.objective)},
             {"max_ratio", report.max_ratio.to_string()},
             {"instances_checked", report.instances_checked},
             {"instances_skipped", report.instances_skipped}};
    if (!report.max_ratio.is_unbounded()) out["max_ratio_decimal"] = report.max_ratio.value().to_double();
    if (report.witness) {
        out["witness"] = {{"instance_id", report.witness_id},
                          {"instance", to_json(*report.witness)},
                          {"solution", to_json(report.witness_solution)},
                          {"mech_value", report.witness_mech_value},
                          {"opt_value", report.witness_opt_value}};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lower-bound search

namespace {

void require_shared_positions(const std::vector<LineInstance>& profiles) {
    if (profiles.empty()) {
        throw std::invalid_argument("profile family is empty");
    }
    const auto& first = profiles.front();
    for (const auto& p : profiles) {
        if (p.m() != first.m() || p.positions() != first.positions()) {
            throw std::invalid_argument("profile family mixes position profiles: " + dump_instance(first) + " vs " +
                                        dump_instance(p));
        }
    }
}

/// Index of the only agent whose report differs, or -1.
int single_deviator(const LineInstance& a, const LineInstance& b) {
    int who = -1;
    for (int i = 0; i < a.n(); ++i) {
        if (a.agent(i).prefs != b.agent(i).prefs) {
            if (who >= 0) return -1;
            who = i;
        }
    }
    return who;
}

bool within_cap(const Ratio& ratio, const Rational& bound, bool strict) {
    const Ratio cap(bound);
    return strict ? ratio < cap : ratio <= cap;
}

class TableSearch {
public:
    TableSearch(ObjectiveKind objective, const Rational& bound, const std::vector<LineInstance>& profiles,
                const ChainSearchOptions& options)
        : profiles_(profiles) {
        const std::size_t count = profiles.size();
        candidates_.resize(count);
        for (std::size_t p = 0; p < count; ++p) {
            const LineInstance& inst = profiles[p];
            const std::int64_t opt = optimal_cost(inst, objective).value;
            const bool pinned = p < options.pinned.size() && !options.pinned[p].empty();
            for (int z1 = 1; z1 <= inst.m(); ++z1) {
                for (int z2 = 1; z2 <= inst.m(); ++z2) {
                    if (z1 == z2) continue;
                    const Solution z{z1, z2};
                    if (pinned && std::find(options.pinned[p].begin(), options.pinned[p].end(), z) ==
                                      options.pinned[p].end()) {
                        continue;
                    }
                    if (within_cap(Ratio::of(objective_value(objective, inst, z), opt), bound, options.strict)) {
                        candidates_[p].push_back(z);
                    }
                }
            }
        }
        neighbours_.resize(count);
        for (std::size_t p = 0; p < count; ++p) {
            for (std::size_t q = p + 1; q < count; ++q) {
                const int agent = single_deviator(profiles[p], profiles[q]);
                if (agent < 0) continue;
                const std::size_t edge = compat_.size();
                compat_.push_back(build_compat(p, q, agent));
                neighbours_[p].push_back({q, edge, false});
                neighbours_[q].push_back({p, edge, true});
            }
        }
    }

    TableSearchResult run() {
        TableSearchResult result;
        result.profiles = profiles_;
        for (const auto& c : candidates_) result.candidate_counts.push_back(c.size());
        result.sp_edges = compat_.size();

        alive_.assign(candidates_.size(), {});
        for (std::size_t p = 0; p < candidates_.size(); ++p) alive_[p].assign(candidates_[p].size(), 1);
        assignment_.assign(candidates_.size(), kUnassigned);
        const bool found = std::all_of(candidates_.begin(), candidates_.end(),
                                       [](const auto& c) { return !c.empty(); }) &&
                           search(0);
        result.satisfiable = found;
        result.nodes = nodes_;
        if (found) {
            for (std::size_t p = 0; p < candidates_.size(); ++p) result.table.push_back(candidates_[p][assignment_[p]]);
        }
        return result;
    }

private:
    static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

    struct Neighbour {
        std::size_t other;
        std::size_t edge;
        bool reversed;  ///< compat_[edge] is indexed [other][self]
    };

    using Matrix = std::vector<std::vector<char>>;

    /// compat[a][b]: p -> candidates_[p][a] and q -> candidates_[q][b] leave
    /// the deviating agent no gain in either direction.
    Matrix build_compat(std::size_t p, std::size_t q, int agent) const {
        const int pos = profiles_[p].agent(agent).pos;
        const ApprovalPair prefs_p = profiles_[p].agent(agent).prefs;
        const ApprovalPair prefs_q = profiles_[q].agent(agent).prefs;
        Matrix m(candidates_[p].size(), std::vector<char>(candidates_[q].size(), 0));
        for (std::size_t a = 0; a < candidates_[p].size(); ++a) {
            for (std::size_t b = 0; b < candidates_[q].size(); ++b) {
                const Solution& zp = candidates_[p][a];
                const Solution& zq = candidates_[q][b];
                m[a][b] = cost_of(pos, prefs_p, zp) <= cost_of(pos, prefs_p, zq) &&
                          cost_of(pos, prefs_q, zq) <= cost_of(pos, prefs_q, zp);
            }
        }
        return m;
    }

    bool compatible(const Neighbour& nb, std::size_t self_value, std::size_t other_value) const {
        return nb.reversed ? compat_[nb.edge][other_value][self_value] != 0
                           : compat_[nb.edge][self_value][other_value] != 0;
    }

    bool search(std::size_t var) {
        if (var == candidates_.size()) return true;
        for (std::size_t value = 0; value < candidates_[var].size(); ++value) {
            if (!alive_[var][value]) continue;
            ++nodes_;
            assignment_[var] = value;
            std::vector<std::pair<std::size_t, std::size_t>> pruned;
            bool wiped_out = false;
            for (const auto& nb : neighbours_[var]) {
                if (assignment_[nb.other] != kUnassigned) continue;
                bool any_left = false;
                for (std::size_t w = 0; w < candidates_[nb.other].size(); ++w) {
                    if (!alive_[nb.other][w]) continue;
                    if (compatible(nb, value, w)) {
                        any_left = true;
                    } else {
                        alive_[nb.other][w] = 0;
                        pruned.emplace_back(nb.other, w);
                    }
                }
                if (!any_left) {
                    wiped_out = true;
                    break;
                }
            }
            if (!wiped_out && search(var + 1)) return true;
            for (const auto& [p, w] : pruned) alive_[p][w] = 1;
            assignment_[var] = kUnassigned;
        }
        return false;
    }

    const std::vector<LineInstance>& profiles_;
    std::vector<std::vector<Solution>> candidates_;
    std::vector<Matrix> compat_;
    std::vector<std::vector<Neighbour>> neighbours_;
    std::vector<std::vector<char>> alive_;
    std::vector<std::size_t> assignment_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

TableSearchResult proof_chain_search(ObjectiveKind objective, const Rational& bound,
                                     const std::vector<LineInstance>& profiles, const ChainSearchOptions& options) {
    require_shared_positions(profiles);
    TableSearch search(objective, bound, profiles, options);
    TableSearchResult result = search.run();
    result.objective = objective;
    result.bound = bound;
    result.strict = options.strict;
    return result;
}

std::optional<std::string> check_table(ObjectiveKind objective, const Rational& bound, bool strict,
                                       const std::vector<LineInstance>& profiles,
                                       const std::vector<Solution>& table) {
    if (table.size() != profiles.size()) {
        return "table has " + std::to_string(table.size()) + " entries for " + std::to_string(profiles.size()) +
               " profiles";
    }
    for (std::size_t p = 0; p < profiles.size(); ++p) {
        if (!is_feasible(profiles[p], table[p])) {
            return "entry " + std::to_string(p) + " is infeasible";
        }
        const Ratio ratio = Ratio::of(objective_value(objective, profiles[p], table[p]),
                                      optimal_cost(profiles[p], objective).value);
        if (!within_cap(ratio, bound, strict)) {
            return "entry " + std::to_string(p) + " has ratio " + ratio.to_string() + " against cap " +
                   bound.to_string();
        }
    }
    for (std::size_t p = 0; p < profiles.size(); ++p) {
        for (std::size_t q = 0; q < profiles.size(); ++q) {
            if (p == q) continue;
            const int i = single_deviator(profiles[p], profiles[q]);
            if (i < 0) continue;
            const Agent& agent = profiles[p].agent(i);
            if (cost_of(agent.pos, agent.prefs, table[q]) < cost_of(agent.pos, agent.prefs, table[p])) {
                return "agent " + std::to_string(i) + " of profile " + std::to_string(p) + " gains by reporting " +
                       to_string(profiles[q].agent(i).prefs);
            }
        }
    }
    return std::nullopt;
}

json to_json(const TableSearchResult& result) {
    json out{{"objective", to_string(result.objective)},
             {"bound", result.bound.to_string()},
             {"strict", result.strict},
             {"result", result.satisfiable ? "SAT" : "UNSAT"},
             {"profiles", result.profiles.size()},
             {"sp_edges", result.sp_edges},
             {"nodes", result.nodes},
             {"candidate_counts", result.candidate_counts}};
    if (result.satisfiable) {
        json table = json::array();
        for (std::size_t p = 0; p < result.table.size(); ++p) {
            table.push_back({{"instance", to_json(result.profiles[p])}, {"solution", to_json(result.table[p])}});
        }
        out["table"] = std::move(table);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lemma checks

namespace {

void record_failure(LemmaReport& report, const std::string& what) {
    ++report.failures;
    if (!report.first_failure) report.first_failure = what;
}

}  // namespace

LemmaReport check_sc_lower_bound_lemma(const EnumerationFamily& family) {
    LemmaReport report{"sc_lower_bound <= SC*", 0, 0, std::nullopt, std::nullopt};
    for_each_instance(family, [&](const LineInstance& inst, std::uint64_t) {
        ++report.checked;
        const Rational lower = sc_lower_bound(inst.approver_count(1), inst.approver_count(2));
        const std::int64_t opt = optimal_cost(inst, ObjectiveKind::SocialCost).value;
        if (lower > Rational(opt)) {
            record_failure(report, dump_instance(inst) + ": bound " + lower.to_string() + " > SC* " +
                                       std::to_string(opt));
        }
    });
    return report;
}

LemmaReport check_mc_pair_lemma(const EnumerationFamily& family) {
    LemmaReport report{"mc_lower_bound_pair <= MC*", 0, 0, std::nullopt, std::nullopt};
    for_each_instance(family, [&](const LineInstance& inst, std::uint64_t) {
        const Rational opt(optimal_cost(inst, ObjectiveKind::MaxCost).value);
        for (int i = 0; i < inst.n(); ++i) {
            for (int j = i + 1; j < inst.n(); ++j) {
                const ApprovalPair a = inst.agent(i).prefs;
                const ApprovalPair b = inst.agent(j).prefs;
                const int q = (a.f1 && b.f1 ? 1 : 0) + (a.f2 && b.f2 ? 1 : 0);
                ++report.checked;
                const Rational lower = mc_lower_bound_pair(inst.agent(i).pos, inst.agent(j).pos, q);
                if (lower > opt) {
                    record_failure(report, dump_instance(inst) + ": agents " + std::to_string(i) + "," +
                                               std::to_string(j) + " bound " + lower.to_string() + " > MC* " +
                                               opt.to_string());
                }
            }
        }
    });
    return report;
}

LemmaReport check_mc_triple_lemma(const EnumerationFamily& family) {
    LemmaReport report{"mc_lower_bound_triple <= MC*", 0, 0, std::nullopt, std::nullopt};
    for_each_instance(family, [&](const LineInstance& inst, std::uint64_t) {
        std::optional<std::int64_t> opt;
        for (int i = 0; i < inst.n(); ++i) {
            if (!inst.agent(i).prefs.approves_both()) continue;
            for (int j = i + 1; j < inst.n(); ++j) {
                if (!inst.agent(j).prefs.f1) continue;
                for (int k = j + 1; k < inst.n(); ++k) {
                    if (!inst.agent(k).prefs.f2) continue;
                    if (!opt) opt = optimal_cost(inst, ObjectiveKind::MaxCost).value;
                    ++report.checked;
                    const std::int64_t lower =
                        mc_lower_bound_triple(inst.agent(i).pos, inst.agent(j).pos, inst.agent(k).pos);
                    if (lower > *opt) {
                        record_failure(report, dump_instance(inst) + ": bound " + std::to_string(lower) +
                                                   " > MC* " + std::to_string(*opt));
                    }
                }
            }
        }
    });
    return report;
}

LemmaReport check_technical_lemma(int cap) {
    LemmaReport report{"technical_lemma_value <= 13/4", 0, 0, std::nullopt, std::nullopt};
    const Rational limit(13, 4);
    std::optional<Rational> best;
    int best_x = 0;
    int best_y = 0;
    for (int x = 0; x <= cap; ++x) {
        for (int y = 0; y <= cap; ++y) {
            if (x + y < 6) continue;
            ++report.checked;
            const Rational value = technical_lemma_value(x, y);
            if (!best || value > *best) {
                best = value;
                best_x = x;
                best_y = y;
            }
            if (value > limit) {
                record_failure(report, "f(" + std::to_string(x) + "," + std::to_string(y) + ") = " + value.to_string());
            }
        }
    }
    if (best) {
        report.note = "max " + best->to_string() + " first at (" + std::to_string(best_x) + "," +
                      std::to_string(best_y) + ")";
    }
    return report;
}

}  // namespace facloc
