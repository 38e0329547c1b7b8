#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "facloc/core.hpp"
#include "facloc/enumerate.hpp"
#include "facloc/instance_io.hpp"
#include "facloc/mechanisms.hpp"
#include "facloc/oracle.hpp"
#include "facloc/rational.hpp"
#include "facloc/verify.hpp"

namespace facloc::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string instance_path;
    std::string mechanism;
    std::string objective = "sc";
    int m_min = 2;
    int m_max = 6;
    int n_min = 2;
    int n_max = 0;
    std::string empty_nodes = "any";
    bool allow_empty_prefs = false;
    std::string bound = "2";
    bool strict = true;
    std::string positions = "1,2,3";
    int line_size = 0;
    int lemma_m_max = 7;
    int cap = 200;
    int jobs = 1;
    std::string format;
    std::string out_path;
    bool quiet = false;
};

PrefDomain domain_of(const RunConfig& cfg) {
    return cfg.allow_empty_prefs ? PrefDomain::Full : PrefDomain::Approving;
}

EmptyNodes parse_empty_nodes(const std::string& text) {
    if (text == "any") return EmptyNodes::Any;
    if (text == "none") return EmptyNodes::None;
    if (text == "some") return EmptyNodes::AtLeastOne;
    throw std::invalid_argument("unknown --empty-nodes value '" + text + "' (expected any, none or some)");
}

EnumerationFamily family_of(const RunConfig& cfg) {
    if (cfg.m_max < 2) throw std::invalid_argument("--m-max must be at least 2");
    EnumerationFamily family;
    family.m_min = cfg.m_min;
    family.m_max = cfg.m_max;
    family.n_min = cfg.n_min;
    family.n_max = cfg.n_max;
    family.domain = domain_of(cfg);
    family.empty_nodes = parse_empty_nodes(cfg.empty_nodes);
    return family;
}

LineInstance load_checked(const RunConfig& cfg) {
    LineInstance inst = load_instance(cfg.instance_path);
    inst.check_domain(domain_of(cfg));
    return inst;
}

std::vector<int> parse_positions(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad position '" + item + "' in --positions");
        }
    }
    return out;
}

/// Writes to --out when given, otherwise to the data stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
    const LineInstance inst = load_checked(cfg);
    const Mechanism mech = make_mechanism(cfg.mechanism);
    if (!mech.accepts(inst)) {
        throw DomainError("instance is outside the domain of " + mech.name);
    }
    const Solution z = mech(inst);
    require_feasible(inst, z);
    Sink sink(cfg.out_path, out);
    if (cfg.format == "json") {
        json costs = json::array();
        for (int i = 0; i < inst.n(); ++i) costs.push_back(agent_cost(inst, i, z));
        *sink << json{{"mechanism", mech.name},
                      {"solution", to_json(z)},
                      {"agent_costs", costs},
                      {"social_cost", social_cost(inst, z)},
                      {"max_cost", max_cost(inst, z)}}
                     .dump(2)
              << '\n';
        return kOk;
    }
    *sink << "mechanism: " << mech.name << '\n' << "solution: " << to_string(z) << '\n';
    *sink << "agent  pos  prefs  cost\n";
    for (int i = 0; i < inst.n(); ++i) {
        const Agent& a = inst.agent(i);
        *sink << std::left << std::setw(7) << i << std::setw(5) << a.pos << std::setw(7) << to_string(a.prefs)
              << agent_cost(inst, i, z) << '\n';
    }
    *sink << "social_cost: " << social_cost(inst, z) << '\n' << "max_cost: " << max_cost(inst, z) << '\n';
    return kOk;
}

int cmd_opt(const RunConfig& cfg, std::ostream& out) {
    const LineInstance inst = load_checked(cfg);
    const ObjectiveKind objective = parse_objective(cfg.objective);
    const OptResult opt = optimal_cost(inst, objective);
    Sink sink(cfg.out_path, out);
    if (cfg.format == "json") {
        *sink << json{{"objective", to_string(objective)}, {"value", opt.value}, {"witness", to_json(opt.witness)}}
                     .dump(2)
              << '\n';
        return kOk;
    }
    *sink << "objective: " << to_string(objective) << '\n'
          << "value: " << opt.value << '\n'
          << "witness: " << to_string(opt.witness) << '\n';
    return kOk;
}

json violation_json(const SPViolation& v) {
    return {{"instance", to_json(v.instance)},
            {"agent", v.agent_index},
            {"misreport", to_string(v.misreport)},
            {"true_cost", v.true_cost},
            {"deviated_cost", v.deviated_cost},
            {"truthful_outcome", to_json(v.truthful_outcome)},
            {"deviated_outcome", to_json(v.deviated_outcome)}};
}

int cmd_sp_check(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const MechanismId id = MechanismId::parse(cfg.mechanism);
    const Mechanism mech = make_mechanism(id);
    SPSweepReport report;
    report.mechanism = mech.name;
    if (!cfg.instance_path.empty()) {
        const LineInstance inst = load_checked(cfg);
        if (!mech.accepts(inst)) throw DomainError("instance is outside the domain of " + mech.name);
        report.instances_checked = 1;
        if (auto v = check_strategyproof(mech, inst, domain_of(cfg))) {
            report.violation_count = 1;
            report.violations.push_back(*v);
        }
    } else {
        const EnumerationFamily family = family_of(cfg);
        if (!cfg.quiet) log << "sp-check: " << mech.name << " over " << count_instances(family) << " instances\n";
        report = sp_sweep(mech, family, 10, cfg.jobs);
    }

    Sink sink(cfg.out_path, out);
    if (cfg.format == "json") {
        json violations = json::array();
        for (const auto& v : report.violations) violations.push_back(violation_json(v));
        *sink << json{{"mechanism", report.mechanism},
                      {"instances_checked", report.instances_checked},
                      {"instances_skipped", report.instances_skipped},
                      {"violation_count", report.violation_count},
                      {"violations", violations}}
                     .dump(2)
              << '\n';
    } else {
        *sink << "mechanism: " << report.mechanism << '\n'
              << "instances_checked: " << report.instances_checked << '\n'
              << "instances_skipped: " << report.instances_skipped << '\n'
              << "violations: " << report.violation_count << '\n';
        for (const auto& v : report.violations) {
            *sink << "  " << dump_instance(v.instance) << " agent " << v.agent_index << " reports "
                  << to_string(v.misreport) << ": cost " << v.true_cost << " -> " << v.deviated_cost << '\n';
        }
    }
    // TwoExtremes is a baseline whose strategyproofness is reported, not asserted.
    const bool asserted = id.kind != MechanismId::Kind::TwoExtremes;
    return report.violation_count > 0 && asserted ? kCheckFailed : kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const Mechanism mech = make_mechanism(cfg.mechanism);
    const ObjectiveKind objective = parse_objective(cfg.objective);
    const EnumerationFamily family = family_of(cfg);
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    Sink sink(cfg.out_path, out);

    SweepOptions options;
    options.jobs = cfg.jobs;
    if (format == "csv") {
        *sink << ratio_csv_header() << '\n';
        options.on_row = [&](const RatioRow& row) { *sink << ratio_csv_row(mech.name, objective, row) << '\n'; };
    }
    const auto chunk_total = partition(family).size();
    if (!cfg.quiet) {
        log << "sweep: " << mech.name << " " << to_string(objective) << " over " << count_instances(family)
            << " instances in " << chunk_total << " chunks\n";
        std::size_t step = std::max<std::size_t>(1, chunk_total / 10);
        options.on_progress = [&log, step](std::size_t done, std::size_t total) {
            if (done % step == 0 || done == total) log << "sweep: " << done << "/" << total << " chunks\n";
        };
    }
    const RatioReport report = ratio_sweep(mech, objective, family, options);

    const std::string ratio_text =
        report.max_ratio.is_unbounded() ? "inf" : format_with_decimal(report.max_ratio.value());
    if (format == "json") {
        *sink << to_json(report).dump(2) << '\n';
    } else if (format == "table") {
        *sink << "mechanism: " << report.mechanism << '\n'
              << "objective: " << to_string(objective) << '\n'
              << "instances_checked: " << report.instances_checked << '\n'
              << "instances_skipped: " << report.instances_skipped << '\n'
              << "max_ratio: " << ratio_text << '\n';
        if (report.witness) {
            *sink << "witness: " << dump_instance(*report.witness) << '\n'
                  << "witness_solution: " << to_string(report.witness_solution) << '\n'
                  << "witness_values: " << report.witness_mech_value << " vs opt " << report.witness_opt_value
                  << '\n';
        }
    }
    if (!cfg.quiet) {
        log << "sweep: max_ratio " << ratio_text;
        if (report.witness) log << " at instance " << report.witness_id;
        log << '\n';
    }
    return kOk;
}

int cmd_lowerbound(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const ObjectiveKind objective = parse_objective(cfg.objective);
    const Rational bound = Rational::parse(cfg.bound);
    const std::vector<int> positions = parse_positions(cfg.positions);
    const int m = cfg.line_size > 0 ? cfg.line_size
                                    : (positions.empty() ? 0 : *std::max_element(positions.begin(), positions.end()));
    const auto profiles = enumerate_profiles(m, positions, domain_of(cfg));
    ChainSearchOptions options;
    options.strict = cfg.strict;
    const TableSearchResult result = proof_chain_search(objective, bound, profiles, options);

    std::optional<std::string> replay_failure;
    if (result.satisfiable) {
        replay_failure = check_table(objective, bound, cfg.strict, result.profiles, result.table);
    }
    if (!cfg.quiet) {
        log << "lowerbound: " << profiles.size() << " profiles, " << result.sp_edges << " deviation pairs, "
            << result.nodes << " search nodes\n";
    }

    Sink sink(cfg.out_path, out);
    if (cfg.format == "json") {
        json doc = to_json(result);
        if (result.satisfiable) doc["replay"] = replay_failure ? *replay_failure : std::string("ok");
        *sink << doc.dump(2) << '\n';
    } else {
        *sink << "objective: " << to_string(objective) << '\n'
              << "bound: " << format_with_decimal(bound) << (cfg.strict ? " (strict)" : " (non-strict)") << '\n'
              << "profiles: " << result.profiles.size() << '\n'
              << "result: " << (result.satisfiable ? "SAT" : "UNSAT") << '\n';
        if (result.satisfiable) {
            for (std::size_t p = 0; p < result.table.size(); ++p) {
                *sink << "  ";
                for (const auto& a : result.profiles[p].agents()) *sink << std::setw(5) << to_string(a.prefs);
                *sink << " -> " << to_string(result.table[p]) << '\n';
            }
            *sink << "replay: " << (replay_failure ? *replay_failure : std::string("ok")) << '\n';
        }
    }
    return replay_failure ? kCheckFailed : kOk;
}

int cmd_lemmas(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    EnumerationFamily family;
    family.m_max = cfg.lemma_m_max;
    family.domain = domain_of(cfg);
    if (!cfg.quiet) log << "lemmas: " << count_instances(family) << " instances, grid cap " << cfg.cap << '\n';
    const std::vector<LemmaReport> reports{check_sc_lower_bound_lemma(family), check_mc_pair_lemma(family),
                                           check_mc_triple_lemma(family), check_technical_lemma(cfg.cap)};
    Sink sink(cfg.out_path, out);
    bool all_passed = true;
    if (cfg.format == "json") {
        json doc = json::array();
        for (const auto& r : reports) {
            json item{{"name", r.name}, {"checked", r.checked}, {"failures", r.failures}, {"passed", r.passed()}};
            if (r.first_failure) item["first_failure"] = *r.first_failure;
            if (r.note) item["note"] = *r.note;
            doc.push_back(std::move(item));
            all_passed = all_passed && r.passed();
        }
        *sink << doc.dump(2) << '\n';
    } else {
        for (const auto& r : reports) {
            *sink << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.checked << " checked, " << r.failures
                  << " failures";
            if (r.note) *sink << "; " << *r.note;
            *sink << '\n';
            if (r.first_failure) *sink << "  first failure: " << *r.first_failure << '\n';
            all_passed = all_passed && r.passed();
        }
    }
    return all_passed ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log) {
    CLI::App app{"Strategyproof two-facility location on a discrete line: mechanisms, optima and verification"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed, std::string fallback) {
        cfg.format = "";
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(allowed));
        sub->callback([&cfg, fallback] {
            if (cfg.format.empty()) cfg.format = fallback;
        });
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "Write data output to this file");
        sub->add_flag("--allow-empty-prefs", cfg.allow_empty_prefs, "Allow agents that approve no facility");
        sub->add_flag("--quiet", cfg.quiet, "Suppress log output");
    };
    auto add_family = [&](CLI::App* sub) {
        sub->add_option("--m-min", cfg.m_min, "Smallest line size");
        sub->add_option("--m-max", cfg.m_max, "Largest line size");
        sub->add_option("--n-min", cfg.n_min, "Fewest agents");
        sub->add_option("--n-max", cfg.n_max, "Most agents (0: up to m)");
        sub->add_option("--empty-nodes", cfg.empty_nodes, "any | none | some");
        sub->add_option("--jobs", cfg.jobs, "Worker threads");
    };

    auto* eval = app.add_subcommand("eval", "Run a mechanism on an instance file");
    eval->add_option("--instance", cfg.instance_path, "Instance JSON file")->required();
    eval->add_option("--mechanism", cfg.mechanism, "fmne | pd3 | alr:<alpha> | alr:auto | two-extremes")->required();
    add_common(eval);
    add_format(eval, {"table", "json"}, "table");

    auto* opt = app.add_subcommand("opt", "Brute-force optimum of an instance file");
    opt->add_option("--instance", cfg.instance_path, "Instance JSON file")->required();
    opt->add_option("--objective", cfg.objective, "sc | mc");
    add_common(opt);
    add_format(opt, {"table", "json"}, "table");

    auto* sp = app.add_subcommand("sp-check", "Exhaustive misreport check (one file or an enumerated family)");
    sp->add_option("--mechanism", cfg.mechanism, "Mechanism id")->required();
    sp->add_option("--instance", cfg.instance_path, "Check only this instance file");
    add_family(sp);
    add_common(sp);
    add_format(sp, {"table", "json"}, "table");

    auto* sweep = app.add_subcommand("sweep", "Worst-case approximation ratio over an enumerated family");
    sweep->add_option("--mechanism", cfg.mechanism, "Mechanism id")->required();
    sweep->add_option("--objective", cfg.objective, "sc | mc");
    add_family(sweep);
    add_common(sweep);
    add_format(sweep, {"csv", "json", "table"}, "csv");

    auto* lower = app.add_subcommand("lowerbound", "Search for a strategyproof mechanism table beating a bound");
    lower->add_option("--objective", cfg.objective, "sc | mc");
    lower->add_option("--bound", cfg.bound, "Ratio bound as num/den");
    lower->add_flag("--strict,!--non-strict", cfg.strict, "Require ratio < bound (default) or <= bound");
    lower->add_option("--positions", cfg.positions, "Comma-separated agent nodes (default 1,2,3)");
    lower->add_option("--m", cfg.line_size, "Line size (default: largest position)");
    add_common(lower);
    add_format(lower, {"table", "json"}, "table");

    auto* lemmas = app.add_subcommand("lemmas", "Check the optimal-cost lower bounds and the technical lemma");
    lemmas->add_option("--m-max", cfg.lemma_m_max, "Largest line size for the oracle checks (default 7)");
    lemmas->add_option("--cap", cfg.cap, "Grid cap for the technical lemma (default 200)");
    add_common(lemmas);
    add_format(lemmas, {"table", "json"}, "table");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, log);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (eval->parsed()) return cmd_eval(cfg, out);
        if (opt->parsed()) return cmd_opt(cfg, out);
        if (sp->parsed()) return cmd_sp_check(cfg, out, log);
        if (sweep->parsed()) return cmd_sweep(cfg, out, log);
        if (lower->parsed()) return cmd_lowerbound(cfg, out, log);
        if (lemmas->parsed()) return cmd_lemmas(cfg, out, log);
    } catch (const ParseError& e) {
        log << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        log << "domain error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::runtime_error& e) {
        log << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace facloc::cli
