#include "doctest.h"

#include "facloc/core.hpp"
#include "facloc/enumerate.hpp"
#include "facloc/instance_io.hpp"
#include "helpers.hpp"

using namespace facloc;
using facloc::testing::consecutive;
using facloc::testing::make;
using facloc::testing::pref;

TEST_CASE("instances reject broken structure") {
    CHECK_THROWS_AS(LineInstance(3, {{1, pref("f1")}}), DomainError);
    CHECK_THROWS_AS(LineInstance(2, {{1, pref("f1")}, {2, pref("f2")}, {3, pref("f1")}}), DomainError);
    CHECK_THROWS_AS(LineInstance(4, {{2, pref("f1")}, {2, pref("f2")}}), DomainError);
    CHECK_THROWS_AS(LineInstance(4, {{3, pref("f1")}, {1, pref("f2")}}), DomainError);
    CHECK_THROWS_AS(LineInstance(4, {{0, pref("f1")}, {1, pref("f2")}}), DomainError);
    CHECK_THROWS_AS(LineInstance(4, {{1, pref("f1")}, {5, pref("f2")}}), DomainError);
}

TEST_CASE("preference domains") {
    const LineInstance inst = make(4, {1, 3}, "none f2");
    CHECK_FALSE(inst.in_domain(PrefDomain::Approving));
    CHECK(inst.in_domain(PrefDomain::Full));
    CHECK_THROWS_AS(inst.check_domain(PrefDomain::Approving), DomainError);
    CHECK(domain_pairs(PrefDomain::Approving).size() == 3);
    CHECK(domain_pairs(PrefDomain::Full).size() == 4);
    for (int code = 0; code < 4; ++code) CHECK(ApprovalPair::from_code(code).code() == code);
}

TEST_CASE("agent costs add the distances to approved facilities") {
    const LineInstance inst = testing::tight_fixed();
    const Solution z{2, 3};
    CHECK(agent_cost(inst, 0, z) == 2);
    CHECK(agent_cost(inst, 1, z) == 1);
    CHECK(agent_cost(inst, 4, z) == 3);
    CHECK(social_cost(inst, z) == 9);
    CHECK(max_cost(inst, z) == 3);
    CHECK(objective_value(ObjectiveKind::SocialCost, inst, {4, 2}) == 3);

    CHECK(cost_of(3, pref("both"), {1, 5}) == 4);
    CHECK(cost_of(3, pref("none"), {1, 5}) == 0);
    CHECK(social_cost(testing::tight_empty(), {5, 7}) == 17);
}

TEST_CASE("feasibility") {
    const LineInstance inst = consecutive(3, "f1 f2");
    CHECK(is_feasible(inst, {1, 3}));
    CHECK_FALSE(is_feasible(inst, {2, 2}));
    CHECK_FALSE(is_feasible(inst, {0, 2}));
    CHECK_FALSE(is_feasible(inst, {1, 4}));
    CHECK_THROWS_AS(require_feasible(inst, {2, 2}), std::invalid_argument);
}

TEST_CASE("objective names round trip") {
    CHECK(parse_objective("sc") == ObjectiveKind::SocialCost);
    CHECK(parse_objective(to_string(ObjectiveKind::MaxCost)) == ObjectiveKind::MaxCost);
    CHECK_THROWS(parse_objective("sum"));
}

TEST_CASE("mirroring is an involution that preserves costs") {
    EnumerationFamily family;
    family.m_max = 5;
    family.domain = PrefDomain::Full;
    const std::vector<Solution> probes{{1, 2}, {2, 1}, {1, 3}, {3, 2}};
    for_each_instance(family, [&](const LineInstance& inst, std::uint64_t) {
        const LineInstance mirrored = mirror_instance(inst);
        REQUIRE(mirror_instance(mirrored) == inst);
        CHECK(mirrored.m() == inst.m());
        for (const Solution& z : probes) {
            if (!is_feasible(inst, z)) continue;
            const Solution mz = mirror_solution(inst.m(), z);
            CHECK(mirror_solution(inst.m(), mz) == z);
            CHECK(social_cost(mirrored, mz) == social_cost(inst, z));
            CHECK(max_cost(mirrored, mz) == max_cost(inst, z));
        }
    });
}

TEST_CASE("occupied window trims leading and trailing empty nodes") {
    const LineInstance inst = make(9, {3, 5, 6}, "f1 both f2");
    const Window w = occupied_window(inst);
    CHECK(w.offset == 2);
    CHECK(w.instance.m() == 4);
    CHECK(w.instance.positions() == std::vector<int>{1, 3, 4});
    CHECK(w.to_original({1, 4}) == Solution{3, 6});
    CHECK(w.from_original({3, 6}) == Solution{1, 4});
    CHECK(occupied_window(consecutive(3, "f1 f2 f1")).instance == consecutive(3, "f1 f2 f1"));
}

TEST_CASE("with_report swaps one preference") {
    const LineInstance inst = consecutive(3, "f1 f2 both");
    const LineInstance dev = inst.with_report(1, pref("f1"));
    CHECK(dev.agent(1).prefs == pref("f1"));
    CHECK(dev.agent(0) == inst.agent(0));
    CHECK(dev.positions() == inst.positions());
    CHECK(inst.approver_positions(1) == std::vector<int>{1, 3});
    CHECK(inst.approver_count(2) == 2);
}

TEST_CASE("instance files") {
    const std::string text = R"({"m": 5, "agents": [{"pos": 1, "f1": false, "f2": true},
        {"pos": 4, "f1": true, "f2": true}]})";
    const LineInstance inst = parse_instance(text);
    CHECK(inst == make(5, {1, 4}, "f2 both"));
    CHECK(parse_instance(dump_instance(inst)) == inst);
    CHECK(instance_from_json(to_json(inst)) == inst);

    SUBCASE("broken json reports a byte offset") {
        try {
            parse_instance(R"({"m": 5, "agents": [)");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("byte") != std::string::npos);
        }
    }
    SUBCASE("schema errors name the field") {
        try {
            parse_instance(R"({"m": 5, "agents": [{"pos": 1, "f1": 1, "f2": true}]})");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("f1") != std::string::npos);
        }
    }
    SUBCASE("model violations are domain errors") {
        CHECK_THROWS_AS(parse_instance(R"({"m": 1, "agents": [{"pos": 1, "f1": true, "f2": true}]})"),
                        DomainError);
    }
    CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), std::runtime_error);
}
