#include "doctest.h"

#include "facloc/enumerate.hpp"
#include "facloc/instance_io.hpp"
#include "facloc/mechanisms.hpp"
#include "helpers.hpp"

using namespace facloc;
using facloc::testing::consecutive;
using facloc::testing::make;

TEST_CASE("leftmost median") {
    const std::vector<int> odd{2, 5, 9};
    const std::vector<int> even{2, 5, 9, 11};
    const std::vector<int> single{4};
    CHECK(leftmost_median(odd) == 5);
    CHECK(leftmost_median(even) == 5);
    CHECK(leftmost_median(single) == 4);
    CHECK_THROWS_AS(leftmost_median(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("fmne") {
    CHECK(fmne(testing::tight_fixed()) == Solution{2, 3});
    CHECK(fmne(testing::tight_empty()) == Solution{5, 7});
    CHECK(fmne(consecutive(3, "f1 f2")) == Solution{1, 3});

    SUBCASE("empty-node ties go right") {
        // median of facility 2 at node 3, empty nodes 2 and 4
        CHECK(fmne(make(5, {1, 3, 5}, "f1 f2 f1")) == Solution{1, 4});
    }
    SUBCASE("an unapproved facility is anchored at the leftmost agent") {
        CHECK(fmne(make(5, {2, 3}, "f1 f1")) == Solution{2, 1});
        CHECK(fmne(make(5, {2, 3}, "none f2")) == Solution{2, 4});
    }
}

TEST_CASE("priority dictatorship") {
    CHECK(priority_dictatorship(consecutive(3, "both both f2")) == Solution{2, 3});
    CHECK(priority_dictatorship(consecutive(3, "f1 f1 f2")) == Solution{2, 3});
    CHECK(priority_dictatorship(make(4, {1, 3, 4}, "f2 f2 f2")) == Solution{1, 3});
    CHECK(priority_dictatorship(consecutive(3, "f2 both f1")) == Solution{3, 2});
    CHECK_THROWS_AS(priority_dictatorship(consecutive(4, "f1 f2")), DomainError);
    CHECK_THROWS_AS(priority_dictatorship(consecutive(4, "f1 f2 f1 f2")), DomainError);
}

TEST_CASE("priority dictatorship commutes with mirroring") {
    EnumerationFamily family;
    family.m_max = 7;
    family.n_min = 3;
    family.n_max = 3;
    for_each_instance(family, [](const LineInstance& inst, std::uint64_t) {
        const auto& a = inst.agents();
        if (a[2].pos - a[1].pos == a[1].pos - a[0].pos) return;  // gaps tie: only one orientation mirrors
        CAPTURE(dump_instance(inst));
        CHECK(priority_dictatorship(mirror_instance(inst)) ==
              mirror_solution(inst.m(), priority_dictatorship(inst)));
    });
}

TEST_CASE("alpha left right") {
    CHECK(alpha_left_right(consecutive(4, "f1 f1 f2 f2"), 2) == Solution{1, 4});
    CHECK(alpha_left_right(consecutive(3, "f1 f2 f1"), 2) == Solution{3, 1});
    CHECK(alpha_left_right(consecutive(4, "f1 f2 f1 f2"), 2) == Solution{2, 3});
    CHECK_THROWS_AS(alpha_left_right(consecutive(4, "f1 f2 f1 f2"), 0), std::invalid_argument);
    CHECK_THROWS_AS(alpha_left_right(consecutive(4, "f1 f2 f1 f2"), 4), std::invalid_argument);

    SUBCASE("part medians are middle nodes of the occupied segment") {
        // L holds agents at 1 and 4; the middle of 1..4 rounds away from alpha
        CHECK(alpha_left_right(make(6, {1, 4, 5, 6}, "f1 f1 f2 f2"), 4) == Solution{2, 6});
        CHECK(alpha_left_right(make(7, {1, 5, 7}, "f1 f2 f2"), 2) == Solution{1, 6});
    }
    SUBCASE("case 2 with nobody approving a facility uses L") {
        CHECK(alpha_left_right(make(5, {1, 2, 5}, "f1 none f1"), 2) == Solution{3, 1});
    }
}

TEST_CASE("alpha left right ignores surrounding empty nodes") {
    const LineInstance tight = consecutive(4, "f1 both f2 f1");
    const LineInstance padded = make(9, {3, 4, 5, 6}, "f1 both f2 f1");
    for (int alpha = 1; alpha <= 3; ++alpha) {
        const Solution a = alpha_left_right(tight, alpha);
        CHECK(alpha_left_right(padded, alpha) == Solution{a.z1 + 2, a.z2 + 2});
    }
}

TEST_CASE("parity dispatch") {
    CHECK(parity_alpha(4) == 2);
    CHECK(parity_alpha(3) == 2);
    CHECK(parity_alpha(2) == 1);
    const LineInstance inst = make(8, {2, 4, 6}, "f1 both f2");
    CHECK(lr_for_parity(inst) == alpha_left_right(inst, 3));
}

TEST_CASE("two extremes") {
    CHECK(two_extremes(testing::tight_fixed()) == Solution{3, 2});
    CHECK(two_extremes(consecutive(2, "f1 f2")) == Solution{1, 2});
    CHECK(two_extremes(consecutive(3, "both both both")) == Solution{1, 3});
    CHECK(two_extremes(consecutive(4, "both f1")) == Solution{1, 2});
    CHECK(two_extremes(make(4, {2, 4}, "both f1")) == Solution{2, 3});
}

TEST_CASE("mechanism ids") {
    for (const std::string id : {"fmne", "pd3", "alr:3", "alr:auto", "two-extremes"}) {
        CHECK(MechanismId::parse(id).to_string() == id);
        CHECK(make_mechanism(id).name == id);
    }
    CHECK(MechanismId::parse("alr:2").alpha == 2);
    CHECK_THROWS(MechanismId::parse("alr:0"));
    CHECK_THROWS(MechanismId::parse("alr:"));
    CHECK_THROWS(MechanismId::parse("median"));

    CHECK_FALSE(make_mechanism("pd3").accepts(consecutive(4, "f1 f2")));
    CHECK(make_mechanism("alr:3").accepts(consecutive(4, "f1 f2 f1 f1")));
    CHECK_FALSE(make_mechanism("alr:3").accepts(consecutive(4, "f1 f2 f1")));
}

TEST_CASE("every mechanism is feasible and deterministic on small lines") {
    std::vector<Mechanism> mechanisms;
    for (const std::string id : {"fmne", "pd3", "alr:auto", "two-extremes", "alr:1", "alr:2", "alr:3", "alr:4",
                                 "alr:5"}) {
        mechanisms.push_back(make_mechanism(id));
    }
    for (PrefDomain domain : {PrefDomain::Approving, PrefDomain::Full}) {
        EnumerationFamily family;
        family.m_max = 6;
        family.domain = domain;
        for_each_instance(family, [&](const LineInstance& inst, std::uint64_t) {
            for (const Mechanism& mech : mechanisms) {
                if (!mech.accepts(inst)) continue;
                const Solution z = mech(inst);
                if (!is_feasible(inst, z)) {
                    FAIL_CHECK(mech.name << " infeasible on " << dump_instance(inst));
                }
                const LineInstance copy = parse_instance(dump_instance(inst));
                CHECK(mech(copy) == z);
            }
        });
    }
}

TEST_CASE("fmne places facility 2 on an empty node") {
    EnumerationFamily family;
    family.m_max = 6;
    family.empty_nodes = EmptyNodes::AtLeastOne;
    for_each_instance(family, [](const LineInstance& inst, std::uint64_t) {
        const Solution z = fmne(inst);
        CHECK(inst.is_occupied(z.z1));
        CHECK_FALSE(inst.is_occupied(z.z2));
    });
}
