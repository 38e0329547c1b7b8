#include "facloc/mechanisms.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace facloc {

int leftmost_median(std::span<const int> sorted_positions) {
    if (sorted_positions.empty()) {
        throw std::invalid_argument("median of an empty set");
    }
    return sorted_positions[(sorted_positions.size() - 1) / 2];
}

Solution fmne(const LineInstance& instance) {
    if (!instance.has_empty_nodes()) {
        const int half = instance.n() / 2;
        return {half, half + 1};
    }
    const int anchor = instance.agents().front().pos;
    auto median_or_anchor = [&](int facility) {
        const auto approvers = instance.approver_positions(facility);
        return approvers.empty() ? anchor : leftmost_median(approvers);
    };
    const int y1 = median_or_anchor(1);
    const int y2 = median_or_anchor(2);

    int best = 0;
    int best_dist = 0;
    for (int node = 1; node <= instance.m(); ++node) {
        if (instance.is_occupied(node)) continue;
        const int dist = std::abs(node - y2);
        // <= keeps the rightmost of equally near empty nodes
        if (best == 0 || dist <= best_dist) {
            best = node;
            best_dist = dist;
        }
    }
    return {y1, best};
}

namespace {

Solution priority_dictatorship_oriented(const LineInstance& instance) {
    const Agent& c = instance.agent(1);
    const Agent& l = instance.agent(0);
    const Agent& r = instance.agent(2);
    const int xc = c.pos;
    if (c.prefs.f1 && !c.prefs.f2) {
        return r.prefs.f2 ? Solution{xc, r.pos} : Solution{xc, l.pos};
    }
    if (c.prefs.f2 && !c.prefs.f1) {
        return r.prefs.f1 ? Solution{r.pos, xc} : Solution{l.pos, xc};
    }
    // c approves both (or, on the widened domain, neither)
    return r.prefs.f2 ? Solution{xc, xc + 1} : Solution{xc + 1, xc};
}

}  // namespace

Solution priority_dictatorship(const LineInstance& instance) {
    if (instance.n() != 3) {
        throw DomainError("pd3 requires exactly 3 agents (n = " + std::to_string(instance.n()) + ")");
    }
    const int xl = instance.agent(0).pos;
    const int xc = instance.agent(1).pos;
    const int xr = instance.agent(2).pos;
    if (xr - xc > xc - xl) {
        return mirror_solution(instance.m(), priority_dictatorship_oriented(mirror_instance(instance)));
    }
    return priority_dictatorship_oriented(instance);
}

namespace {

enum class Part { Left, Right };

struct Split {
    int alpha;
    int size;
    const LineInstance& line;

    Part part_of(int pos) const { return pos <= alpha ? Part::Left : Part::Right; }

    bool in_part(int agent, Part part) const { return part_of(line.agent(agent).pos) == part; }

    /// N_facility == N(part): every agent in `part` approves it and nobody else does.
    bool approvers_equal_part(int facility, Part part) const {
        for (int i = 0; i < line.n(); ++i) {
            if (line.agent(i).prefs.approves(facility) != in_part(i, part)) return false;
        }
        return true;
    }

    bool approvers_within_part(int facility, Part part) const {
        for (int i = 0; i < line.n(); ++i) {
            if (line.agent(i).prefs.approves(facility) && !in_part(i, part)) return false;
        }
        return true;
    }

    /// Median node of the segment spanned by the agents in `part`, ties away
    /// from alpha. An empty part maps to its outer end.
    int part_median(Part part) const {
        int lo = 0;
        int hi = 0;
        for (const auto& a : line.agents()) {
            if (part_of(a.pos) != part) continue;
            if (lo == 0) lo = a.pos;
            hi = a.pos;
        }
        if (lo == 0) {
            return part == Part::Left ? 1 : size;
        }
        return part == Part::Left ? (lo + hi) / 2 : (lo + hi + 1) / 2;
    }
};

}  // namespace

Solution alpha_left_right(const LineInstance& instance, int alpha) {
    const Window window = occupied_window(instance);
    const LineInstance& line = window.instance;
    if (alpha < 1 || alpha > line.m() - 1) {
        throw std::invalid_argument("alpha = " + std::to_string(alpha) + " outside [1, " +
                                    std::to_string(line.m() - 1) + "] for an occupied window of " +
                                    std::to_string(line.m()) + " nodes");
    }
    const Split split{alpha, line.m(), line};

    // case 1
    for (Part x : {Part::Left, Part::Right}) {
        const Part y = x == Part::Left ? Part::Right : Part::Left;
        if (split.approvers_equal_part(1, x) && split.approvers_equal_part(2, y)) {
            return window.to_original({split.part_median(x), split.part_median(y)});
        }
    }

    // case 2
    for (int facility : {1, 2}) {
        for (Part x : {Part::Left, Part::Right}) {
            if (!split.approvers_within_part(facility, x)) continue;
            if (line.approver_count(facility) == 0) x = Part::Left;
            const int here = split.part_median(x);
            const int beta = x == Part::Left ? alpha + 1 : alpha;
            const Solution local = facility == 1 ? Solution{here, beta} : Solution{beta, here};
            return window.to_original(local);
        }
    }

    // case 3
    return window.to_original({alpha, alpha + 1});
}

int parity_alpha(int window_size) { return window_size % 2 == 0 ? window_size / 2 : (window_size + 1) / 2; }

Solution lr_for_parity(const LineInstance& instance) {
    const int window_size = instance.agents().back().pos - instance.agents().front().pos + 1;
    return alpha_left_right(instance, parity_alpha(window_size));
}

Solution two_extremes(const LineInstance& instance) {
    const auto n1 = instance.approver_positions(1);
    const auto n2 = instance.approver_positions(2);
    const int z1 = n1.empty() ? instance.agents().front().pos : n1.front();
    int z2 = n2.empty() ? instance.agents().back().pos : n2.back();
    if (z1 == z2) {
        const int m = instance.m();
        const int inward = 2 * z2 <= m ? 1 : -1;
        const int moved = z2 + inward;
        z2 = (moved >= 1 && moved <= m) ? moved : z2 - inward;
    }
    return {z1, z2};
}

MechanismId MechanismId::parse(const std::string& text) {
    if (text == "fmne") return {Kind::Fmne, 0};
    if (text == "pd3") return {Kind::PriorityDictatorship, 0};
    if (text == "two-extremes") return {Kind::TwoExtremes, 0};
    if (text == "alr:auto") return {Kind::AlphaLeftRightAuto, 0};
    if (text.rfind("alr:", 0) == 0) {
        const std::string_view rest = std::string_view(text).substr(4);
        int alpha = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), alpha);
        if (ec == std::errc() && ptr == rest.data() + rest.size() && alpha >= 1) {
            return {Kind::AlphaLeftRight, alpha};
        }
        throw std::invalid_argument("bad alpha in mechanism id '" + text + "' (expected a positive integer)");
    }
    throw std::invalid_argument("unknown mechanism '" + text +
                                "' (expected fmne, pd3, alr:<alpha>, alr:auto or two-extremes)");
}

std::string MechanismId::to_string() const {
    switch (kind) {
        case Kind::Fmne: return "fmne";
        case Kind::PriorityDictatorship: return "pd3";
        case Kind::AlphaLeftRight: return "alr:" + std::to_string(alpha);
        case Kind::AlphaLeftRightAuto: return "alr:auto";
        case Kind::TwoExtremes: return "two-extremes";
    }
    return "?";
}

Mechanism make_mechanism(const MechanismId& id) {
    Mechanism mech;
    mech.name = id.to_string();
    switch (id.kind) {
        case MechanismId::Kind::Fmne:
            mech.apply = fmne;
            break;
        case MechanismId::Kind::PriorityDictatorship:
            mech.apply = priority_dictatorship;
            mech.accepts = [](const LineInstance& inst) { return inst.n() == 3; };
            break;
        case MechanismId::Kind::AlphaLeftRight: {
            const int alpha = id.alpha;
            mech.apply = [alpha](const LineInstance& inst) { return alpha_left_right(inst, alpha); };
            mech.accepts = [alpha](const LineInstance& inst) {
                const int window_size = inst.agents().back().pos - inst.agents().front().pos + 1;
                return alpha >= 1 && alpha <= window_size - 1;
            };
            break;
        }
        case MechanismId::Kind::AlphaLeftRightAuto:
            mech.apply = lr_for_parity;
            break;
        case MechanismId::Kind::TwoExtremes:
            mech.apply = two_extremes;
            break;
    }
    return mech;
}

}  // namespace facloc
