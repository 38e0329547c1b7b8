#ifndef FACLOC_MECHANISMS_HPP
#define FACLOC_MECHANISMS_HPP

#include <functional>
#include <span>
#include <string>

#include "facloc/core.hpp"

namespace facloc {

/// Lower median: element at 1-based rank ceil(k/2) of a sorted list.
/// Throws std::invalid_argument on an empty list.
int leftmost_median(std::span<const int> sorted_positions);

/// Fixed-or-Median-Nearest-Empty.
///
/// Without empty nodes the facilities go to the two central nodes
/// (floor(n/2), floor(n/2)+1). Otherwise facility 1 goes to the leftmost
/// median approver of facility 1, and facility 2 to the empty node nearest
/// the leftmost median approver of facility 2, ties to the right. A facility
/// nobody approves is anchored at the leftmost occupied node.
Solution fmne(const LineInstance& instance);

/// Three-agent Priority-Dictatorship.
///
/// Orients the line so the central agent is no farther from the right agent
/// than from the left one (mirroring when x_r - x_c > x_c - x_l), places one
/// facility the central agent approves at its node, and lets the right agent's
/// report decide the other facility. The left agent's report is ignored.
/// Throws DomainError unless n == 3.
Solution priority_dictatorship(const LineInstance& instance);

/// alpha-Left-Right on the occupied window.
///
/// The window (nodes 1..m') is split into L = 1..alpha and R = alpha+1..m'.
///  - case 1: N_1 and N_2 are the agent sets of different parts; each facility
///    goes to the middle node of the segment spanned by its part's agents,
///    ties away from alpha.
///  - case 2: some N_l lies within one part X (l = 1 before 2, L before R; an
///    empty N_l picks L); facility l goes to the middle node of the segment
///    spanned by all agents in X, the other facility to whichever of alpha,
///    alpha+1 lies outside X.
///  - case 3: (alpha, alpha+1).
/// The result is expressed in the instance's own node numbering. Throws
/// std::invalid_argument unless 1 <= alpha <= m'-1.
Solution alpha_left_right(const LineInstance& instance, int alpha);

/// alpha-Left-Right with alpha = m'/2 for even windows, (m'+1)/2 for odd.
Solution lr_for_parity(const LineInstance& instance);

/// The alpha lr_for_parity uses for a window of `window_size` nodes.
int parity_alpha(int window_size);

/// Facility 1 at the leftmost approver of 1, facility 2 at the rightmost
/// approver of 2. On a collision facility 2 steps one node toward the middle
/// of the line. A facility nobody approves falls back to the leftmost
/// (facility 1) or rightmost (facility 2) occupied node.
Solution two_extremes(const LineInstance& instance);

/// Identifies a mechanism by its CLI name: fmne, pd3, alr:<alpha>, alr:auto,
/// two-extremes.
struct MechanismId {
    enum class Kind { Fmne, PriorityDictatorship, AlphaLeftRight, AlphaLeftRightAuto, TwoExtremes };

    Kind kind = Kind::Fmne;
    int alpha = 0;  ///< only for AlphaLeftRight

    static MechanismId parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const MechanismId&) const = default;
};

/// A deterministic map from instances to feasible solutions, with the
/// positional part of its domain. Preference-domain membership is checked
/// by callers.
struct Mechanism {
    std::string name;
    std::function<Solution(const LineInstance&)> apply;
    std::function<bool(const LineInstance&)> accepts = [](const LineInstance&) { return true; };

    Solution operator()(const LineInstance& instance) const { return apply(instance); }
};

Mechanism make_mechanism(const MechanismId& id);
inline Mechanism make_mechanism(const std::string& id) { return make_mechanism(MechanismId::parse(id)); }

}  // namespace facloc

#endif  // FACLOC_MECHANISMS_HPP
