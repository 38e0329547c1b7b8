#ifndef FACLOC_TESTS_HELPERS_HPP
#define FACLOC_TESTS_HELPERS_HPP

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "facloc/core.hpp"

namespace facloc::testing {

inline ApprovalPair pref(const std::string& word) {
    if (word == "f1") return {true, false};
    if (word == "f2") return {false, true};
    if (word == "both") return {true, true};
    if (word == "none") return {false, false};
    throw std::invalid_argument("bad preference word " + word);
}

// Agents at `positions` with the whitespace separated preference words in `prefs`.
inline LineInstance make(int m, const std::vector<int>& positions, const std::string& prefs) {
    std::istringstream words(prefs);
    std::vector<Agent> agents;
    for (int pos : positions) {
        std::string w;
        words >> w;
        agents.push_back({pos, pref(w)});
    }
    return LineInstance(m, agents);
}

// Agents on consecutive nodes 1..k.
inline LineInstance consecutive(int m, const std::string& prefs) {
    std::istringstream words(prefs);
    std::vector<int> positions;
    std::string w;
    for (int pos = 1; words >> w; ++pos) positions.push_back(pos);
    return make(m, positions, prefs);
}

inline LineInstance tight_fixed() { return consecutive(5, "f2 f2 f1 f1 f1"); }
inline LineInstance tight_empty() { return consecutive(7, "f2 f2 f2 f1 f1 f1"); }

}  // namespace facloc::testing

#endif  // FACLOC_TESTS_HELPERS_HPP
