#ifndef FACLOC_ENUMERATE_HPP
#define FACLOC_ENUMERATE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "facloc/core.hpp"

namespace facloc {

enum class EmptyNodes { Any, None, AtLeastOne };

/// A bounded instance space: every line size m in [m_min, m_max], every agent
/// count n in [n_min, n_max] (n_max = 0 means "up to m"), every n-subset of
/// nodes, and every preference assignment from `domain`.
struct EnumerationFamily {
    int m_min = 2;
    int m_max = 2;
    int n_min = 2;
    int n_max = 0;
    PrefDomain domain = PrefDomain::Approving;
    EmptyNodes empty_nodes = EmptyNodes::Any;
};

/// All instances sharing one line size and position set. Chunks are
/// independent; `first_id` is the global enumeration index of the chunk's
/// first instance.
struct PositionChunk {
    int m = 0;
    std::vector<int> positions;
    std::uint64_t first_id = 0;
    std::uint64_t size = 0;
};

using InstanceVisitor = std::function<void(const LineInstance&, std::uint64_t id)>;

/// Chunks in enumeration order: m ascending, then n, then position sets in
/// lexicographic order.
std::vector<PositionChunk> partition(const EnumerationFamily& family);

/// Preference assignments in odometer order over domain_pairs(domain), with
/// the leftmost agent as the most significant digit.
void for_each_in_chunk(const PositionChunk& chunk, PrefDomain domain, const InstanceVisitor& visit);

void for_each_instance(const EnumerationFamily& family, const InstanceVisitor& visit);

std::uint64_t count_instances(const EnumerationFamily& family);

/// Every instance with 2 <= n <= m <= m_max and n >= n_min.
std::vector<LineInstance> enumerate_instances(int m_max, int n_min, bool allow_empty_prefs);

/// Every preference profile over fixed positions on a line of m nodes.
std::vector<LineInstance> enumerate_profiles(int m, const std::vector<int>& positions, PrefDomain domain);

}  // namespace facloc

#endif  // FACLOC_ENUMERATE_HPP
