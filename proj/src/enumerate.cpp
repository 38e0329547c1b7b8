#include "facloc/enumerate.hpp"

#include <algorithm>

namespace facloc {

namespace {

std::uint64_t power(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

bool next_combination(std::vector<int>& combo, int m) {
    const int k = static_cast<int>(combo.size());
    int i = k - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == m - k + i + 1) --i;
    if (i < 0) return false;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

}  // namespace

std::vector<PositionChunk> partition(const EnumerationFamily& family) {
    std::vector<PositionChunk> chunks;
    const std::uint64_t pref_count = domain_pairs(family.domain).size();
    std::uint64_t next_id = 0;
    for (int m = std::max(2, family.m_min); m <= family.m_max; ++m) {
        const int n_hi = family.n_max > 0 ? std::min(family.n_max, m) : m;
        for (int n = std::max(2, family.n_min); n <= n_hi; ++n) {
            if (family.empty_nodes == EmptyNodes::None && n != m) continue;
            if (family.empty_nodes == EmptyNodes::AtLeastOne && n == m) continue;
            std::vector<int> combo(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
            do {
                const std::uint64_t size = power(pref_count, n);
                chunks.push_back({m, combo, next_id, size});
                next_id += size;
            } while (next_combination(combo, m));
        }
    }
    return chunks;
}

void for_each_in_chunk(const PositionChunk& chunk, PrefDomain domain, const InstanceVisitor& visit) {
    const auto pairs = domain_pairs(domain);
    const std::size_t n = chunk.positions.size();
    std::vector<std::size_t> digits(n, 0);
    std::vector<Agent> agents(n);
    for (std::size_t i = 0; i < n; ++i) agents[i].pos = chunk.positions[i];
    std::uint64_t id = chunk.first_id;
    while (true) {
        for (std::size_t i = 0; i < n; ++i) agents[i].prefs = pairs[digits[i]];
        visit(LineInstance(chunk.m, agents), id++);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++digits[i] < pairs.size()) break;
            digits[i] = 0;
            if (i == 0) return;
        }
    }
}

void for_each_instance(const EnumerationFamily& family, const InstanceVisitor& visit) {
    for (const auto& chunk : partition(family)) for_each_in_chunk(chunk, family.domain, visit);
}

std::uint64_t count_instances(const EnumerationFamily& family) {
    std::uint64_t total = 0;
    for (const auto& chunk : partition(family)) total += chunk.size;
    return total;
}

std::vector<LineInstance> enumerate_instances(int m_max, int n_min, bool allow_empty_prefs) {
    EnumerationFamily family;
    family.m_max = m_max;
    family.n_min = n_min;
    family.domain = allow_empty_prefs ? PrefDomain::Full : PrefDomain::Approving;
    std::vector<LineInstance> out;
    for_each_instance(family, [&](const LineInstance& inst, std::uint64_t) { out.push_back(inst); });
    return out;
}

std::vector<LineInstance> enumerate_profiles(int m, const std::vector<int>& positions, PrefDomain domain) {
    PositionChunk chunk{m, positions, 0, 0};
    std::vector<LineInstance> out;
    for_each_in_chunk(chunk, domain, [&](const LineInstance& inst, std::uint64_t) { out.push_back(inst); });
    return out;
}

}  // namespace facloc
