#ifndef FACLOC_INSTANCE_IO_HPP
#define FACLOC_INSTANCE_IO_HPP

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "facloc/core.hpp"

namespace facloc {

/// Malformed instance text. `what()` includes the byte offset when the JSON
/// itself is broken, or the offending field when the schema is violated.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance files: {"m": int, "agents": [{"pos": int, "f1": bool, "f2": bool}, ...]}
// with agents sorted by pos.

nlohmann::json to_json(const LineInstance& instance);
nlohmann::json to_json(const Solution& solution);

/// Schema errors raise ParseError; model violations (unsorted agents, n > m)
/// raise DomainError from the LineInstance constructor.
LineInstance instance_from_json(const nlohmann::json& doc);

LineInstance parse_instance(const std::string& text);
LineInstance load_instance(const std::string& path);

/// Compact single-line form, stable across runs.
std::string dump_instance(const LineInstance& instance);

}  // namespace facloc

#endif  // FACLOC_INSTANCE_IO_HPP
