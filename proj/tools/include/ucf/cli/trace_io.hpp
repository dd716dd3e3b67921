#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "ucf/world.hpp"

namespace ucf::cli {

// One JSON object per line: record 0 carries "meta", rounds follow, and a final
// line carries the outcome. Doubles use the shortest round-trip form.
std::string trace_to_jsonl(const Trace& trace);
void write_trace(const Trace& trace, const std::string& path);

// Throws InvalidInput on malformed input. Pre positions are rebuilt from the
// previous record's post positions.
Trace parse_trace(std::istream& in);
Trace read_trace(const std::string& path);

nlohmann::ordered_json check_to_json(const CheckResult& check);

}  // namespace ucf::cli
