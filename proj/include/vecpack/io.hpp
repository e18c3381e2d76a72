#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vecpack/core.hpp"
#include "vecpack/rounding.hpp"

namespace vecpack {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"d": int, "items": [[f, ...], ...]}
Instance parse_instance_json(const std::string& text);
// One item per line, d whitespace-separated decimals; blank lines and lines
// starting with '#' are skipped. d is taken from the first item.
Instance parse_instance_text(const std::string& text);
// JSON when the first non-blank character is '{', text otherwise.
Instance parse_instance(const std::string& text);

std::string instance_to_json(const Instance& inst);
std::string instance_to_text(const Instance& inst);

// {"bins": int, "assignment": [int, ...]}
Packing parse_packing_json(const std::string& text);
nlohmann::json packing_to_json(const Packing& pk);

nlohmann::json trace_to_json(const RoundingTrace& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace vecpack
