#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace jetcalc {

using Json = nlohmann::ordered_json;

class TomlError : public std::runtime_error {
public:
  TomlError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Reads the TOML subset used by system files: [table], [a.b], [[array]],
// key = value with strings, integers, booleans, arrays and inline tables.
// A value that is not valid TOML (e.g. `u = -2/p`) is kept as its raw text.
Json parse_toml(std::string_view text);

// Emits a TOML string literal with escapes.
std::string toml_quote(std::string_view s);

}  // namespace jetcalc
