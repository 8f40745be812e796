#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/current_builder.hpp"
#include "jetcalc/toml_lite.hpp"

namespace jetcalc {

// Malformed file content. Carries the offending key when known.
class FileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// name=value pairs from --param; values are rationals like "2" or "1/2".
using ParamOverrides = std::vector<std::pair<std::string, std::string>>;

// Stored multipliers, currents and solve requests. Expressions stay as text
// until an entry is run so that per-entry params can rebind the system.
struct MultiplierEntry {
  std::string name;
  std::vector<std::string> Q;
  std::string expect = "pass";  // pass | fail
  ParamOverrides params;
};

struct CurrentEntry {
  std::string name;
  std::string T;
  std::vector<std::string> X;
  std::vector<std::string> multiplier;
  std::string method = "verify";  // verify | homotopy | scaling | direct
  std::string scaling;            // action name for method = scaling
  std::string expect = "pass";    // pass | fail | error
  ParamOverrides params;
};

struct SolveEntry {
  std::string target = "multipliers";
  std::optional<int> degree;
  std::optional<int> expect_dim;
  ParamOverrides params;
};

struct SystemDoc {
  std::string path;
  Json raw;
  ParamOverrides overrides;  // as loaded; entry params apply on top
  PdeSystem system;
  std::vector<MultiplierEntry> multipliers;
  std::vector<CurrentEntry> currents;
  std::vector<SolveEntry> solves;
};

PdeSystem system_from_json(const Json& doc, const ParamOverrides& overrides = {});
SystemDoc read_system_doc(const Json& doc, const ParamOverrides& overrides = {});
SystemDoc load_system_file(const std::string& path, const ParamOverrides& overrides = {});

// "p=2" -> {"p", "2"}.
std::pair<std::string, std::string> parse_override(const std::string& text);
Rational parse_rational(const std::string& text);

// Components separated by ';'.
VectorExpr parse_vector(const std::string& text, const JetSpace& space);
VectorExpr parse_vector(const std::vector<std::string>& parts, const JetSpace& space);

// A [[current]] block in the system-file format.
std::string current_block(const ConservedCurrent& c, const JetSpace& space, const std::string& name = "");
Json current_json(const ConservedCurrent& c, const JetSpace& space);

}  // namespace jetcalc
