#pragma once

#include <string>
#include <vector>

#include "jetcalc/oracle.hpp"
#include "jetcalc/system_file.hpp"

namespace jetcalc {

// A verification verdict: exact when the structural test decides, otherwise
// backed by the numeric oracle.
struct Check {
  std::string verdict = "undetermined";  // pass | fail | undetermined
  std::string decided_by = "exact";      // exact | oracle
  std::vector<std::string> residuals;    // normal forms, truncated
  OracleResult oracle;
  bool oracle_run = false;
};

Check check_multiplier(const PdeSystem& sys, const VectorExpr& Q, const OracleOptions& opts = {});
Check check_conservation(const PdeSystem& sys, const Current& c, const OracleOptions& opts = {});
Check check_characteristic(const PdeSystem& sys, const Current& c, const VectorExpr& Q,
                           const OracleOptions& opts = {});

std::string truncate_text(const std::string& s, size_t n = 240);

struct EntryOutcome {
  std::string file;
  std::string kind;  // multiplier | current | solve
  std::string name;
  std::string outcome;  // pass | fail | error | undetermined
  std::string expected;
  std::string detail;
  bool ok() const { return outcome == expected; }
};

EntryOutcome run_multiplier_entry(const SystemDoc& doc, const MultiplierEntry& e, const OracleOptions& opts = {});
EntryOutcome run_current_entry(const SystemDoc& doc, const CurrentEntry& e, const OracleOptions& opts = {});
EntryOutcome run_solve_entry(const SystemDoc& doc, const SolveEntry& e);

struct CorpusReport {
  std::vector<EntryOutcome> entries;
  std::vector<std::string> load_errors;
  size_t failures() const;
};

// Sorted *.toml files in a directory; throws FileError if it does not exist.
std::vector<std::string> corpus_files(const std::string& dir);
// Entries run on `jobs` worker threads; the report order is file order then
// entry order regardless of scheduling.
CorpusReport run_corpus(const std::vector<std::string>& files, unsigned jobs, const OracleOptions& opts = {});

}  // namespace jetcalc
