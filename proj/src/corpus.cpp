#include "jetcalc/corpus.hpp"

#include <atomic>
#include <filesystem>
#include <thread>

namespace jetcalc {

namespace {

std::vector<std::string> residual_texts(const std::vector<ZeroResult>& rs, const JetSpace& space) {
  std::vector<std::string> out;
  for (auto& r : rs) out.push_back(truncate_text(to_string(r.cleared, space)));
  return out;
}

const char* exact_verdict(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero:
      return "pass";
    case ZeroVerdict::NonZero:
      return "fail";
    default:
      return "undetermined";
  }
}

// Settles an undetermined exact verdict with the oracle. A nonzero value at
// any point is a definite failure; all-zero is only oracle-backed.
void settle(Check& c, const OracleResult& o, const OracleOptions& opts) {
  c.oracle = o;
  c.oracle_run = true;
  c.decided_by = "oracle";
  if (o.nonzero > 0)
    c.verdict = "fail";
  else if (o.passed(opts))
    c.verdict = "pass";
  else
    c.verdict = "undetermined";
}

PdeSystem entry_system(const SystemDoc& doc, const ParamOverrides& extra) {
  if (extra.empty()) return doc.system;
  ParamOverrides all = doc.overrides;
  for (auto& p : extra) {
    bool replaced = false;
    for (auto& q : all)
      if (q.first == p.first) {
        q.second = p.second;
        replaced = true;
      }
    if (!replaced) all.push_back(p);
  }
  return system_from_json(doc.raw, all);
}

std::string oracle_note(const Check& c) {
  if (!c.oracle_run) return "exact";
  return "oracle " + std::to_string(c.oracle.evaluated) + " points, " + std::to_string(c.oracle.nonzero) + " nonzero" +
         (c.oracle.first_failure.empty() ? "" : " (" + truncate_text(c.oracle.first_failure, 160) + ")");
}

}  // namespace

std::string truncate_text(const std::string& s, size_t n) {
  if (s.size() <= n) return s;
  return s.substr(0, n) + "...";
}

Check check_multiplier(const PdeSystem& sys, const VectorExpr& Q, const OracleOptions& opts) {
  Check c;
  auto vv = verify_multiplier(sys, Q);
  c.verdict = exact_verdict(vv.verdict);
  c.residuals = residual_texts(vv.components, sys.space);
  if (vv.verdict == ZeroVerdict::Undetermined) {
    OracleResult total;
    for (auto& r : vv.components) {
      auto o = numeric_zero_check(r.cleared, sys.space, opts);
      total.evaluated = total.evaluated == 0 ? o.evaluated : std::min(total.evaluated, o.evaluated);
      total.nonzero += o.nonzero;
      total.skipped += o.skipped;
      if (total.first_failure.empty()) total.first_failure = o.first_failure;
    }
    settle(c, total, opts);
  }
  return c;
}

Check check_conservation(const PdeSystem& sys, const Current& cur, const OracleOptions& opts) {
  Check c;
  if (cur.size() != sys.n_indep())
    throw FileError("current has " + std::to_string(cur.size()) + " components, expected " +
                    std::to_string(sys.n_indep()));
  auto z = verify_conservation(sys, cur);
  c.verdict = exact_verdict(z.verdict);
  c.residuals = residual_texts({z}, sys.space);
  if (z.verdict == ZeroVerdict::Undetermined) settle(c, numeric_conservation_check(sys, cur, opts), opts);
  return c;
}

Check check_characteristic(const PdeSystem& sys, const Current& cur, const VectorExpr& Q, const OracleOptions& opts) {
  Check c;
  if (cur.size() != sys.n_indep())
    throw FileError("current has " + std::to_string(cur.size()) + " components, expected " +
                    std::to_string(sys.n_indep()));
  auto z = verify_characteristic(sys, cur, Q);
  c.verdict = exact_verdict(z.verdict);
  c.residuals = residual_texts({z}, sys.space);
  if (z.verdict == ZeroVerdict::Undetermined) settle(c, numeric_zero_check(z.cleared, sys.space, opts), opts);
  return c;
}

EntryOutcome run_multiplier_entry(const SystemDoc& doc, const MultiplierEntry& e, const OracleOptions& opts) {
  EntryOutcome o{doc.path, "multiplier", e.name, "error", e.expect, ""};
  try {
    PdeSystem sys = entry_system(doc, e.params);
    auto Q = parse_vector(e.Q, sys.space);
    if (static_cast<int>(Q.size()) != sys.n_eq()) throw FileError("multiplier length does not match equation count");
    auto c = check_multiplier(sys, Q, opts);
    o.outcome = c.verdict;
    o.detail = oracle_note(c);
    if (c.verdict == "fail" && !c.residuals.empty())
      for (auto& r : c.residuals)
        if (r != "0") {
          o.detail += "; residual " + r;
          break;
        }
  } catch (const std::exception& ex) {
    o.detail = ex.what();
  }
  return o;
}

EntryOutcome run_current_entry(const SystemDoc& doc, const CurrentEntry& e, const OracleOptions& opts) {
  EntryOutcome o{doc.path, "current", e.name, "error", e.expect, ""};
  try {
    PdeSystem sys = entry_system(doc, e.params);
    Current stated(sys.n_indep());
    stated.comp[0] = parse_vector(std::vector<std::string>{e.T}, sys.space)[0];
    auto X = parse_vector(e.X, sys.space);
    if (static_cast<int>(X.size()) != sys.n_indep() - 1) throw FileError("flux has the wrong number of components");
    for (size_t i = 0; i < X.size(); ++i) stated.comp[i + 1] = X[i];
    VectorExpr Q;
    if (!e.multiplier.empty()) Q = parse_vector(e.multiplier, sys.space);

    if (e.method == "verify") {
      auto c = check_conservation(sys, stated, opts);
      o.outcome = c.verdict;
      o.detail = "conservation " + oracle_note(c);
      if (c.verdict == "fail") o.detail += "; residual " + c.residuals[0];
      if (c.verdict == "pass" && !Q.empty()) {
        auto m = check_multiplier(sys, Q, opts);
        if (m.verdict != "pass") {
          o.outcome = m.verdict;
          o.detail += "; multiplier " + m.verdict;
        } else {
          o.detail += "; multiplier " + oracle_note(m);
        }
      }
      return o;
    }

    ConservedCurrent built;
    try {
      if (e.method == "homotopy") {
        built = current_from_multiplier_homotopy(sys, Q);
      } else if (e.method == "scaling") {
        const ScalingAction* act = e.scaling.empty() ? (sys.scalings.empty() ? nullptr : &sys.scalings[0])
                                                     : sys.find_scaling(e.scaling);
        if (!act) throw FileError("no scaling action '" + e.scaling + "'");
        built = current_from_multiplier_scaling(sys, Q, *act);
      } else {
        built = current_from_multiplier_direct(sys, Q);
      }
    } catch (const BuildError& ex) {
      o.outcome = "error";
      o.detail = ex.what();
      return o;
    }
    auto cons = check_conservation(sys, built.current, opts);
    if (cons.verdict != "pass") {
      o.outcome = cons.verdict;
      o.detail = "built current fails conservation: " + cons.residuals[0];
      return o;
    }
    auto eq = current_equivalence(sys, stated, built.current);
    o.outcome = eq.verdict == Triviality::Trivial ? "pass" : eq.verdict == Triviality::NonTrivial ? "fail" : "undetermined";
    o.detail = e.method + " current " + (o.outcome == "pass" ? "equivalent to" : "differs from") + " the stated one";
    if (built.omega) o.detail += "; omega = " + to_string(*built.omega, sys.space);
  } catch (const std::exception& ex) {
    o.outcome = "error";
    o.detail = ex.what();
  }
  return o;
}

EntryOutcome run_solve_entry(const SystemDoc& doc, const SolveEntry& e) {
  std::string name = e.target;
  for (auto& [k, v] : e.params) name += " " + k + "=" + v;
  EntryOutcome o{doc.path, "solve", name, "error", "pass", ""};
  try {
    PdeSystem sys = entry_system(doc, e.params);
    Target t = parse_target(e.target);
    auto ans = default_ansatz(sys, t, e.degree.value_or(-1));
    auto sol = solve_linear_ansatz(t, sys, ans);
    for (auto& b : sol.basis) {
      auto r = zero_test(residual_for(t, sys, b));
      if (r.verdict != ZeroVerdict::Zero) {
        o.outcome = "fail";
        o.detail = "a returned basis element does not re-verify";
        return o;
      }
    }
    o.detail = "dimension " + std::to_string(sol.basis.size()) + " (" + std::to_string(sol.unknowns) + " unknowns, rank " +
               std::to_string(sol.rank) + ")";
    o.outcome = !e.expect_dim || static_cast<int>(sol.basis.size()) == *e.expect_dim ? "pass" : "fail";
    if (o.outcome == "fail") o.detail += ", expected " + std::to_string(*e.expect_dim);
  } catch (const std::exception& ex) {
    o.detail = ex.what();
  }
  return o;
}

size_t CorpusReport::failures() const {
  size_t n = load_errors.size();
  for (auto& e : entries)
    if (!e.ok()) ++n;
  return n;
}

std::vector<std::string> corpus_files(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw FileError("not a directory: " + dir);
  std::vector<std::string> out;
  for (auto& p : fs::directory_iterator(dir))
    if (p.is_regular_file() && p.path().extension() == ".toml") out.push_back(p.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

CorpusReport run_corpus(const std::vector<std::string>& files, unsigned jobs, const OracleOptions& opts) {
  CorpusReport rep;
  std::vector<SystemDoc> docs;
  for (auto& f : files) {
    try {
      docs.push_back(load_system_file(f));
    } catch (const std::exception& e) {
      rep.load_errors.push_back(e.what());
    }
  }
  struct Task {
    size_t doc;
    int kind;
    size_t index;
  };
  std::vector<Task> tasks;
  for (size_t d = 0; d < docs.size(); ++d) {
    for (size_t i = 0; i < docs[d].multipliers.size(); ++i) tasks.push_back({d, 0, i});
    for (size_t i = 0; i < docs[d].currents.size(); ++i) tasks.push_back({d, 1, i});
    for (size_t i = 0; i < docs[d].solves.size(); ++i) tasks.push_back({d, 2, i});
  }
  rep.entries.resize(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      auto& t = tasks[k];
      auto& doc = docs[t.doc];
      if (t.kind == 0)
        rep.entries[k] = run_multiplier_entry(doc, doc.multipliers[t.index], opts);
      else if (t.kind == 1)
        rep.entries[k] = run_current_entry(doc, doc.currents[t.index], opts);
      else
        rep.entries[k] = run_solve_entry(doc, doc.solves[t.index]);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<size_t>(1, tasks.size()))));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rep;
}

}  // namespace jetcalc
