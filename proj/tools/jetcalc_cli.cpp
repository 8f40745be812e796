// jetcalc: verify, solve and build conservation laws for PDE systems in solved form.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "jetcalc/corpus.hpp"

#ifndef JETCALC_CORPUS_DIR
#define JETCALC_CORPUS_DIR "corpus"
#endif

using namespace jetcalc;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
  std::string file;
  std::vector<std::string> params;
  bool json = false;
  int points = 50;
  uint64_t seed = OracleOptions{}.seed;

  OracleOptions oracle() const {
    OracleOptions o;
    o.points = points;
    o.seed = seed;
    return o;
  }
  ParamOverrides overrides() const {
    ParamOverrides out;
    for (auto& p : params) out.push_back(parse_override(p));
    return out;
  }
};

void add_common(CLI::App* sub, Common& c, bool needs_file = true) {
  if (needs_file) sub->add_option("file", c.file, "system file")->required();
  sub->add_option("--param", c.params, "bind a parameter, e.g. p=2 (repeatable)");
  sub->add_flag("--json", c.json, "JSON report");
  sub->add_option("--points", c.points, "numeric oracle points");
  sub->add_option("--seed", c.seed, "numeric oracle seed");
}

// key=value items of --pair / --current.
std::map<std::string, std::string> keyed(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (auto& it : items) {
    auto [k, v] = parse_override(it);
    out[k] = v;
  }
  return out;
}

Json check_json(const Check& c) {
  Json j;
  j["verdict"] = c.verdict;
  j["decided_by"] = c.decided_by;
  j["residuals"] = c.residuals;
  if (c.oracle_run) {
    j["oracle"] = {{"points", c.oracle.evaluated}, {"nonzero", c.oracle.nonzero}, {"skipped", c.oracle.skipped}};
    if (!c.oracle.first_failure.empty()) j["oracle"]["first_failure"] = c.oracle.first_failure;
  }
  return j;
}

void print_check(const std::string& what, const Check& c) {
  std::cout << what << ": " << c.verdict << " (" << c.decided_by;
  if (c.oracle_run) std::cout << ", " << c.oracle.evaluated << " points, " << c.oracle.nonzero << " nonzero";
  std::cout << ")\n";
  if (c.verdict != "pass")
    for (size_t i = 0; i < c.residuals.size(); ++i)
      if (c.residuals[i] != "0") std::cout << "  residual[" << i << "] = " << c.residuals[i] << "\n";
  if (c.oracle_run && !c.oracle.first_failure.empty()) std::cout << "  " << c.oracle.first_failure << "\n";
}

Current parse_current(const std::string& T, const std::string& X, const PdeSystem& sys) {
  Current c(sys.n_indep());
  c.comp[0] = parse_vector(std::vector<std::string>{T}, sys.space)[0];
  auto xs = X.empty() ? VectorExpr{} : parse_vector(X, sys.space);
  if (static_cast<int>(xs.size()) != sys.n_indep() - 1)
    throw FileError("X needs " + std::to_string(sys.n_indep() - 1) + " components separated by ';'");
  for (size_t i = 0; i < xs.size(); ++i) c.comp[i + 1] = xs[i];
  return c;
}

VectorExpr parse_multiplier(const std::string& text, const PdeSystem& sys) {
  auto Q = parse_vector(text, sys.space);
  if (static_cast<int>(Q.size()) != sys.n_eq())
    throw FileError("multiplier needs " + std::to_string(sys.n_eq()) + " components separated by ';'");
  return Q;
}

int cmd_verify(const Common& c, const std::string& multiplier, const std::vector<std::string>& current,
               const std::vector<std::string>& pair) {
  auto doc = load_system_file(c.file, c.overrides());
  const PdeSystem& sys = doc.system;
  Json rep;
  rep["system"] = sys.name;
  bool ok = true;
  int checks = 0;
  auto record = [&](const std::string& key, const Check& ch) {
    ++checks;
    ok = ok && ch.verdict == "pass";
    rep[key] = check_json(ch);
    if (!c.json) print_check(key, ch);
  };
  if (!multiplier.empty()) record("multiplier", check_multiplier(sys, parse_multiplier(multiplier, sys), c.oracle()));
  if (!current.empty()) {
    auto kv = keyed(current);
    record("conservation", check_conservation(sys, parse_current(kv["T"], kv["X"], sys), c.oracle()));
  }
  if (!pair.empty()) {
    auto kv = keyed(pair);
    if (!kv.count("Q")) throw FileError("--pair needs Q=...");
    auto cur = parse_current(kv["T"], kv["X"], sys);
    auto Q = parse_multiplier(kv["Q"], sys);
    record("characteristic", check_characteristic(sys, cur, Q, c.oracle()));
    record("conservation", check_conservation(sys, cur, c.oracle()));
  }
  if (checks == 0) throw CLI::ValidationError("verify", "give --multiplier, --current or --pair");
  rep["pass"] = ok;
  if (c.json) std::cout << rep.dump(2) << "\n";
  return ok ? kPass : kFail;
}

int cmd_solve(const Common& c, const std::string& target_text, int degree, const std::string& basis,
              const std::string& sweep) {
  Target target = parse_target(target_text);
  auto run = [&](const ParamOverrides& ov, Json& out) {
    auto doc = load_system_file(c.file, ov);
    const PdeSystem& sys = doc.system;
    LinearAnsatz ans;
    if (basis.empty()) {
      ans = default_ansatz(sys, target, degree);
    } else {
      // Each scalar basis element is placed in every component.
      size_t n = target == Target::Multipliers || target == Target::AdjointSymmetries ? sys.n_eq() : sys.n_dep();
      for (auto& e : parse_vector(basis, sys.space))
        for (size_t k = 0; k < n; ++k) {
          VectorExpr v(n);
          v[k] = e;
          ans.basis.push_back(v);
        }
    }
    auto sol = solve_linear_ansatz(target, sys, ans);
    out["unknowns"] = sol.unknowns;
    out["equations"] = sol.equations;
    out["matrix_rank"] = sol.rank;
    out["basis"] = Json::array();
    bool ok = true;
    for (auto& b : sol.basis) {
      Json item = Json::array();
      for (auto& e : b) item.push_back(to_string(e, sys.space));
      out["basis"].push_back(item);
      ok = ok && zero_test(residual_for(target, sys, b)).verdict == ZeroVerdict::Zero;
    }
    out["reverified"] = ok;
    return ok;
  };
  Json rep;
  rep["target"] = to_string(target);
  bool ok = true;
  if (sweep.empty()) {
    ok = run(c.overrides(), rep);
    if (!c.json) {
      std::cout << "# " << rep["basis"].size() << " solutions; " << rep["unknowns"].get<size_t>() << " unknowns, "
                << rep["equations"].get<size_t>() << " equations, rank " << rep["matrix_rank"].get<size_t>() << "\n";
      for (auto& b : rep["basis"]) {
        std::string line;
        for (size_t i = 0; i < b.size(); ++i) line += (i ? " ; " : "") + b[i].get<std::string>();
        std::cout << line << "\n";
      }
    }
  } else {
    // name=v1,v2,... : one solve per value.
    auto [name, values] = parse_override(sweep);
    rep["sweep"] = name;
    rep["runs"] = Json::array();
    std::stringstream ss(values);
    std::string v;
    while (std::getline(ss, v, ',')) {
      auto ov = c.overrides();
      ov.emplace_back(name, v);
      Json r;
      r[name] = v;
      ok = run(ov, r) && ok;
      rep["runs"].push_back(r);
      if (!c.json) {
        std::cout << name << "=" << v << ": dimension " << r["basis"].size() << "\n";
        for (auto& b : r["basis"]) {
          std::string line;
          for (size_t i = 0; i < b.size(); ++i) line += (i ? " ; " : "") + b[i].get<std::string>();
          std::cout << "  " << line << "\n";
        }
      }
    }
  }
  if (c.json) std::cout << rep.dump(2) << "\n";
  return ok ? kPass : kFail;
}

struct BuildOpts {
  std::string multiplier, method = "homotopy", scaling, u0, original;
  std::vector<std::string> fix;
  std::string name;
};

int cmd_build(const Common& c, const BuildOpts& b) {
  auto doc = load_system_file(c.file, c.overrides());
  const PdeSystem& sys = doc.system;
  auto Q = parse_multiplier(b.multiplier, sys);
  ConservedCurrent built;
  const PdeSystem* target = &sys;
  std::optional<SystemDoc> orig;
  auto action = [&]() -> const ScalingAction& {
    const ScalingAction* a = b.scaling.empty() ? (sys.scalings.empty() ? nullptr : &sys.scalings[0])
                                               : sys.find_scaling(b.scaling);
    if (!a) throw FileError("no scaling action " + (b.scaling.empty() ? std::string("in [scaling]") : "'" + b.scaling + "'"));
    return *a;
  };
  if (b.method == "homotopy") {
    VectorExpr u0;
    if (!b.u0.empty()) u0 = parse_vector(b.u0, sys.space);
    built = current_from_multiplier_homotopy(sys, Q, u0);
  } else if (b.method == "scaling") {
    built = current_from_multiplier_scaling(sys, Q, action());
  } else if (b.method == "direct") {
    built = current_from_multiplier_direct(sys, Q);
  } else if (b.method == "dimensional") {
    if (b.original.empty()) throw FileError("--method dimensional needs --original");
    orig = load_system_file(b.original, c.overrides());
    std::map<int, Rational> values;
    for (auto& f : b.fix) {
      auto [k, v] = parse_override(f);
      int d = sys.space.find_dep(k);
      if (d < 0) throw FileError("--fix " + k + ": not a dependent variable");
      values[d] = parse_rational(v);
    }
    built = verify_dimensional_scaling(sys, Q, action(), values, orig->system);
    target = &orig->system;
  } else {
    throw CLI::ValidationError("--method", "unknown method " + b.method);
  }
  // Always re-verify before printing.
  Check cons = check_conservation(*target, built.current, c.oracle());
  Json rep;
  rep["current"] = current_json(built, target->space);
  rep["conservation"] = check_json(cons);
  if (b.method != "dimensional") {
    Check ch = check_characteristic(sys, built.current, Q, c.oracle());
    rep["characteristic"] = check_json(ch);
    if (!c.json && b.method != "scaling") print_check("# characteristic", ch);
  }
  if (c.json) {
    std::cout << rep.dump(2) << "\n";
  } else {
    print_check("# conservation", cons);
    if (built.method == "direct") std::cout << "# trivial freedom pinned: " << built.trivial_freedom << "\n";
    std::cout << current_block(built, target->space, b.name);
  }
  return cons.verdict == "pass" ? kPass : kFail;
}

int cmd_corpus(const Common& c, const std::string& dir, unsigned jobs) {
  auto files = corpus_files(dir);
  if (files.empty()) {
    std::cerr << "error: no .toml files in " << dir << "\n";
    return kUsage;
  }
  auto rep = run_corpus(files, jobs, c.oracle());
  if (c.json) {
    Json j;
    j["entries"] = Json::array();
    for (auto& e : rep.entries)
      j["entries"].push_back({{"file", std::filesystem::path(e.file).filename().string()},
                              {"kind", e.kind},
                              {"name", e.name},
                              {"outcome", e.outcome},
                              {"expected", e.expected},
                              {"ok", e.ok()},
                              {"detail", e.detail}});
    j["load_errors"] = rep.load_errors;
    j["failures"] = rep.failures();
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& e : rep.entries) {
      std::string file = std::filesystem::path(e.file).filename().string();
      std::cout << (e.ok() ? "ok   " : "FAIL ") << file << "  " << e.kind << " " << e.name << ": " << e.outcome;
      if (!e.ok()) std::cout << " (expected " << e.expected << ")";
      std::cout << "  [" << e.detail << "]\n";
    }
    for (auto& l : rep.load_errors) std::cout << "LOAD " << l << "\n";
    std::cout << rep.entries.size() << " entries, " << rep.failures() << " failures\n";
  }
  if (!rep.load_errors.empty()) return kUsage;
  return rep.failures() ? kFail : kPass;
}

int cmd_euler(const Common& c, const std::string& expr) {
  auto doc = load_system_file(c.file, c.overrides());
  const auto& sp = doc.system.space;
  Expr f = parse_vector(std::vector<std::string>{expr}, sp)[0];
  auto E = euler(f, sp.n_dep());
  Json j;
  for (int a = 0; a < sp.n_dep(); ++a) {
    j[sp.dep[a]] = to_string(E[a], sp);
    if (!c.json) std::cout << "E_" << sp.dep[a] << " = " << to_string(E[a], sp) << "\n";
  }
  if (c.json) std::cout << j.dump(2) << "\n";
  return kPass;
}

int cmd_frechet(const Common& c, const std::string& expr, const std::string& dir, const std::string& adj) {
  auto doc = load_system_file(c.file, c.overrides());
  const auto& sp = doc.system.space;
  Expr f = parse_vector(std::vector<std::string>{expr}, sp)[0];
  Json j;
  if (!dir.empty()) {
    auto v = parse_vector(dir, sp);
    if (static_cast<int>(v.size()) != sp.n_dep()) throw FileError("direction needs one component per dependent variable");
    std::string s = to_string(frechet(f, v), sp);
    j["frechet"] = s;
    if (!c.json) std::cout << "frechet = " << s << "\n";
  }
  if (!adj.empty()) {
    Expr w = parse_vector(std::vector<std::string>{adj}, sp)[0];
    auto a = frechet_adjoint(f, w, sp.n_dep());
    for (int k = 0; k < sp.n_dep(); ++k) {
      j["adjoint"][sp.dep[k]] = to_string(a[k], sp);
      if (!c.json) std::cout << "adjoint[" << sp.dep[k] << "] = " << to_string(a[k], sp) << "\n";
    }
  }
  if (dir.empty() && adj.empty()) throw CLI::ValidationError("frechet", "give --direction and/or --adjoint");
  if (c.json) std::cout << j.dump(2) << "\n";
  return kPass;
}

int cmd_helmholtz(const Common& c, bool lagrangian) {
  auto doc = load_system_file(c.file, c.overrides());
  const PdeSystem& sys = doc.system;
  auto r = helmholtz_check(sys);
  Json j;
  j["square"] = r.square;
  j["odd_order"] = r.odd_order;
  j["order"] = r.order;
  j["variational"] = r.variational;
  j["residuals"] = Json::array();
  for (auto& x : r.residuals)
    j["residuals"].push_back({{"equation", sys.equations[x.eq].name},
                              {"dependent", sys.space.dep[x.dep]},
                              {"k", sys.space.letters(x.J).empty() ? "0" : sys.space.letters(x.J)},
                              {"residual", truncate_text(to_string(x.residual, sys.space))}});
  if (lagrangian && r.variational) j["lagrangian"] = to_string(lagrangian_from_system(sys), sys.space);
  if (c.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "variational: " << (r.variational ? "yes" : "no") << "\n";
    if (!r.square) std::cout << "  not square\n";
    if (r.odd_order) std::cout << "  odd order\n";
    for (auto& x : j["residuals"])
      std::cout << "  (" << x["equation"].get<std::string>() << ", " << x["dependent"].get<std::string>()
                << ", k=" << x["k"].get<std::string>() << ") " << x["residual"].get<std::string>() << "\n";
    if (j.contains("lagrangian")) std::cout << "L = " << j["lagrangian"].get<std::string>() << "\n";
  }
  return r.variational ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jetcalc: conservation laws of PDE systems in solved form"};
  app.require_subcommand(1);

  Common c;
  std::string multiplier, target = "multipliers", basis, sweep, expr, direction, adjoint;
  std::vector<std::string> current, pair;
  int degree = -1;
  BuildOpts bo;
  std::string dir = JETCALC_CORPUS_DIR;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool lagrangian = false;

  auto* verify = app.add_subcommand("verify", "check a multiplier, a current or a (current, multiplier) pair");
  add_common(verify, c);
  verify->add_option("--multiplier", multiplier, "Q components separated by ';'");
  verify->add_option("--current", current, "T=... X=...")->expected(1, 2);
  verify->add_option("--pair", pair, "T=... X=... Q=...")->expected(2, 3);

  auto* solve = app.add_subcommand("solve", "solve a determining system over a linear ansatz");
  add_common(solve, c);
  solve->add_option("--target", target, "multipliers | symmetries | adjoint-symmetries | variational");
  solve->add_option("--degree", degree, "monomial degree of the default basis");
  solve->add_option("--basis", basis, "scalar basis elements separated by ';'");
  solve->add_option("--sweep", sweep, "name=v1,v2,... : solve once per parameter value");

  auto* build = app.add_subcommand("build", "construct a conserved current from a multiplier");
  add_common(build, c);
  build->add_option("--multiplier", bo.multiplier, "Q components separated by ';'")->required();
  build->add_option("--method", bo.method, "homotopy | scaling | direct | dimensional");
  build->add_option("--scaling", bo.scaling, "named scaling action");
  build->add_option("--u0", bo.u0, "homotopy base point, constants separated by ';'");
  build->add_option("--original", bo.original, "dimensional: the system before promoting constants");
  build->add_option("--fix", bo.fix, "dimensional: promoted variable value, e.g. mu=1");
  build->add_option("--name", bo.name, "name for the emitted block");

  auto* corpus = app.add_subcommand("corpus", "run every corpus entry");
  add_common(corpus, c, false);
  corpus->add_option("dir", dir, "corpus directory");
  corpus->add_flag("--run-all", "run every entry (default)");
  corpus->add_option("--jobs", jobs, "worker threads");

  auto* eul = app.add_subcommand("euler", "Euler operator of an expression");
  add_common(eul, c);
  eul->add_option("--expr", expr, "expression")->required();

  auto* fre = app.add_subcommand("frechet", "Frechet derivative and its adjoint");
  add_common(fre, c);
  fre->add_option("--expr", expr, "expression")->required();
  fre->add_option("--direction", direction, "v components separated by ';'");
  fre->add_option("--adjoint", adjoint, "w for the adjoint");

  auto* hel = app.add_subcommand("helmholtz", "Helmholtz conditions for the system");
  add_common(hel, c);
  hel->add_flag("--lagrangian", lagrangian, "print L when variational");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) return cmd_verify(c, multiplier, current, pair);
    if (*solve) return cmd_solve(c, target, degree, basis, sweep);
    if (*build) return cmd_build(c, bo);
    if (*corpus) return cmd_corpus(c, dir, jobs);
    if (*eul) return cmd_euler(c, expr);
    if (*fre) return cmd_frechet(c, expr, direction, adjoint);
    if (*hel) return cmd_helmholtz(c, lagrangian);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BuildError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
