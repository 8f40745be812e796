#include "jetcalc/oracle.hpp"

#include <map>
#include <numeric>
#include <random>

#include "jetcalc/calculus.hpp"

namespace jetcalc {

namespace {

class Sampler {
public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  Rational rational() {
    std::uniform_int_distribution<int> num(-9, 8), den(1, 5);
    int n = num(rng_);
    if (n >= 0) ++n;  // skip zero
    Rational r(n, den(rng_));
    r.canonicalize();
    return r;
  }
  long small_int() { return std::uniform_int_distribution<int>(1, 5)(rng_); }

private:
  std::mt19937_64 rng_;
};

// lcm of the exponent denominators on jet and opaque bases, capped.
unsigned long root_degree(const Expr& e) {
  unsigned long l = 1;
  visit_factors(e, [&](const Factor& f) {
    if (!f.exp.is_constant()) return;
    if (f.base.kind() != BaseKind::Jet && f.base.kind() != BaseKind::Func) return;
    unsigned long d = f.exp.constant().get_den().get_ui();
    l = std::lcm(l, d);
  });
  return l > 12 ? 1 : l;
}

Rational power_of(const Rational& r, unsigned long k) {
  Rational out = 1;
  for (unsigned long i = 0; i < k; ++i) out *= r;
  return out;
}

std::string func_key(const FuncNode& f, const std::vector<Rational>& args) {
  std::string k = f.decl->name + "[";
  for (int c : f.counts) k += std::to_string(c) + ",";
  k += "](";
  for (auto& a : args) k += a.get_str() + ",";
  return k + ")";
}

struct Trial {
  NumericPoint pt;
  std::vector<std::optional<Rational>> bound;
  unsigned long root = 1;
};

template <class Fn>
OracleResult run(const JetSpace& space, const OracleOptions& opts, const std::vector<Expr>& shapes, Fn&& eval) {
  OracleResult r;
  Sampler s(opts.seed);
  auto memo = std::make_shared<std::map<std::string, Rational>>();
  int attempts = 0;
  int max_attempts = opts.points * opts.retries;
  while (r.evaluated < opts.points && attempts < max_attempts) {
    ++attempts;
    Trial tr;
    for (size_t i = 0; i < space.params.size(); ++i) {
      Rational v(s.small_int());
      tr.pt.params.push_back(v);
      tr.bound.push_back(v);
    }
    for (auto& e : shapes) tr.root = std::lcm(tr.root, root_degree(bind_params(e, tr.bound)));
    if (tr.root > 12) tr.root = 1;
    for (int i = 0; i < space.n_indep(); ++i) tr.pt.indep.push_back(s.rational());
    tr.pt.func = [memo, &s, root = tr.root](const FuncNode& f, const std::vector<Rational>& args) {
      std::string key = func_key(f, args);
      auto it = memo->find(key);
      if (it != memo->end()) return it->second;
      Rational v = power_of(s.rational(), root);
      memo->emplace(key, v);
      return v;
    };
    try {
      Rational v = eval(tr, s);
      ++r.evaluated;
      if (sgn(v) != 0) {
        if (r.nonzero == 0) {
          std::string where;
          for (auto& [jv, val] : tr.pt.jet) where += " " + space.jet_name(jv) + "=" + val.get_str();
          for (size_t i = 0; i < tr.pt.indep.size(); ++i)
            where += " " + space.indep[i] + "=" + tr.pt.indep[i].get_str();
          for (size_t i = 0; i < tr.pt.params.size(); ++i)
            where += " " + space.params[i] + "=" + tr.pt.params[i].get_str();
          r.first_failure = "value " + v.get_str() + " at" + where;
        }
        ++r.nonzero;
      }
    } catch (const EvalError&) {
      ++r.skipped;
    } catch (const std::domain_error&) {
      ++r.skipped;
    }
  }
  return r;
}

void assign_jets(Trial& tr, Sampler& s, const std::set<JetVar>& vars) {
  for (auto& v : vars)
    if (!tr.pt.jet.count(v)) tr.pt.jet[v] = power_of(s.rational(), tr.root);
}

}  // namespace

OracleResult numeric_zero_check(const Expr& e, const JetSpace& space, const OracleOptions& opts) {
  auto vars = jet_vars(e);
  return run(space, opts, {e}, [&](Trial& tr, Sampler& s) {
    assign_jets(tr, s, vars);
    return eval_numeric(e, tr.pt);
  });
}

OracleResult numeric_conservation_check(const PdeSystem& sys, const Current& c, const OracleOptions& opts) {
  Expr div = divergence(c);
  std::set<JetVar> free_vars;
  std::vector<std::pair<JetVar, Expr>> leads;
  for (auto& v : jet_vars(div)) {
    if (sys.is_lead_descendant(v)) {
      Expr val = sys.restrict(Expr::jet(v));
      for (auto& w : jet_vars(val)) free_vars.insert(w);
      leads.emplace_back(v, val);
    } else {
      free_vars.insert(v);
    }
  }
  std::vector<Expr> shapes{div};
  for (auto& [v, val] : leads) shapes.push_back(val);
  return run(sys.space, opts, shapes, [&](Trial& tr, Sampler& s) {
    assign_jets(tr, s, free_vars);
    // Restricted lead values mention only non-lead variables.
    std::map<JetVar, Rational> lead_vals;
    for (auto& [v, val] : leads) lead_vals[v] = eval_numeric(val, tr.pt);
    for (auto& [v, x] : lead_vals) tr.pt.jet[v] = x;
    return eval_numeric(div, tr.pt);
  });
}

}  // namespace jetcalc
