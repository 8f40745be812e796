#pragma once

#include <random>
#include <string>
#include <vector>

#include "jetcalc/calculus.hpp"
#include "jetcalc/corpus.hpp"
#include "jetcalc/eval.hpp"
#include "jetcalc/system_file.hpp"
#include "jetcalc/text.hpp"

namespace jt {

using namespace jetcalc;

inline std::string corpus_path(const std::string& name) { return std::string(JETCALC_CORPUS_DIR) + "/" + name; }

inline SystemDoc corpus_doc(const std::string& name, const ParamOverrides& o = {}) {
  return load_system_file(corpus_path(name), o);
}

inline PdeSystem corpus_system(const std::string& name, const ParamOverrides& o = {}) {
  return corpus_doc(name, o).system;
}

inline PdeSystem toml_system(const std::string& text, const ParamOverrides& o = {}) {
  return system_from_json(parse_toml(text), o);
}

inline Expr E(const std::string& s, const JetSpace& sp) { return parse_expr(s, sp); }
inline std::string S(const Expr& e, const JetSpace& sp) { return to_string(e, sp); }

inline Current make_current(const JetSpace& sp, const std::string& T, const std::vector<std::string>& X) {
  Current c(sp.n_indep());
  c.comp[0] = parse_expr(T, sp);
  for (size_t i = 0; i < X.size(); ++i) c.comp[i + 1] = parse_expr(X[i], sp);
  return c;
}

// A bare (t, x) space with dependent variables u, v and a free param p.
inline JetSpace plain_space(bool with_p = false) {
  JetSpace sp;
  sp.indep = {"t", "x"};
  sp.dep = {"u", "v"};
  if (with_p) sp.params = {"p"};
  return sp;
}

// Small random generalized polynomials over a (t, x) jet space.
class RandomExpr {
public:
  RandomExpr(const JetSpace& sp, uint64_t seed) : sp_(sp), rng_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  JetVar var(int max_order = 2, int n_dep = -1) {
    int nd = n_dep < 0 ? sp_.n_dep() : n_dep;
    JetVar v;
    v.dep = pick(0, nd - 1);
    int ord = pick(0, max_order);
    for (int k = 0; k < ord; ++k) v.mi = v.mi.plus(pick(0, sp_.n_indep() - 1));
    return v;
  }

  // Up to `terms` terms, each a coefficient times up to three factors.
  Expr expr(int terms = 3, int max_order = 2, int n_dep = -1, bool symbolic = false) {
    Expr out;
    int nt = pick(1, terms);
    for (int k = 0; k < nt; ++k) {
      Rational c(pick(-5, 5) == 0 ? 1 : pick(-5, 5), pick(1, 3));
      c.canonicalize();
      Expr t(c);
      int nf = pick(0, 3);
      for (int f = 0; f < nf; ++f) {
        int kind = pick(0, 5);
        if (kind == 0) {
          t = t * Expr::indep(pick(0, sp_.n_indep() - 1));
        } else {
          Expr b = Expr::jet(var(max_order, n_dep));
          if (symbolic && !sp_.params.empty() && pick(0, 4) == 0)
            t = t * b.pow(Affine::param(0) + Affine(pick(0, 1)));
          else
            t = t * b.pow(Affine(pick(1, 2)));
        }
      }
      out += t;
    }
    return out;
  }

  Rational value() {
    int n = pick(-9, 9);
    if (n == 0) n = 1;
    Rational r(n, pick(1, 4));
    r.canonicalize();
    return r;
  }

  // Point covering every jet variable up to `order` and both coordinates.
  NumericPoint point(int order, int n_dep = -1) {
    NumericPoint pt;
    int nd = n_dep < 0 ? sp_.n_dep() : n_dep;
    for (int d = 0; d < nd; ++d)
      for (auto& mi : multi_indices(order)) pt.jet[JetVar{d, mi}] = value();
    for (int i = 0; i < sp_.n_indep(); ++i) pt.indep.push_back(value());
    for (size_t i = 0; i < sp_.params.size(); ++i) pt.params.push_back(Rational(pick(1, 4)));
    return pt;
  }

  std::vector<MultiIndex> multi_indices(int order) const {
    std::vector<MultiIndex> out{MultiIndex{}};
    std::vector<MultiIndex> layer{MultiIndex{}};
    for (int k = 0; k < order; ++k) {
      std::vector<MultiIndex> next;
      for (auto& m : layer)
        for (int i = 0; i < sp_.n_indep(); ++i) {
          auto n = m.plus(i);
          bool seen = false;
          for (auto& q : next) seen = seen || q == n;
          if (!seen) next.push_back(n);
        }
      out.insert(out.end(), next.begin(), next.end());
      layer = next;
    }
    return out;
  }

  std::mt19937_64& rng() { return rng_; }

private:
  const JetSpace& sp_;
  std::mt19937_64 rng_;
};

}  // namespace jt
