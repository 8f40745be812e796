#include "jetcalc/text.hpp"

#include <cctype>

#include "jetcalc/calculus.hpp"

namespace jetcalc {

int JetSpace::find_indep(std::string_view name) const {
  for (size_t i = 0; i < indep.size(); ++i)
    if (indep[i] == name) return static_cast<int>(i);
  return -1;
}

int JetSpace::find_dep(std::string_view name) const {
  for (size_t i = 0; i < dep.size(); ++i)
    if (dep[i] == name) return static_cast<int>(i);
  return -1;
}

int JetSpace::find_param(std::string_view name) const {
  for (size_t i = 0; i < params.size(); ++i)
    if (params[i] == name) return static_cast<int>(i);
  return -1;
}

const Rational* JetSpace::find_bound(std::string_view name) const {
  for (auto& [n, v] : bound)
    if (n == name) return &v;
  return nullptr;
}

std::shared_ptr<const FunctionDecl> JetSpace::find_function(std::string_view name) const {
  for (auto& f : functions)
    if (f->name == name) return f;
  return nullptr;
}

std::string JetSpace::letters(const MultiIndex& mi) const {
  std::string s;
  for (int i = 0; i < kMaxIndep; ++i)
    for (int k = 0; k < mi[i]; ++k) s += i < n_indep() ? indep[i] : "?";
  return s;
}

std::string JetSpace::jet_name(const JetVar& v) const {
  std::string s = v.dep < n_dep() ? dep[v.dep] : "#" + std::to_string(v.dep);
  if (v.mi.order() > 0) s += "_" + letters(v.mi);
  return s;
}

std::optional<MultiIndex> JetSpace::parse_letters(std::string_view s) const {
  MultiIndex mi;
  for (char ch : s) {
    int i = find_indep(std::string_view(&ch, 1));
    if (i < 0) return std::nullopt;
    mi.c[i]++;
  }
  return mi;
}

// ---------------------------------------------------------------- printing

namespace {

std::string exponent_suffix(const Affine& e, const JetSpace& sp) {
  if (e.is_integer() && sgn(e.constant()) > 0) {
    if (e.constant() == 1) return "";
    return "^" + e.constant().get_str();
  }
  if (sgn(e.constant()) == 0 && e.linear().size() == 1 && e.linear()[0].second == 1)
    return "^" + sp.params[e.linear()[0].first];
  return "^(" + e.to_string(sp.params) + ")";
}

std::string base_string(const Base& b, const JetSpace& sp) {
  switch (b.kind()) {
    case BaseKind::Jet:
      return sp.jet_name(b.jet());
    case BaseKind::Indep:
      return b.index() < sp.n_indep() ? sp.indep[b.index()] : "?";
    case BaseKind::Slot:
      return "#" + std::to_string(b.index());
    case BaseKind::Func: {
      auto& n = b.func();
      std::string s = n.decl->name;
      bool any = false;
      for (int k : n.counts) any = any || k != 0;
      if (any) {
        if (n.counts.size() == 1 && n.counts[0] <= 3) {
          s += std::string(static_cast<size_t>(n.counts[0]), '\'');
        } else {
          s += "'[";
          for (size_t i = 0; i < n.counts.size(); ++i) s += (i ? "," : "") + std::to_string(n.counts[i]);
          s += "]";
        }
      }
      s += "(";
      for (size_t i = 0; i < n.args.size(); ++i) s += (i ? "," : "") + to_string(n.args[i], sp);
      return s + ")";
    }
    case BaseKind::Compound:
      return "(" + to_string(b.compound(), sp) + ")";
  }
  return "?";
}

}  // namespace

std::string to_string(const Affine& a, const JetSpace& sp) { return a.to_string(sp.params); }

std::string to_string(const Coeff& c, const JetSpace& sp) { return c.to_string(sp.params); }

std::string to_string(const Expr& e, const JetSpace& sp) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : e.terms()) {
    bool neg = t.coeff.looks_negative();
    Coeff c = neg ? -t.coeff : t.coeff;
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    std::string factors;
    for (size_t i = 0; i < t.mono.size(); ++i) {
      if (i) factors += "*";
      factors += base_string(t.mono[i].base, sp) + exponent_suffix(t.mono[i].exp, sp);
    }
    std::string cs;
    if (!c.is_one() || factors.empty()) {
      cs = c.to_string(sp.params);
      auto* sym = c.symbolic();
      if (sym && sym->den.empty() && sym->num.terms().size() > 1) cs = "(" + cs + ")";
    }
    if (cs.empty()) s += factors;
    else if (factors.empty()) s += cs;
    else s += cs + "*" + factors;
  }
  return s;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
  Parser(std::string_view text, const JetSpace& sp, const ParseOptions& opts)
      : s_(text), sp_(sp), opts_(opts) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (eat('+')) e = e + term();
      else if (eat('-')) e = e - term();
      else return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (eat('*')) {
        e = e * unary();
      } else if (eat('/')) {
        size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        try {
          if (auto c = d.constant_value()) e = e.scaled(c->inverse());
          else e = e * d.pow(Affine(-1));
        } catch (const std::domain_error& ex) {
          pos_ = at;
          fail(ex.what());
        }
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr b = primary();
    if (eat('^')) {
      size_t at = pos_;
      Expr x = unary();
      auto c = x.constant_value();
      std::optional<Affine> a;
      if (c) a = c->as_affine();
      if (!a) {
        pos_ = at;
        fail("exponent must be rational or affine in parameters");
      }
      try {
        return b.pow(*a);
      } catch (const std::domain_error& ex) {
        pos_ = at;
        fail(ex.what());
      }
    }
    return b;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
        pos_ = start;
        fail("non-rational literal");
      }
      return Expr(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr identifier() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (pos_ < s_.size() && s_[pos_] == '_') {
      ++pos_;
      size_t ls = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      int d = sp_.find_dep(name);
      if (d < 0) {
        pos_ = start;
        fail("undeclared dependent variable '" + name + "'");
      }
      auto mi = sp_.parse_letters(s_.substr(ls, pos_ - ls));
      if (!mi || pos_ == ls) {
        pos_ = ls;
        fail("bad derivative suffix on '" + name + "'");
      }
      return Expr::jet(d, *mi);
    }
    skip_ws();
    bool call = pos_ < s_.size() && (s_[pos_] == '(' || s_[pos_] == '\'');
    if (call) {
      auto decl = sp_.find_function(name);
      if (!decl) {
        pos_ = start;
        fail("undeclared function '" + name + "'");
      }
      return call_args(decl);
    }
    for (size_t i = 0; i < opts_.slots.size(); ++i)
      if (opts_.slots[i] == name) return Expr::slot(static_cast<int>(i));
    if (int d = sp_.find_dep(name); d >= 0) return Expr::jet(d, MultiIndex{});
    if (int i = sp_.find_indep(name); i >= 0) return Expr::indep(i);
    if (int p = sp_.find_param(name); p >= 0) return Expr(Coeff::param(p));
    if (auto* v = sp_.find_bound(name)) return Expr(*v);
    pos_ = start;
    fail("undeclared identifier '" + name + "'");
  }

  Expr call_args(const std::shared_ptr<const FunctionDecl>& decl) {
    std::vector<int> counts(static_cast<size_t>(decl->arity()), 0);
    int primes = 0;
    while (pos_ < s_.size() && s_[pos_] == '\'') {
      ++pos_;
      ++primes;
    }
    if (primes && eat('[')) {
      std::vector<int> given;
      do {
        skip_ws();
        size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (st == pos_) fail("expected derivative count");
        given.push_back(std::stoi(std::string(s_.substr(st, pos_ - st))));
      } while (eat(','));
      if (!eat(']')) fail("expected ']'");
      if (given.size() != counts.size()) fail("derivative count list does not match arity");
      counts = given;
    } else if (primes) {
      if (counts.size() != 1) fail("use f'[k1,...] for multi-argument derivatives");
      counts[0] = primes;
    }
    if (!eat('(')) fail("expected '('");
    std::vector<Expr> args;
    if (!eat(')')) {
      do {
        args.push_back(expr());
      } while (eat(','));
      if (!eat(')')) fail("expected ')'");
    }
    if (static_cast<int>(args.size()) != decl->arity()) fail("wrong number of arguments to " + decl->name);
    return make_func(decl, counts, std::move(args));
  }

  std::string_view s_;
  const JetSpace& sp_;
  const ParseOptions& opts_;
  size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const JetSpace& space, const ParseOptions& opts) {
  Parser p(text, space, opts);
  return p.parse_all();
}

JetVar parse_jet_var(std::string_view text, const JetSpace& space) {
  Expr e = parse_expr(text, space);
  if (e.size() == 1 && e.terms()[0].coeff.is_one() && e.terms()[0].mono.size() == 1) {
    auto& f = e.terms()[0].mono[0];
    if (f.base.kind() == BaseKind::Jet && f.exp == Affine(1)) return f.base.jet();
  }
  throw ParseError("expected a jet variable, got '" + std::string(text) + "'", 0);
}

Affine parse_affine(std::string_view text, const JetSpace& space) {
  Expr e = parse_expr(text, space);
  auto c = e.constant_value();
  std::optional<Affine> a;
  if (c) a = c->as_affine();
  if (!a) throw ParseError("expected a rational or affine parameter expression, got '" + std::string(text) + "'", 0);
  return *a;
}

}  // namespace jetcalc
