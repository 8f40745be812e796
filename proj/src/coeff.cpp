#include "jetcalc/coeff.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace jetcalc {

int compare(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::optional<Rational> exact_root(const Rational& r, unsigned long k) {
  if (sgn(r) < 0) return std::nullopt;
  if (k == 1) return r;
  mpz_class n, d;
  if (!mpz_root(n.get_mpz_t(), r.get_num_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(d.get_mpz_t(), r.get_den_mpz_t(), k)) return std::nullopt;
  Rational out(n, d);
  out.canonicalize();
  return out;
}

namespace {

Rational int_power(const Rational& r, long k) {
  Rational base = r;
  if (k < 0) {
    base = 1 / r;
    k = -k;
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(k));
  Rational out(n, d);
  out.canonicalize();
  return out;
}

}  // namespace

std::optional<Rational> rational_power(const Rational& r, const Rational& e) {
  if (!e.get_num().fits_slong_p() || !e.get_den().fits_ulong_p()) return std::nullopt;
  long a = e.get_num().get_si();
  unsigned long b = e.get_den().get_ui();
  if (sgn(r) == 0) {
    if (a < 0) return std::nullopt;
    return Rational(a == 0 ? 1 : 0);
  }
  Rational base = r;
  if (b != 1) {
    bool neg = sgn(r) < 0;
    if (neg && b % 2 == 0) return std::nullopt;
    auto root = exact_root(neg ? Rational(-r) : r, b);
    if (!root) return std::nullopt;
    base = neg ? Rational(-*root) : *root;
  }
  return int_power(base, a);
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------- Affine

Affine Affine::param(int index) {
  Affine a;
  a.lin_.push_back({index, Rational(1)});
  return a;
}

std::optional<long> Affine::as_long() const {
  if (!is_integer() || !c0_.get_num().fits_slong_p()) return std::nullopt;
  return c0_.get_num().get_si();
}

Affine Affine::operator-() const {
  Affine out;
  out.c0_ = -c0_;
  out.lin_ = lin_;
  for (auto& [i, c] : out.lin_) c = -c;
  return out;
}

Affine operator+(const Affine& a, const Affine& b) {
  Affine out;
  out.c0_ = a.c0_ + b.c0_;
  size_t i = 0, j = 0;
  while (i < a.lin_.size() || j < b.lin_.size()) {
    if (j == b.lin_.size() || (i < a.lin_.size() && a.lin_[i].first < b.lin_[j].first)) {
      out.lin_.push_back(a.lin_[i++]);
    } else if (i == a.lin_.size() || b.lin_[j].first < a.lin_[i].first) {
      out.lin_.push_back(b.lin_[j++]);
    } else {
      Rational s = a.lin_[i].second + b.lin_[j].second;
      if (sgn(s) != 0) out.lin_.push_back({a.lin_[i].first, s});
      ++i;
      ++j;
    }
  }
  return out;
}

Affine operator-(const Affine& a, const Affine& b) { return a + (-b); }

Affine operator*(const Affine& a, const Rational& r) {
  if (sgn(r) == 0) return Affine();
  Affine out;
  out.c0_ = a.c0_ * r;
  out.lin_ = a.lin_;
  for (auto& [i, c] : out.lin_) c *= r;
  return out;
}

bool operator==(const Affine& a, const Affine& b) { return a.compare(b) == 0; }

int Affine::compare(const Affine& o) const {
  size_t n = std::min(lin_.size(), o.lin_.size());
  for (size_t k = 0; k < n; ++k) {
    if (lin_[k].first != o.lin_[k].first) return lin_[k].first < o.lin_[k].first ? -1 : 1;
    if (int c = jetcalc::compare(lin_[k].second, o.lin_[k].second)) return c;
  }
  if (lin_.size() != o.lin_.size()) return lin_.size() < o.lin_.size() ? -1 : 1;
  return jetcalc::compare(c0_, o.c0_);
}

Rational Affine::evaluate(std::span<const Rational> params) const {
  Rational v = c0_;
  for (auto& [i, c] : lin_) {
    if (static_cast<size_t>(i) >= params.size()) throw std::out_of_range("missing parameter value");
    v += c * params[i];
  }
  return v;
}

Affine Affine::bind(std::span<const std::optional<Rational>> values) const {
  Affine out(c0_);
  for (auto& [i, c] : lin_) {
    if (static_cast<size_t>(i) < values.size() && values[i]) {
      out.c0_ += c * *values[i];
    } else {
      out.lin_.push_back({i, c});
    }
  }
  return out;
}

namespace {

std::string coeff_prefix(const Rational& c, bool first) {
  // Renders a coefficient in front of a symbol: "", "-", "2*", " + ", ...
  std::string s;
  Rational a = abs(c);
  if (!first) s = sgn(c) < 0 ? " - " : " + ";
  else if (sgn(c) < 0) s = "-";
  if (a != 1) s += a.get_str() + "*";
  return s;
}

}  // namespace

std::string Affine::to_string(std::span<const std::string> names) const {
  std::string s;
  bool first = true;
  for (auto& [i, c] : lin_) {
    s += coeff_prefix(c, first) + names[i];
    first = false;
  }
  if (sgn(c0_) != 0 || first) {
    if (first) s += c0_.get_str();
    else s += (sgn(c0_) < 0 ? " - " : " + ") + Rational(abs(c0_)).get_str();
  }
  return s;
}

// ---------------------------------------------------------------- ParamPoly

namespace {

using Mono = ParamPoly::Mono;

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
    else {
      out.push_back({a[i].first, a[i].second + b[j].second});
      ++i;
      ++j;
    }
  }
  return out;
}

int mono_degree(const Mono& m) {
  int d = 0;
  for (auto& [i, k] : m) d += k;
  return d;
}

int mono_power_of(const Mono& m, int param) {
  for (auto& [i, k] : m)
    if (i == param) return k;
  return 0;
}

Mono mono_without(const Mono& m, int param) {
  Mono out;
  for (auto& e : m)
    if (e.first != param) out.push_back(e);
  return out;
}

}  // namespace

ParamPoly::ParamPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Mono{}, c});
}

ParamPoly ParamPoly::from_affine(const Affine& a) {
  std::vector<std::pair<Mono, Rational>> t;
  if (sgn(a.constant()) != 0) t.push_back({Mono{}, a.constant()});
  for (auto& [i, c] : a.linear()) t.push_back({Mono{{i, 1}}, c});
  return from_terms(std::move(t));
}

ParamPoly ParamPoly::from_terms(std::vector<std::pair<Mono, Rational>> t) {
  std::sort(t.begin(), t.end(), [](auto& a, auto& b) { return a.first < b.first; });
  ParamPoly out;
  for (auto& e : t) {
    if (!out.terms_.empty() && out.terms_.back().first == e.first) out.terms_.back().second += e.second;
    else out.terms_.push_back(std::move(e));
  }
  std::erase_if(out.terms_, [](auto& e) { return sgn(e.second) == 0; });
  return out;
}

bool ParamPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

Rational ParamPoly::constant_term() const {
  if (!terms_.empty() && terms_[0].first.empty()) return terms_[0].second;
  return 0;
}

int ParamPoly::total_degree() const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
  return d;
}

std::vector<int> ParamPoly::params_used() const {
  std::vector<int> out;
  for (auto& [m, c] : terms_)
    for (auto& [i, k] : m) out.push_back(i);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
  auto t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return ParamPoly::from_terms(std::move(t));
}

ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return a + b * Rational(-1); }

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  std::vector<std::pair<Mono, Rational>> t;
  t.reserve(a.terms_.size() * b.terms_.size());
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) t.push_back({mono_mul(ma, mb), ca * cb});
  return ParamPoly::from_terms(std::move(t));
}

ParamPoly operator*(const ParamPoly& a, const Rational& r) {
  if (sgn(r) == 0) return ParamPoly();
  ParamPoly out = a;
  for (auto& [m, c] : out.terms_) c *= r;
  return out;
}

int ParamPoly::compare(const ParamPoly& o) const {
  size_t n = std::min(terms_.size(), o.terms_.size());
  for (size_t k = 0; k < n; ++k) {
    if (terms_[k].first != o.terms_[k].first) return terms_[k].first < o.terms_[k].first ? -1 : 1;
    if (int c = jetcalc::compare(terms_[k].second, o.terms_[k].second)) return c;
  }
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
  return 0;
}

std::optional<ParamPoly> ParamPoly::divide(const Affine& L) const {
  if (L.is_constant()) throw std::invalid_argument("divide by constant affine");
  int j = L.linear().front().first;
  Rational a = L.linear().front().second;
  // L = a (p_j - r)
  ParamPoly r = from_affine(-(L - Affine::param(j) * a) * (1 / a));
  int n = 0;
  for (auto& [m, c] : terms_) n = std::max(n, mono_power_of(m, j));
  if (terms_.empty()) return ParamPoly();
  std::vector<ParamPoly> coef(n + 1);
  for (auto& [m, c] : terms_) {
    std::vector<std::pair<Mono, Rational>> one{{mono_without(m, j), c}};
    coef[mono_power_of(m, j)] = coef[mono_power_of(m, j)] + from_terms(std::move(one));
  }
  if (n == 0) return std::nullopt;
  std::vector<ParamPoly> b(n);
  b[n - 1] = coef[n];
  for (int k = n - 1; k >= 1; --k) b[k - 1] = coef[k] + r * b[k];
  ParamPoly rem = coef[0] + r * b[0];
  if (!rem.is_zero()) return std::nullopt;
  ParamPoly q;
  for (int k = 0; k < n; ++k) {
    ParamPoly pk(Rational(1));
    if (k > 0) pk = from_terms({{Mono{{j, k}}, Rational(1)}});
    q = q + b[k] * pk;
  }
  return q * (1 / a);
}

std::optional<Affine> ParamPoly::as_affine() const {
  Affine out;
  for (auto& [m, c] : terms_) {
    if (m.empty()) out = out + Affine(c);
    else if (m.size() == 1 && m[0].second == 1) out = out + Affine::param(m[0].first) * c;
    else return std::nullopt;
  }
  return out;
}

Rational ParamPoly::evaluate(std::span<const Rational> params) const {
  Rational v = 0;
  for (auto& [m, c] : terms_) {
    Rational t = c;
    for (auto& [i, k] : m) {
      if (static_cast<size_t>(i) >= params.size()) throw std::out_of_range("missing parameter value");
      Rational pw;
      mpq_class base = params[i];
      pw = 1;
      for (int e = 0; e < k; ++e) pw *= base;
      t *= pw;
    }
    v += t;
  }
  return v;
}

ParamPoly ParamPoly::bind(std::span<const std::optional<Rational>> values) const {
  std::vector<std::pair<Mono, Rational>> t;
  for (auto& [m, c] : terms_) {
    Mono rest;
    Rational f = c;
    for (auto& [i, k] : m) {
      if (static_cast<size_t>(i) < values.size() && values[i]) {
        for (int e = 0; e < k; ++e) f *= *values[i];
      } else {
        rest.push_back({i, k});
      }
    }
    t.push_back({rest, f});
  }
  return from_terms(std::move(t));
}

ParamPoly ParamPoly::derivative(int param) const {
  std::vector<std::pair<Mono, Rational>> t;
  for (auto& [m, c] : terms_) {
    int k = mono_power_of(m, param);
    if (k == 0) continue;
    Mono rest;
    for (auto& e : m) {
      if (e.first != param) rest.push_back(e);
      else if (k > 1) rest.push_back({param, k - 1});
    }
    t.push_back({rest, c * k});
  }
  return from_terms(std::move(t));
}

std::string ParamPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  auto order = terms_;
  std::stable_sort(order.begin(), order.end(), [](auto& a, auto& b) {
    int da = mono_degree(a.first), db = mono_degree(b.first);
    if (da != db) return da > db;
    return a.first < b.first;
  });
  std::string s;
  bool first = true;
  for (auto& [m, c] : order) {
    if (m.empty()) {
      if (first) s += c.get_str();
      else s += (sgn(c) < 0 ? " - " : " + ") + Rational(abs(c)).get_str();
    } else {
      s += coeff_prefix(c, first);
      bool f2 = true;
      for (auto& [i, k] : m) {
        if (!f2) s += "*";
        s += names[i];
        if (k != 1) s += "^" + std::to_string(k);
        f2 = false;
      }
    }
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------- Coeff

namespace {

// Scale an affine factor so the first parameter has coefficient 1.
std::pair<Rational, Affine> normalize_affine(const Affine& L) {
  Rational a = L.linear().front().second;
  return {a, L * (1 / a)};
}

using DenList = std::vector<std::pair<Affine, int>>;

DenList merge_den(const DenList& a, const DenList& b, int sign_b) {
  DenList out = a;
  for (auto& [L, e] : b) {
    auto it = std::find_if(out.begin(), out.end(), [&](auto& x) { return x.first == L; });
    if (it != out.end()) it->second += sign_b * e;
    else out.push_back({L, sign_b * e});
  }
  std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first.compare(y.first) < 0; });
  return out;
}

ParamPoly expand_den(const DenList& d) {
  ParamPoly out(Rational(1));
  for (auto& [L, e] : d) {
    ParamPoly l = ParamPoly::from_affine(L);
    for (int k = 0; k < e; ++k) out = out * l;
  }
  return out;
}

// Split a polynomial as c * prod L_i^k_i with normalized affine L_i.
std::optional<std::pair<Rational, DenList>> affine_factors(const ParamPoly& p) {
  if (p.is_zero()) return std::nullopt;
  if (p.is_constant()) return std::make_pair(p.constant_term(), DenList{});
  if (p.total_degree() == 1) {
    auto [a, L] = normalize_affine(*p.as_affine());
    return std::make_pair(a, DenList{{L, 1}});
  }
  if (p.terms().size() == 1) {
    auto& [m, c] = p.terms()[0];
    DenList d;
    for (auto& [i, k] : m) d.push_back({Affine::param(i), k});
    return std::make_pair(c, d);
  }
  auto used = p.params_used();
  if (used.size() != 1) return std::nullopt;
  int j = used[0];
  // Univariate: peel rational roots.
  int n = 0;
  for (auto& [m, c] : p.terms()) n = std::max(n, m.empty() ? 0 : m[0].second);
  std::vector<Rational> a(n + 1);
  for (auto& [m, c] : p.terms()) a[m.empty() ? 0 : m[0].second] = c;
  Rational lead = a[n];
  DenList factors;
  auto peel = [&](const Rational& r) {
    // Divide a by (x - r), returns false if not a root.
    int deg = static_cast<int>(a.size()) - 1;
    std::vector<Rational> b(deg);
    b[deg - 1] = a[deg];
    for (int k = deg - 1; k >= 1; --k) b[k - 1] = a[k] + r * b[k];
    if (sgn(a[0] + r * b[0]) != 0) return false;
    a = b;
    return true;
  };
  int zeros = 0;
  while (a.size() > 1 && sgn(a[0]) == 0) {
    a.erase(a.begin());
    ++zeros;
  }
  if (zeros) factors.push_back({Affine::param(j), zeros});
  while (a.size() > 1) {
    mpz_class l = 1;
    for (auto& c : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    mpz_class a0 = abs(mpz_class(a.front() * l));
    mpz_class an = abs(mpz_class(a.back() * l));
    if (!a0.fits_ulong_p() || !an.fits_ulong_p()) return std::nullopt;
    auto divisors = [](unsigned long v) {
      std::vector<unsigned long> d;
      for (unsigned long k = 1; k * k <= v; ++k)
        if (v % k == 0) {
          d.push_back(k);
          if (k != v / k) d.push_back(v / k);
        }
      return d;
    };
    bool found = false;
    for (unsigned long num : divisors(a0.get_ui())) {
      for (unsigned long den : divisors(an.get_ui())) {
        for (int s : {1, -1}) {
          Rational r(static_cast<long>(num) * s, den);
          r.canonicalize();
          if (peel(r)) {
            Affine L = Affine::param(j) - Affine(r);
            auto it = std::find_if(factors.begin(), factors.end(), [&](auto& x) { return x.first == L; });
            if (it != factors.end()) ++it->second;
            else factors.push_back({L, 1});
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  return std::make_pair(lead, factors);
}

}  // namespace

Coeff Coeff::param(int index) { return from_affine(Affine::param(index)); }

Coeff Coeff::from_affine(const Affine& a) { return make(ParamPoly::from_affine(a), {}); }

Coeff Coeff::from_poly(const ParamPoly& p) { return make(p, {}); }

Coeff Coeff::make(ParamPoly num, DenList den) {
  Coeff out;
  if (num.is_zero()) return out;
  for (auto& [L, e] : den) {
    while (e > 0) {
      auto q = num.divide(L);
      if (!q) break;
      num = std::move(*q);
      --e;
    }
  }
  std::erase_if(den, [](auto& x) { return x.second == 0; });
  if (den.empty() && num.is_constant()) {
    out.c_ = num.constant_term();
    return out;
  }
  auto rf = std::make_shared<RatFunc>();
  rf->num = std::move(num);
  rf->den = std::move(den);
  out.sym_ = std::move(rf);
  return out;
}

Coeff Coeff::operator-() const {
  if (!sym_) return Coeff(Rational(-c_));
  return make(sym_->num * Rational(-1), sym_->den);
}

Coeff operator+(const Coeff& a, const Coeff& b) {
  if (!a.sym_ && !b.sym_) return Coeff(Rational(a.c_ + b.c_));
  ParamPoly na = a.sym_ ? a.sym_->num : ParamPoly(a.c_);
  ParamPoly nb = b.sym_ ? b.sym_->num : ParamPoly(b.c_);
  DenList da = a.sym_ ? a.sym_->den : DenList{};
  DenList db = b.sym_ ? b.sym_->den : DenList{};
  DenList common = da;
  for (auto& [L, e] : db) {
    auto it = std::find_if(common.begin(), common.end(), [&](auto& x) { return x.first == L; });
    if (it != common.end()) it->second = std::max(it->second, e);
    else common.push_back({L, e});
  }
  std::sort(common.begin(), common.end(), [](auto& x, auto& y) { return x.first.compare(y.first) < 0; });
  auto lift = [&](const ParamPoly& n, const DenList& d) {
    return n * expand_den(merge_den(common, d, -1));
  };
  return Coeff::make(lift(na, da) + lift(nb, db), common);
}

Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }

Coeff operator*(const Coeff& a, const Coeff& b) {
  if (!a.sym_ && !b.sym_) return Coeff(Rational(a.c_ * b.c_));
  if (a.is_zero() || b.is_zero()) return Coeff();
  ParamPoly na = a.sym_ ? a.sym_->num : ParamPoly(a.c_);
  ParamPoly nb = b.sym_ ? b.sym_->num : ParamPoly(b.c_);
  DenList da = a.sym_ ? a.sym_->den : DenList{};
  DenList db = b.sym_ ? b.sym_->den : DenList{};
  return Coeff::make(na * nb, merge_den(da, db, 1));
}

Coeff operator/(const Coeff& a, const Coeff& b) { return a * b.inverse(); }

Coeff Coeff::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero coefficient");
  if (!sym_) return Coeff(Rational(1 / c_));
  auto f = affine_factors(sym_->num);
  if (!f) throw std::domain_error("parameter expression does not split into affine factors");
  return make(expand_den(sym_->den) * (1 / f->first), f->second);
}

Coeff Coeff::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Coeff out(1L), base = *this;
  while (k) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

std::optional<Affine> Coeff::as_affine() const {
  if (!sym_) return Affine(c_);
  if (!sym_->den.empty()) return std::nullopt;
  return sym_->num.as_affine();
}

int Coeff::compare(const Coeff& o) const {
  if (!sym_ && !o.sym_) return jetcalc::compare(c_, o.c_);
  if (!sym_) return -1;
  if (!o.sym_) return 1;
  if (int c = sym_->num.compare(o.sym_->num)) return c;
  auto& da = sym_->den;
  auto& db = o.sym_->den;
  if (da.size() != db.size()) return da.size() < db.size() ? -1 : 1;
  for (size_t k = 0; k < da.size(); ++k) {
    if (int c = da[k].first.compare(db[k].first)) return c;
    if (da[k].second != db[k].second) return da[k].second < db[k].second ? -1 : 1;
  }
  return 0;
}

Rational Coeff::evaluate(std::span<const Rational> params) const {
  if (!sym_) return c_;
  Rational v = sym_->num.evaluate(params);
  for (auto& [L, e] : sym_->den) {
    Rational d = L.evaluate(params);
    if (sgn(d) == 0) throw std::domain_error("coefficient denominator vanishes at parameter values");
    for (int k = 0; k < e; ++k) v /= d;
  }
  return v;
}

Coeff Coeff::bind(std::span<const std::optional<Rational>> values) const {
  if (!sym_) return *this;
  Coeff out = from_poly(sym_->num.bind(values));
  for (auto& [L, e] : sym_->den) {
    Affine b = L.bind(values);
    Coeff d = b.is_constant() ? Coeff(b.constant()) : from_affine(b);
    out = out / d.pow(e);
  }
  return out;
}

Coeff Coeff::derivative(int param) const {
  if (!sym_) return Coeff();
  Coeff out = make(sym_->num.derivative(param), sym_->den);
  for (auto& [L, e] : sym_->den) {
    Rational cj = 0;
    for (auto& [i, c] : L.linear())
      if (i == param) cj = c;
    if (sgn(cj) == 0) continue;
    out = out - *this * Coeff(Rational(cj * e)) / from_affine(L);
  }
  return out;
}

bool Coeff::looks_negative() const {
  if (!sym_) return sgn(c_) < 0;
  auto& t = sym_->num.terms();
  // Leading term in printed order: highest degree.
  const Rational* lead = nullptr;
  int best = -1;
  for (auto& [m, c] : t) {
    int d = mono_degree(m);
    if (d > best) {
      best = d;
      lead = &c;
    }
  }
  return lead && sgn(*lead) < 0;
}

std::string Coeff::to_string(std::span<const std::string> names) const {
  if (!sym_) return c_.get_str();
  std::string s;
  auto& num = sym_->num;
  bool multi = num.terms().size() > 1;
  std::string ns = num.to_string(names);
  s = multi && !sym_->den.empty() ? "(" + ns + ")" : ns;
  for (auto& [L, e] : sym_->den) {
    s += "/(" + L.to_string(names) + ")";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace jetcalc
