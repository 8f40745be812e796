#include "jetcalc/zero.hpp"

#include <map>

#include "jetcalc/calculus.hpp"

namespace jetcalc {

const char* to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero:
      return "zero";
    case ZeroVerdict::NonZero:
      return "nonzero";
    case ZeroVerdict::Undetermined:
      return "undetermined";
  }
  return "?";
}

namespace {

struct BaseLess {
  bool operator()(const Base& a, const Base& b) const { return a.compare(b) < 0; }
};

// Multiplies through by the top-level compound denominators. Returns false
// when nothing could be cleared.
bool clear_once(Expr& e) {
  std::map<Base, Rational, BaseLess> lowest;
  for (auto& t : e.terms())
    for (auto& f : t.mono)
      if (f.base.kind() == BaseKind::Compound && f.exp.is_constant() && sgn(f.exp.constant()) < 0) {
        auto [it, fresh] = lowest.emplace(f.base, f.exp.constant());
        if (!fresh && f.exp.constant() < it->second) it->second = f.exp.constant();
      }
  if (lowest.empty()) return false;
  Monomial m;
  for (auto& [b, r] : lowest) {
    // Round the clearing power up to an integer so no new fractional
    // exponents appear on terms that lacked the base.
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), Rational(-r).get_num_mpz_t(), Rational(-r).get_den_mpz_t());
    m.push_back({b, Affine(Rational(c))});
  }
  // Raise exponents term by term; building B^c as an expression first
  // would expand it and nothing would cancel.
  std::vector<Term> out;
  for (auto& t : e.terms()) out.push_back(Term{multiply_monomials(t.mono, m), t.coeff});
  e = Expr::from_terms(std::move(out));
  return true;
}

}  // namespace

ZeroResult zero_test(const Expr& e) {
  ZeroResult r;
  r.cleared = e;
  for (int guard = 0; guard < 16 && !r.cleared.is_zero(); ++guard) {
    if (!clear_once(r.cleared)) break;
    r.denominators_cleared = true;
  }
  if (r.cleared.is_zero()) r.verdict = ZeroVerdict::Zero;
  else if (has_opaque(r.cleared) || has_compound(r.cleared)) r.verdict = ZeroVerdict::Undetermined;
  else r.verdict = ZeroVerdict::NonZero;
  return r;
}

}  // namespace jetcalc
