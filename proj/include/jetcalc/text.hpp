#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "jetcalc/expr.hpp"

namespace jetcalc {

// Names for everything an expression can refer to. Free params index the
// symbolic coefficient field; bound params are substituted while parsing.
struct JetSpace {
  std::vector<std::string> indep;  // single letters, t first
  std::vector<std::string> dep;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, Rational>> bound;
  std::vector<std::shared_ptr<FunctionDecl>> functions;

  int n_indep() const { return static_cast<int>(indep.size()); }
  int n_dep() const { return static_cast<int>(dep.size()); }
  int find_indep(std::string_view name) const;
  int find_dep(std::string_view name) const;
  int find_param(std::string_view name) const;
  const Rational* find_bound(std::string_view name) const;
  std::shared_ptr<const FunctionDecl> find_function(std::string_view name) const;

  std::string jet_name(const JetVar& v) const;
  // Derivative letters of a multi-index, e.g. "txx".
  std::string letters(const MultiIndex& mi) const;
  std::optional<MultiIndex> parse_letters(std::string_view s) const;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  size_t position() const { return pos_; }

private:
  size_t pos_;
};

struct ParseOptions {
  // Identifiers that denote function-argument slots (derivative rules).
  std::vector<std::string> slots;
};

Expr parse_expr(std::string_view text, const JetSpace& space, const ParseOptions& opts = {});
JetVar parse_jet_var(std::string_view text, const JetSpace& space);
// Exponent-like text: rational or affine in free params.
Affine parse_affine(std::string_view text, const JetSpace& space);

std::string to_string(const Expr& e, const JetSpace& space);
std::string to_string(const Coeff& c, const JetSpace& space);
std::string to_string(const Affine& a, const JetSpace& space);

}  // namespace jetcalc
