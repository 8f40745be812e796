#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jetcalc {

using Rational = mpq_class;

int compare(const Rational& a, const Rational& b);

// Exact k-th root of a non-negative rational, if it exists.
std::optional<Rational> exact_root(const Rational& r, unsigned long k);

// r^e for a rational exponent e; nullopt when the result is irrational
// or undefined (negative base with even root, zero to a negative power).
std::optional<Rational> rational_power(const Rational& r, const Rational& e);

std::string rational_to_string(const Rational& r);

// c0 + sum c_i p_i over free parameters. Used for exponents and for the
// linear factors of coefficient denominators.
class Affine {
public:
  Affine() = default;
  Affine(const Rational& c) : c0_(c) {}
  Affine(long c) : c0_(c) {}

  static Affine param(int index);

  const Rational& constant() const { return c0_; }
  const std::vector<std::pair<int, Rational>>& linear() const { return lin_; }
  bool is_constant() const { return lin_.empty(); }
  bool is_zero() const { return lin_.empty() && sgn(c0_) == 0; }
  bool is_integer() const { return lin_.empty() && c0_.get_den() == 1; }
  bool is_nonneg_integer() const { return is_integer() && sgn(c0_) >= 0; }
  std::optional<long> as_long() const;

  Affine operator-() const;
  friend Affine operator+(const Affine& a, const Affine& b);
  friend Affine operator-(const Affine& a, const Affine& b);
  friend Affine operator*(const Affine& a, const Rational& r);
  friend bool operator==(const Affine& a, const Affine& b);

  int compare(const Affine& other) const;
  Rational evaluate(std::span<const Rational> params) const;
  // Bind some params to values; others stay symbolic.
  Affine bind(std::span<const std::optional<Rational>> values) const;

  std::string to_string(std::span<const std::string> param_names) const;

private:
  Rational c0_;
  std::vector<std::pair<int, Rational>> lin_;  // sorted by index, nonzero
};

// Polynomial over Q in the free parameters.
class ParamPoly {
public:
  using Mono = std::vector<std::pair<int, int>>;  // (param, power > 0), sorted

  ParamPoly() = default;
  explicit ParamPoly(const Rational& c);
  static ParamPoly from_affine(const Affine& a);

  const std::vector<std::pair<Mono, Rational>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;
  std::vector<int> params_used() const;

  friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b);
  friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b);
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  friend ParamPoly operator*(const ParamPoly& a, const Rational& r);
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.compare(b) == 0; }

  int compare(const ParamPoly& other) const;
  // Exact quotient by a non-constant affine factor, if it divides.
  std::optional<ParamPoly> divide(const Affine& a) const;
  std::optional<Affine> as_affine() const;
  Rational evaluate(std::span<const Rational> params) const;
  ParamPoly bind(std::span<const std::optional<Rational>> values) const;
  // Derivative with respect to one parameter.
  ParamPoly derivative(int param) const;

  std::string to_string(std::span<const std::string> param_names) const;

private:
  static ParamPoly from_terms(std::vector<std::pair<Mono, Rational>> terms);
  std::vector<std::pair<Mono, Rational>> terms_;
};

// Element of Q(params) whose denominator is a product of powers of monic
// affine factors. Pure rationals take a fast path with no allocation of the
// symbolic part.
class Coeff {
public:
  struct RatFunc {
    ParamPoly num;
    std::vector<std::pair<Affine, int>> den;  // normalized factors, sorted
  };

  Coeff() = default;
  Coeff(long v) : c_(v) {}
  Coeff(const Rational& r) : c_(r) {}

  static Coeff param(int index);
  static Coeff from_affine(const Affine& a);
  static Coeff from_poly(const ParamPoly& p);

  bool is_zero() const { return !sym_ && sgn(c_) == 0; }
  bool is_one() const { return !sym_ && c_ == 1; }
  bool is_rational() const { return !sym_; }
  const Rational& rational() const { return c_; }
  const RatFunc* symbolic() const { return sym_.get(); }

  Coeff operator-() const;
  friend Coeff operator+(const Coeff& a, const Coeff& b);
  friend Coeff operator-(const Coeff& a, const Coeff& b);
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator/(const Coeff& a, const Coeff& b);
  friend bool operator==(const Coeff& a, const Coeff& b) { return a.compare(b) == 0; }
  Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
  Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

  // Throws std::domain_error for zero or for numerators that do not split
  // into affine factors.
  Coeff inverse() const;
  Coeff pow(long k) const;
  // Numerator is affine and there is no denominator.
  std::optional<Affine> as_affine() const;
  bool has_params() const { return static_cast<bool>(sym_); }

  int compare(const Coeff& other) const;
  Rational evaluate(std::span<const Rational> params) const;
  Coeff bind(std::span<const std::optional<Rational>> values) const;
  Coeff derivative(int param) const;

  // Sign used when printing a leading minus.
  bool looks_negative() const;
  std::string to_string(std::span<const std::string> param_names) const;

private:
  static Coeff make(ParamPoly num, std::vector<std::pair<Affine, int>> den);
  Rational c_;
  std::shared_ptr<const RatFunc> sym_;
};

}  // namespace jetcalc
