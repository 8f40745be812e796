#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "jetcalc/coeff.hpp"

namespace jetcalc {

using SparseRow = std::vector<std::pair<size_t, Rational>>;

// Exact Gauss-Jordan elimination over Q, kept in reduced row-echelon form as
// rows arrive. Rows are A x = b.
class LinearSystem {
public:
  explicit LinearSystem(size_t n_unknowns) : n_(n_unknowns) {}

  void add_row(const SparseRow& row, const Rational& rhs = 0);

  size_t unknowns() const { return n_; }
  size_t rank() const { return rows_.size(); }
  size_t equations_seen() const { return seen_; }
  bool consistent() const { return consistent_; }
  std::vector<size_t> pivots() const;
  std::vector<size_t> free_columns() const;

  // One basis vector per free column, that column set to 1.
  std::vector<std::vector<Rational>> nullspace() const;
  // Solution with every free unknown pinned to 0.
  std::optional<std::vector<Rational>> particular() const;

private:
  friend std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> rows);
  struct Row {
    size_t pivot;
    std::vector<Rational> a;
    Rational b;
  };
  size_t n_;
  size_t seen_ = 0;
  bool consistent_ = true;
  std::vector<Row> rows_;  // sorted by pivot
};

// Reduced row-echelon form of dense rows; zero rows dropped.
std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> rows);

}  // namespace jetcalc
