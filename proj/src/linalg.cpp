#include "jetcalc/linalg.hpp"

#include <algorithm>

namespace jetcalc {

void LinearSystem::add_row(const SparseRow& row, const Rational& rhs) {
  ++seen_;
  std::vector<Rational> a(n_);
  for (auto& [j, v] : row) a.at(j) += v;
  Rational b = rhs;
  for (auto& r : rows_) {
    if (sgn(a[r.pivot]) == 0) continue;
    Rational f = a[r.pivot];
    for (size_t j = r.pivot; j < n_; ++j)
      if (sgn(r.a[j]) != 0) a[j] -= f * r.a[j];
    b -= f * r.b;
  }
  size_t p = 0;
  while (p < n_ && sgn(a[p]) == 0) ++p;
  if (p == n_) {
    if (sgn(b) != 0) consistent_ = false;
    return;
  }
  Rational inv = 1 / a[p];
  for (size_t j = p; j < n_; ++j) a[j] *= inv;
  b *= inv;
  for (auto& r : rows_) {
    if (sgn(r.a[p]) == 0) continue;
    Rational f = r.a[p];
    for (size_t j = p; j < n_; ++j)
      if (sgn(a[j]) != 0) r.a[j] -= f * a[j];
    r.b -= f * b;
  }
  Row nr{p, std::move(a), b};
  auto it = std::lower_bound(rows_.begin(), rows_.end(), p, [](const Row& r, size_t q) { return r.pivot < q; });
  rows_.insert(it, std::move(nr));
}

std::vector<size_t> LinearSystem::pivots() const {
  std::vector<size_t> out;
  for (auto& r : rows_) out.push_back(r.pivot);
  return out;
}

std::vector<size_t> LinearSystem::free_columns() const {
  std::vector<bool> piv(n_, false);
  for (auto& r : rows_) piv[r.pivot] = true;
  std::vector<size_t> out;
  for (size_t j = 0; j < n_; ++j)
    if (!piv[j]) out.push_back(j);
  return out;
}

std::vector<std::vector<Rational>> LinearSystem::nullspace() const {
  std::vector<std::vector<Rational>> out;
  for (size_t f : free_columns()) {
    std::vector<Rational> x(n_);
    x[f] = 1;
    for (auto& r : rows_) x[r.pivot] = -r.a[f];
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<std::vector<Rational>> LinearSystem::particular() const {
  if (!consistent_) return std::nullopt;
  std::vector<Rational> x(n_);
  for (auto& r : rows_) x[r.pivot] = r.b;
  return x;
}

std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return rows;
  size_t n = rows[0].size();
  LinearSystem ls(n);
  for (auto& r : rows) {
    SparseRow s;
    for (size_t j = 0; j < n; ++j)
      if (sgn(r[j]) != 0) s.push_back({j, r[j]});
    ls.add_row(s);
  }
  std::vector<std::vector<Rational>> out;
  for (auto& r : ls.rows_) out.push_back(r.a);
  return out;
}

}  // namespace jetcalc
