#include "qfla/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "qfla/error.hpp"

namespace qfla {

namespace {

// Gauss-Jordan over the column order given by `order`. Rows are compacted so
// that the nonzero ones come first, in the order their pivots were found.
RrefResult reduce(Matrix m, const std::vector<std::size_t>& order) {
  RrefResult res;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t next_row = 0;
  for (std::size_t col : order) {
    if (next_row == rows) break;
    std::size_t pivot = next_row;
    while (pivot < rows && m(pivot, col).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != next_row) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(pivot, c), m(next_row, c));
    }
    const Scalar inv = m(next_row, col).inverse();
    for (std::size_t c = 0; c < cols; ++c) {
      if (!m(next_row, c).is_zero()) m(next_row, c) *= inv;
    }
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < cols; ++c) {
      if (!m(next_row, c).is_zero()) support.push_back(c);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next_row || m(r, col).is_zero()) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c : support) m(r, c) -= factor * m(next_row, c);
    }
    res.pivot_cols.push_back(col);
    ++next_row;
  }
  res.rank = next_row;
  res.reduced = std::move(m);
  return res;
}

}  // namespace

RrefResult rref(Matrix m) {
  std::vector<std::size_t> order(m.cols());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return reduce(std::move(m), order);
}

RrefResult rref_right_pivot(const Matrix& m) {
  std::vector<std::size_t> order(m.cols());
  std::iota(order.rbegin(), order.rend(), std::size_t{0});
  RrefResult res = reduce(m, order);
  // Reorder the nonzero rows by ascending pivot column.
  std::vector<std::size_t> idx(res.rank);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return res.pivot_cols[a] < res.pivot_cols[b]; });
  Matrix sorted(m.rows(), m.cols());
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t c = 0; c < m.cols(); ++c) sorted(i, c) = res.reduced(idx[i], c);
    pivots.push_back(res.pivot_cols[idx[i]]);
  }
  res.reduced = std::move(sorted);
  res.pivot_cols = std::move(pivots);
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Vector> nullspace(const Matrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivot_cols[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

AffineSolution solve_affine(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw DimensionMismatch("solve_affine: A.rows != b.length");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  AffineSolution sol;
  sol.kernel_basis = nullspace(a);
  const RrefResult r = rref(std::move(aug));
  if (!r.pivot_cols.empty() && r.pivot_cols.back() == a.cols()) return sol;
  Vector x(a.cols());
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivot_cols[i]] = r.reduced(i, a.cols());
  sol.particular = std::move(x);
  return sol;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const RrefResult red = rref(std::move(aug));
  if (red.rank < n || (n > 0 && red.pivot_cols[n - 1] != n - 1)) return std::nullopt;
  return red.reduced.column_block(n, n);
}

Matrix canonical_span(const Matrix& spanning) {
  const RrefResult r = rref(spanning.transpose());
  Matrix basis(spanning.rows(), r.rank);
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t c = 0; c < spanning.rows(); ++c) basis(c, i) = r.reduced(i, c);
  return basis;
}

bool in_span(const Matrix& basis, const Vector& v) {
  return solve_affine(basis, v).particular.has_value();
}

std::size_t rank_of(const std::vector<Vector>& vectors, std::size_t length) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(vectors, length));
}

Matrix MonomialMatrix::densify() const {
  Matrix m(size(), size());
  for (std::size_t j = 0; j < size(); ++j) m(perm.at(j), j) = scale.at(j);
  return m;
}

bool MonomialMatrix::valid() const {
  if (perm.size() != scale.size()) return false;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (perm[j] >= perm.size() || seen[perm[j]] || scale[j].is_zero()) return false;
    seen[perm[j]] = true;
  }
  return true;
}

MonomialMatrix monomial_decompose(const Matrix& m) {
  if (m.rows() != m.cols()) throw NotMonomial("matrix is not square");
  const std::size_t n = m.rows();
  MonomialMatrix out;
  out.perm.resize(n);
  out.scale.resize(n);
  std::vector<int> row_hits(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    int hits = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      ++hits;
      ++row_hits[r];
      out.perm[c] = r;
      out.scale[c] = m(r, c);
    }
    if (hits != 1) {
      throw NotMonomial("column " + std::to_string(c + 1) + " has " + std::to_string(hits) +
                        " nonzero entries");
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (row_hits[r] != 1) {
      throw NotMonomial("row " + std::to_string(r + 1) + " has " + std::to_string(row_hits[r]) +
                        " nonzero entries");
    }
  }
  return out;
}

}  // namespace qfla
