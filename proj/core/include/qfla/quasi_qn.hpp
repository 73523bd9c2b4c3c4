#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qfla/lie_algebra.hpp"
#include "qfla/linalg.hpp"

namespace qfla {

/// Parameters of N(Q_n, m, r): m commuting copies of Q_n whose top vectors
/// span an r-dimensional space. Column s - r of B (for copies s > r) holds
/// the coefficients of e_{s,n} over e_{1,n}, ..., e_{r,n}.
///
/// Copies are 1-based in the public API, matching the e_{s,j} labels.
struct QuasiQnSpec {
  int n = 5;
  int m = 1;
  int r = 1;
  Matrix B{1, 0};

  [[nodiscard]] int d() const { return (n - 1) / 2; }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m * n + r); }

  /// Coordinate index of e_{s,j}, 1 <= s <= m, 0 <= j <= n-1.
  [[nodiscard]] std::size_t gen(int s, int j) const {
    return static_cast<std::size_t>((s - 1) * n + j);
  }
  /// Coordinate index of e_{t,n}, 1 <= t <= r.
  [[nodiscard]] std::size_t top(int t) const { return static_cast<std::size_t>(m * n + t - 1); }

  /// Coefficients (length r) of e_{s,n} over the independent tops.
  [[nodiscard]] Vector top_coords(int s) const;
  /// e_{s,n} as a vector in algebra coordinates.
  [[nodiscard]] Vector top_vector(int s) const;
  /// The r x m matrix (I | B).
  [[nodiscard]] Matrix top_matrix() const;

  /// Throws BadSpec describing the first violated invariant.
  void validate() const;

  friend bool operator==(const QuasiQnSpec&, const QuasiQnSpec&) = default;
};

/// Q_n on e_0..e_n: [e_0, e_i] = e_{i+1} (i <= n-2), [e_i, e_{n-i}] = (-1)^i e_n.
/// Throws BadN unless n is odd and >= 5.
LieAlgebra build_qn(int n);

/// Q_n in the x-basis: [x_0, x_i] = x_{i+1} (i <= n-1), [x_i, x_{n-i}] = (-1)^i x_n.
LieAlgebra build_qn_x_basis(int n);

/// Change of coordinates from the x-basis to the e-basis, where
/// e_0 = x_0 + x_1 and e_i = x_i.
Matrix rebase_x_to_e(int n);

LieAlgebra build_quasi(const QuasiQnSpec& spec);

/// A validated spec together with its algebra.
struct QuasiQn {
  QuasiQnSpec spec;
  LieAlgebra algebra;

  explicit QuasiQn(QuasiQnSpec s) : spec(std::move(s)), algebra(build_quasi(spec)) {}
};

/// (m - r) x m matrix (A | I) annihilating the column of top vectors.
struct RelatedMatrix {
  std::size_t m = 0;
  std::size_t r = 0;
  Matrix matrix;

  [[nodiscard]] Matrix a_block() const { return matrix.column_block(0, r); }
  friend bool operator==(const RelatedMatrix&, const RelatedMatrix&) = default;
};

/// (A | I) with A = -B^t.
RelatedMatrix related_matrix_of(const QuasiQnSpec& spec);

/// Brings any rank-(m-r) annihilator of the top vectors into (A | I) form.
/// Throws BadPivot if the trailing (m-r) columns are not independent.
RelatedMatrix normalize_annihilator(const Matrix& annihilator, std::size_t r);

/// Spec whose related matrix is the given one.
QuasiQnSpec spec_from_related(int n, const RelatedMatrix& related);

/// Reorders copies: new copy i is old copy perm[i - 1] (perm is 0-based over
/// copies). Throws BadPivot when the first r new tops become dependent.
QuasiQnSpec permute_copies(const QuasiQnSpec& spec, const std::vector<std::size_t>& perm);

/// Grouping of copies by the independent top vector they are proportional to.
struct BlockStructure {
  std::size_t q = 0;
  std::vector<std::size_t> sizes;              // m_l
  std::vector<std::size_t> starts;             // s_l = 1 + sum_{i<l} m_i
  std::vector<std::vector<int>> members;       // copies in block l, ascending
  std::vector<int> block_of;                   // block index (0-based) per copy, index s-1
  std::vector<Scalar> scale;                   // e_{s,n} = scale[s-1] * e_{t,n}, t the block's top
};

/// nullopt when some e_{s,n} mixes two or more independent tops.
std::optional<BlockStructure> block_structure(const QuasiQnSpec& spec);

/// As block_structure but throws NonBlockForm.
BlockStructure require_block_structure(const QuasiQnSpec& spec);

}  // namespace qfla
