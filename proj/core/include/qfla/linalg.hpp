#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qfla/matrix.hpp"

namespace qfla {

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  // 0-based, one per nonzero row
};

/// Reduced row echelon form with leftmost-nonzero pivoting.
RrefResult rref(Matrix m);

/// Same as rref but chooses pivots from the rightmost column leftwards; the
/// nonzero rows are returned ordered by ascending pivot column, so a trailing
/// invertible block comes out as the identity.
RrefResult rref_right_pivot(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of ker(m), one vector per free column, with a 1 in that column.
std::vector<Vector> nullspace(const Matrix& m);

struct AffineSolution {
  std::optional<Vector> particular;  // nullopt when A x = b is inconsistent
  std::vector<Vector> kernel_basis;
};

AffineSolution solve_affine(const Matrix& a, const Vector& b);

std::optional<Matrix> inverse(const Matrix& m);

/// Canonical basis of the column span of `spanning` (columns), as the columns
/// of a matrix in reduced form. Two spans are equal iff these are equal.
Matrix canonical_span(const Matrix& spanning);

/// True iff v lies in the column span of `basis`.
bool in_span(const Matrix& basis, const Vector& v);

/// Rank of the concatenation of the given vectors.
std::size_t rank_of(const std::vector<Vector>& vectors, std::size_t length);

/// Monomial matrix: column j carries scale[j] in row perm[j] (0-based).
struct MonomialMatrix {
  std::vector<std::size_t> perm;
  std::vector<Scalar> scale;

  [[nodiscard]] std::size_t size() const { return perm.size(); }
  [[nodiscard]] Matrix densify() const;
  [[nodiscard]] bool valid() const;
};

/// Throws NotMonomial unless every row and column has exactly one nonzero.
MonomialMatrix monomial_decompose(const Matrix& m);

}  // namespace qfla
