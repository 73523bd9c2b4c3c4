#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qfla/linalg.hpp"
#include "qfla/matrix.hpp"

namespace qfla {

/// Name of a basis vector. Gen(s, j) is e_{s,j} with 0 <= j <= n-1, Top(t) is
/// e_{t,n}, Plain(k) is e_k for algebras without copy structure.
struct BasisLabel {
  enum class Kind { Gen, Top, Plain };
  Kind kind = Kind::Plain;
  int copy = 0;
  int level = 0;  // Gen: level j. Top/Plain: unused.
  int index = 0;  // Top: t. Plain: k.

  static BasisLabel gen(int s, int j) { return {Kind::Gen, s, j, 0}; }
  static BasisLabel top(int t) { return {Kind::Top, t, 0, t}; }
  static BasisLabel plain(int k) { return {Kind::Plain, 0, 0, k}; }

  /// "e_{s,j}", "e_{t,n}" or "e_{k}".
  [[nodiscard]] std::string str() const;
  static BasisLabel parse(const std::string& text);

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// One structure-constant entry: [e_i, e_j] = sum of coeff * e_k, i < j.
struct Term {
  std::size_t index;
  Scalar coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

struct BracketEntry {
  std::size_t i;
  std::size_t j;
  std::vector<Term> value;
};

/// Finite-dimensional Lie algebra given by structure constants. Only the
/// brackets [e_i, e_j] with i < j are stored; the rest follow by
/// antisymmetry.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// Throws DimensionMismatch on out-of-range indices or i >= j. Duplicate
  /// pairs are summed.
  LieAlgebra(std::vector<BasisLabel> labels, const std::vector<BracketEntry>& brackets);

  [[nodiscard]] std::size_t dim() const { return labels_.size(); }
  [[nodiscard]] const std::vector<BasisLabel>& labels() const { return labels_; }
  [[nodiscard]] std::optional<std::size_t> index_of(const BasisLabel& label) const;

  /// Sparse [e_i, e_j] for i < j.
  [[nodiscard]] const std::vector<Term>& structure(std::size_t i, std::size_t j) const;
  /// [e_i, e_j] for any i, j as a dense vector.
  [[nodiscard]] Vector basis_bracket(std::size_t i, std::size_t j) const;
  /// Nonzero entries, ordered by (i, j).
  [[nodiscard]] std::vector<BracketEntry> brackets() const;

  /// Bilinear extension. Throws DimensionMismatch.
  [[nodiscard]] Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad x.
  [[nodiscard]] Matrix ad(const Vector& x) const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b);

 private:
  [[nodiscard]] std::size_t slot(std::size_t i, std::size_t j) const;

  std::vector<BasisLabel> labels_;
  std::vector<std::vector<Term>> sc_;  // packed upper triangle, i < j
  std::vector<std::pair<std::size_t, std::size_t>> nonzero_;
};

struct JacobiResult {
  bool holds = true;
  std::optional<std::array<std::size_t, 3>> failing_triple;
};

JacobiResult check_jacobi(const LieAlgebra& l);

/// Column spans, each kept in canonical reduced form.
struct SubspaceChain {
  std::vector<Matrix> spaces;
  [[nodiscard]] std::vector<std::size_t> dims() const;
};

/// span{[a, b] : a in A, b in B} for column spans A and B.
Matrix bracket_span(const LieAlgebra& l, const Matrix& a, const Matrix& b);

/// c^0 L = L, c^i L = [L, c^{i-1} L], ending with the zero space.
/// Throws NotNilpotent if the series stabilizes at a nonzero space.
SubspaceChain lower_central_series(const LieAlgebra& l);

bool is_filiform(const LieAlgebra& l);

/// dim L - dim [L, L].
std::size_t minimal_generator_count(const LieAlgebra& l);

/// True iff the residues of `generators` modulo [L, L] form a basis of L/[L, L].
bool is_minimal_generating_set(const LieAlgebra& l, const std::vector<Vector>& generators);

/// Standard basis vectors greedily chosen to complement [L, L].
Matrix generator_complement(const LieAlgebra& l);

struct QuasiCyclicFailure {
  enum class Kind { NotDirect, NotSpanning };
  Kind kind;
  std::size_t level;  // first chain index where the failure shows
  SubspaceChain chain;
};

/// U, [U, U], [U, [U, U]], ... must form a direct sum equal to L.
std::variant<SubspaceChain, QuasiCyclicFailure> quasi_cyclic_split(const LieAlgebra& l,
                                                                    const Matrix& u);

/// Algebra in new coordinates: `to_new` maps old coordinates to new ones and
/// must be invertible.
LieAlgebra transport(const LieAlgebra& l, const Matrix& to_new, std::vector<BasisLabel> labels);

}  // namespace qfla
