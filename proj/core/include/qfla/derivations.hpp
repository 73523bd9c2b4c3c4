#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qfla/lie_algebra.hpp"
#include "qfla/quasi_qn.hpp"

namespace qfla {

// A linear map on an algebra is a dim x dim Matrix whose column j is the
// image of the j-th basis vector.

/// Images of the generators e_{s,0}, e_{s,1}; entry s-1 belongs to copy s.
struct GeneratorImages {
  std::vector<Vector> e0;
  std::vector<Vector> e1;

  static GeneratorImages zero(const QuasiQnSpec& spec);
  /// Restriction of a linear map to the generators.
  static GeneratorImages of_map(const QuasiQnSpec& spec, const Matrix& map);
};

/// True iff map[x, y] = [map x, y] + [x, map y] on all basis pairs.
bool is_derivation(const LieAlgebra& l, const Matrix& map);

/// Basis of Der L from the nullspace of the Leibniz system in dim^2 unknowns.
std::vector<Matrix> derivation_oracle(const LieAlgebra& l);

/// Unique linear map extending `images` by
///   d e_{s,t} = [d e_{s,0}, e_{s,t-1}] + [e_{s,0}, d e_{s,t-1}]    (2 <= t <= n-1)
///   d e_{s,n} = -[d e_{s,1}, e_{s,n-1}] - [e_{s,1}, d e_{s,n-1}]  (s <= r)
Matrix extend_derivation_candidate(const QuasiQn& q, const GeneratorImages& images);

/// Closed-form value of d e_{s,t} for 2 <= t <= n-1, valid when the images
/// already have the supports required of a derivation.
Vector derivation_interior_closed_form(const QuasiQn& q, const GeneratorImages& images, int s,
                                       int t);

enum class DerCondition { Shape22, Shape23, OddVanish24, Eigen21, Cross25 };

std::string to_string(DerCondition c);

struct DerVerdict {
  bool pass = true;
  std::optional<DerCondition> failed;
  int s = 0;  // copy where the failure was found
  int p = 0;  // second copy or top index, when relevant
  int index = 0;
  std::string detail;
};

/// Evaluates the derivation conditions in a fixed order (shape of the e_{s,0}
/// images, shape of the e_{s,1} images, odd levels, eigenvalues, cross terms)
/// and reports the first failure.
DerVerdict theorem21_conditions(const QuasiQn& q, const GeneratorImages& images);

struct DerBasisElement {
  enum class Tag { Torus, BlockTorus, AdGen, DiagTop, OffDiag, Even, TopFromE0, TopFromE1 };
  Tag tag;
  int i = 0;  // Torus: 0..m. BlockTorus: component. Others: copy.
  int j = 0;  // AdGen: level. OffDiag: second copy. Even: k. TopFrom*: t.
  Matrix map;

  [[nodiscard]] std::string name() const;
};

/// Copies linked through e_{s,n} = sum_j b_{js} e_{j,n}: s > r and j <= r are
/// adjacent when b_{js} != 0. Returned as sorted lists of 1-based copies,
/// ordered by smallest member.
std::vector<std::vector<int>> top_components(const QuasiQnSpec& spec);

/// tau_0..tau_m, followed by tau_0 restricted to each further component of
/// top_components when the algebra splits (so dim = m + #components).
std::vector<DerBasisElement> torus_basis(const QuasiQn& q);

/// e_{s,0} -> -2s e_{s,0}, e_{s,1} -> s(n-2) e_{s,1}, extended.
DerBasisElement h1_derivation(const QuasiQn& q);

/// Basis of the nilpotent ideal, one element per free parameter. Throws
/// NonBlockForm.
std::vector<DerBasisElement> nilpotent_basis(const QuasiQn& q);

/// (m + q) + sum_l ((2r + n + d - 2) m_l + m_l (m_l - 1) / 2). Throws NonBlockForm.
std::size_t der_dimension(const QuasiQnSpec& spec);

/// Alternative reading where the even-level element for copy i lands on the
/// block start e_{s_l,2k} instead of e_{i,2k}. Returns those maps for every
/// non-start member of a block; empty when all blocks have one copy.
std::vector<Matrix> epsilon_block_start_variants(const QuasiQn& q);

struct CopyLambda {
  Scalar c00;                  // coefficient of e_{s,0} in d e_{s,0}
  Scalar c11;                  // coefficient of e_{s,1} in d e_{s,1}
  std::vector<Scalar> levels;  // lambda_{s,i} = i c00 + c11, i = 0..n-2
  Scalar lambda;               // (n-2) c00 + 2 c11
};

struct DerivationAnalysis {
  std::vector<CopyLambda> copies;
};

DerivationAnalysis lambda_of(const QuasiQn& q, const Matrix& map);

struct WeightSpace {
  std::vector<Scalar> weight;
  std::vector<std::size_t> basis;  // coordinate indices, ascending
};

/// Joint eigenspaces of commuting diagonal maps, ordered by first basis
/// index. Throws NotSimultaneouslyDiagonal.
std::vector<WeightSpace> weight_decomposition(std::size_t dim, const std::vector<Matrix>& torus);

}  // namespace qfla
