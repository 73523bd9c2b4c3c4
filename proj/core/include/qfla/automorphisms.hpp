#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qfla/derivations.hpp"
#include "qfla/quasi_qn.hpp"

namespace qfla {

/// Generator images rho e_{s,0}, rho e_{s,1}; entry s-1 belongs to copy s.
struct AutCandidate {
  std::vector<Vector> e0;
  std::vector<Vector> e1;

  static AutCandidate identity(const QuasiQnSpec& spec);
  static AutCandidate of_map(const QuasiQnSpec& spec, const Matrix& map);
};

/// Data recovered from a candidate whose supports pass condition (1).
struct AutAnalysis {
  std::vector<int> q;     // q[s-1] = target copy of copy s
  Matrix t;               // m x m permutation, t(q_s - 1, s - 1) = 1
  std::vector<Scalar> k;  // k_s = (b^{s0}_{q_s,0})^{n-2} (b^{s1}_{q_s,1})^2
  Matrix k1;              // diag(k_1..k_r)
  Matrix k2;              // diag(k_{r+1}..k_m)
};

/// Extends generator images by
///   rho e_{s,t} = [rho e_{s,0}, rho e_{s,t-1}]     (2 <= t <= n-1)
///   rho e_{s,n} = -[rho e_{s,1}, rho e_{s,n-1}]    (s <= r)
/// with brackets taken in `target`. The columns are cross-checked against
/// automorphism_closed_form; a mismatch throws std::logic_error.
Matrix extend_automorphism_candidate(const QuasiQn& source, const QuasiQn& target,
                                     const AutCandidate& c);
Matrix extend_automorphism_candidate(const QuasiQn& q, const AutCandidate& c);

/// Coordinates of rho e_{s,t} (2 <= t <= n) in `target`, expanded directly
/// from the generator coefficients.
Vector automorphism_closed_form(const QuasiQn& target, const AutCandidate& c, int s, int t);

struct AutVerdict {
  bool pass = true;
  int failed = 0;  // 1..5, 0 when passing
  int s = 0;
  int p = 0;
  int index = 0;
  std::string detail;
  std::optional<AutAnalysis> analysis;  // set once conditions (1) and (2) hold
};

/// Conditions (1)-(5) in order; stops at the first failure.
AutVerdict theorem41_conditions(const QuasiQn& q, const AutCandidate& c);

/// Invertible and map[x, y]_1 = [map x, map y]_2 on all basis pairs.
bool is_isomorphism(const LieAlgebra& from, const LieAlgebra& to, const Matrix& map);
bool is_automorphism(const LieAlgebra& l, const Matrix& map);

/// rho e_{s,0} = a_s e_{perm(s),0}, rho e_{s,1} = b_s e_{perm(s),1}. perm is
/// 0-based over copies. Throws ZeroScale, DimensionMismatch.
AutCandidate make_scaling_automorphism(const QuasiQnSpec& spec, const std::vector<Scalar>& a,
                                       const std::vector<Scalar>& b,
                                       const std::vector<std::size_t>& perm);

/// exp(ad x) as a finite sum. Throws NotNilpotent if ad x is not nilpotent.
Matrix inner_automorphism(const LieAlgebra& l, const Vector& x);

}  // namespace qfla
