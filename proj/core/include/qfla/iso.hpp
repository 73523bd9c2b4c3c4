#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "qfla/linalg.hpp"
#include "qfla/quasi_qn.hpp"

namespace qfla {

/// E M1 densify(K) = M2 with E invertible and K monomial.
struct EquivalenceWitness {
  Matrix e;
  MonomialMatrix k;
  std::optional<Matrix> map;     // algebra-level isomorphism, when built
  std::size_t permutation_rank;  // lexicographic index of k.perm
};

struct NotEquivalent {
  std::string reason;
  std::size_t permutations_tried = 0;
};

/// Canonical basis (columns, m x r) of {x : M x = 0}.
Matrix kernel_subspace(const RelatedMatrix& related);

/// Largest m searched exhaustively; QFLA_MAX_M overrides the default of 8.
std::size_t max_search_m();

/// Searches permutations in lexicographic order and returns the first that
/// admits an all-nonzero scaling. `jobs` > 1 splits the search across
/// threads without changing the result. Throws DimensionMismatch when the
/// shapes differ and SearchLimitExceeded when m > max_search_m().
std::variant<EquivalenceWitness, NotEquivalent> monomial_equivalence(const RelatedMatrix& m1,
                                                                     const RelatedMatrix& m2,
                                                                     unsigned jobs = 1);

struct IsoVerdict {
  bool isomorphic = false;
  std::optional<EquivalenceWitness> witness;
  std::string reason;
};

/// Decides N1 ~ N2. With build_map the witness carries a verified algebra
/// isomorphism build_quasi(s1) -> build_quasi(s2).
IsoVerdict iso_decide(const QuasiQnSpec& s1, const QuasiQnSpec& s2, unsigned jobs = 1,
                      bool build_map = true);

struct NeedsIrrationalScalars {
  int copy;
  Scalar k;
};

/// Rational (alpha, beta) with alpha^(n-2) beta^2 = k; prefers beta = 1.
/// Throws ZeroScale for k = 0, BadN for even n.
std::pair<Scalar, Scalar> rational_scaling(const Scalar& k, int n);

/// Generator map e_{s,0} -> alpha_s e'_{sigma(s),0}, e_{s,1} -> beta_s e'_{sigma(s),1}
/// realizing the witness, extended and verified. Throws std::logic_error if
/// verification fails.
std::variant<Matrix, NeedsIrrationalScalars> build_algebra_witness(const QuasiQnSpec& s1,
                                                                   const QuasiQnSpec& s2,
                                                                   const EquivalenceWitness& w);

}  // namespace qfla
