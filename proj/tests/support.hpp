#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qfla/automorphisms.hpp"
#include "qfla/derivations.hpp"
#include "qfla/quasi_qn.hpp"

namespace qfla::testing {

struct NamedSpec {
  std::string name;
  QuasiQnSpec spec;
};

/// The seven specs every suite runs over.
inline std::vector<NamedSpec> spec_matrix() {
  return {
      {"5_1_1", {5, 1, 1, Matrix(1, 0)}},
      {"5_2_1", {5, 2, 1, Matrix{{1}}}},
      {"5_3_1", {5, 3, 1, Matrix{{1, 1}}}},
      {"5_3_2_split", {5, 3, 2, Matrix{{1}, {0}}}},
      {"5_3_2_mixed", {5, 3, 2, Matrix{{1}, {1}}}},
      {"7_1_1", {7, 1, 1, Matrix(1, 0)}},
      {"7_2_1", {7, 2, 1, Matrix{{1}}}},
  };
}

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(int one_in = 2) { return integer(1, one_in) == 1; }
  Scalar small(int bound = 3) { return Scalar(integer(-bound, bound)); }
  Scalar nonzero(int bound = 3) {
    const int v = integer(1, bound);
    return coin() ? Scalar(v) : Scalar(-v);
  }
  Scalar fraction(int bound = 3) { return Scalar(integer(-bound, bound), integer(1, bound)); }

  std::vector<std::size_t> permutation(std::size_t m) {
    std::vector<std::size_t> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng_);
    return p;
  }

  Vector vector(std::size_t n, int bound = 3) {
    Vector v(n);
    for (auto& x : v) x = small(bound);
    return v;
  }

  Matrix matrix(std::size_t rows, std::size_t cols, int bound = 3) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = small(bound);
    return m;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

/// Derivation candidate; with `respect` the supports obey the shapes required
/// of a derivation, otherwise stray components are sprinkled in.
GeneratorImages random_der_candidate(Gen& g, const QuasiQnSpec& spec, bool respect);

/// Turns a support-respecting candidate into one passing every derivation
/// condition by solving for the constrained coefficients.
void repair_derivation(const QuasiQnSpec& spec, GeneratorImages& gi);

/// Automorphism candidate with condition (1) supports. With `repair` the
/// scalings, quadratic relations and cross terms are solved so that the
/// candidate is an automorphism whenever the chosen permutation allows it.
AutCandidate random_aut_candidate(Gen& g, const QuasiQnSpec& spec, bool repair);

/// Scalings k for copy permutation q (1-based targets) satisfying the top
/// relations with every k_s nonzero, if such exist.
std::optional<std::vector<Scalar>> compatible_scalings(const QuasiQnSpec& spec,
                                                       const std::vector<int>& q);

/// Breaks exactly one derivation condition of a passing candidate. nullopt
/// when the condition cannot be violated on this spec (for example the
/// eigenvalue condition needs m > r).
std::optional<GeneratorImages> der_mutant(Gen& g, const QuasiQnSpec& spec,
                                          const GeneratorImages& base, DerCondition c);

/// Breaks automorphism condition `condition` (1..5) of a passing candidate
/// whose copy permutation is q (1-based). nullopt when not applicable.
std::optional<AutCandidate> aut_mutant(Gen& g, const QuasiQnSpec& spec, const AutCandidate& base,
                                       const std::vector<int>& q, int condition);

}  // namespace qfla::testing
