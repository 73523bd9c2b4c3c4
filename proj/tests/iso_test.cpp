#include <gtest/gtest.h>

#include <cstdlib>

#include "qfla/automorphisms.hpp"
#include "qfla/error.hpp"
#include "qfla/iso.hpp"
#include "support.hpp"

using namespace qfla;
using qfla::testing::Gen;

namespace {

RelatedMatrix related(std::size_t m, std::size_t r, Matrix matrix) {
  return RelatedMatrix{m, r, std::move(matrix)};
}

const EquivalenceWitness& witness_of(
    const std::variant<EquivalenceWitness, NotEquivalent>& result) {
  return std::get<EquivalenceWitness>(result);
}

void expect_valid(const RelatedMatrix& m1, const RelatedMatrix& m2, const EquivalenceWitness& w) {
  ASSERT_TRUE(w.k.valid());
  ASSERT_TRUE(inverse(w.e));
  EXPECT_EQ(w.e * m1.matrix * w.k.densify(), m2.matrix);
}

QuasiQnSpec random_spec(Gen& g, int n, int m, int r) {
  Matrix b(static_cast<std::size_t>(r), static_cast<std::size_t>(m - r));
  for (std::size_t c = 0; c < b.cols(); ++c) {
    do {
      for (std::size_t i = 0; i < b.rows(); ++i) b(i, c) = g.coin() ? Scalar(0) : g.nonzero(2);
    } while (b.column(c) == Vector(b.rows()));
  }
  return {n, m, r, b};
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_subspace(related(3, 2, Matrix{{-1, -1, 1}})),
            canonical_span(Matrix{{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(kernel_subspace(related(2, 1, Matrix{{-5, 1}})), canonical_span(Matrix{{1}, {5}}));
  EXPECT_EQ(kernel_subspace(related(2, 2, Matrix(0, 2))), Matrix::identity(2));
}

TEST(Equivalence, Examples) {
  const RelatedMatrix a = related(3, 2, Matrix{{-1, -1, 1}});
  const auto self = monomial_equivalence(a, a);
  ASSERT_TRUE(std::holds_alternative<EquivalenceWitness>(self));
  EXPECT_EQ(witness_of(self).e, Matrix::identity(1));
  EXPECT_EQ(witness_of(self).k.densify(), Matrix::identity(3));

  const RelatedMatrix b = related(3, 2, Matrix{{-2, -1, 1}});
  const auto ab = monomial_equivalence(a, b);
  ASSERT_TRUE(std::holds_alternative<EquivalenceWitness>(ab));
  EXPECT_EQ(witness_of(ab).k.densify(), (Matrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(witness_of(ab).e, Matrix::identity(1));

  const auto no = monomial_equivalence(related(3, 2, Matrix{{-1, 0, 1}}), a);
  ASSERT_TRUE(std::holds_alternative<NotEquivalent>(no));
  EXPECT_EQ(std::get<NotEquivalent>(no).permutations_tried, 6u);

  EXPECT_THROW(monomial_equivalence(a, related(2, 1, Matrix{{-1, 1}})), DimensionMismatch);
}

TEST(Equivalence, PropertyRandomScramblesAreFound) {
  Gen g(61);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = g.integer(1, 3);
    const int m = r + g.integer(1, 2);
    const QuasiQnSpec spec = random_spec(g, 5, m, r);
    const RelatedMatrix m1 = related_matrix_of(spec);
    const std::size_t k = static_cast<std::size_t>(m - r);
    Matrix e = g.matrix(k, k);
    while (!inverse(e)) e = g.matrix(k, k);
    MonomialMatrix mono{g.permutation(static_cast<std::size_t>(m)), {}};
    for (int i = 0; i < m; ++i) mono.scale.push_back(g.nonzero());
    RelatedMatrix m2;
    try {
      m2 = normalize_annihilator(e * m1.matrix * mono.densify(), static_cast<std::size_t>(r));
    } catch (const BadPivot&) {
      continue;  // the scrambled copies have no (A | I) form in this order
    }
    for (unsigned jobs : {1u, 3u}) {
      const auto result = monomial_equivalence(m1, m2, jobs);
      ASSERT_TRUE(std::holds_alternative<EquivalenceWitness>(result)) << trial;
      expect_valid(m1, m2, witness_of(result));
    }
  }
}

TEST(Equivalence, JobsDoNotChangeTheWitness) {
  Gen g(62);
  for (int trial = 0; trial < 20; ++trial) {
    const QuasiQnSpec s1 = random_spec(g, 5, 5, 2);
    const QuasiQnSpec s2 = random_spec(g, 5, 5, 2);
    const auto one = monomial_equivalence(related_matrix_of(s1), related_matrix_of(s2), 1);
    const auto four = monomial_equivalence(related_matrix_of(s1), related_matrix_of(s2), 4);
    ASSERT_EQ(one.index(), four.index());
    if (const auto* w = std::get_if<EquivalenceWitness>(&one)) {
      const auto& w4 = witness_of(four);
      EXPECT_EQ(w->permutation_rank, w4.permutation_rank);
      EXPECT_EQ(w->k.perm, w4.k.perm);
      EXPECT_EQ(w->k.scale, w4.k.scale);
      EXPECT_EQ(w->e, w4.e);
    }
  }
}

TEST(Equivalence, SearchCap) {
  const QuasiQnSpec spec{5, 4, 1, Matrix{{1, 1, 1}}};
  const RelatedMatrix rel = related_matrix_of(spec);
  {
    ScopedEnv cap("QFLA_MAX_M", "3");
    EXPECT_EQ(max_search_m(), 3u);
    EXPECT_THROW(monomial_equivalence(rel, rel), SearchLimitExceeded);
  }
  {
    ScopedEnv cap("QFLA_MAX_M", "many");
    EXPECT_THROW(max_search_m(), ParseError);
  }
  EXPECT_EQ(max_search_m(), 8u);
  EXPECT_TRUE(std::holds_alternative<EquivalenceWitness>(monomial_equivalence(rel, rel)));
}

TEST(IsoDecide, Examples) {
  const QuasiQnSpec a{5, 3, 2, Matrix{{1}, {1}}};
  const QuasiQnSpec b{5, 3, 2, Matrix{{2}, {1}}};
  const QuasiQnSpec c{5, 3, 2, Matrix{{1}, {0}}};

  const IsoVerdict self = iso_decide(a, a);
  ASSERT_TRUE(self.isomorphic);
  EXPECT_EQ(self.witness->e, Matrix::identity(1));
  EXPECT_EQ(self.witness->k.densify(), Matrix::identity(3));
  ASSERT_TRUE(self.witness->map);
  EXPECT_EQ(*self.witness->map, Matrix::identity(a.dim()));

  const IsoVerdict ab = iso_decide(a, b);
  ASSERT_TRUE(ab.isomorphic);
  ASSERT_TRUE(ab.witness->map);
  EXPECT_TRUE(is_isomorphism(build_quasi(a), build_quasi(b), *ab.witness->map));

  const IsoVerdict ca = iso_decide(c, a);
  EXPECT_FALSE(ca.isomorphic);
  EXPECT_FALSE(ca.witness);

  const IsoVerdict shapes = iso_decide(a, QuasiQnSpec{7, 3, 2, Matrix{{1}, {1}}});
  EXPECT_FALSE(shapes.isomorphic);
  EXPECT_EQ(shapes.reason, "(n, m, r) differ");
}

TEST(IsoDecide, PropertySymmetricAndPermutationInvariant) {
  Gen g(63);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = g.integer(1, 2);
    const int m = r + g.integer(1, 2);
    const QuasiQnSpec s1 = random_spec(g, 5, m, r);
    const QuasiQnSpec s2 = random_spec(g, 5, m, r);
    const IsoVerdict forward = iso_decide(s1, s2);
    const IsoVerdict backward = iso_decide(s2, s1);
    ASSERT_EQ(forward.isomorphic, backward.isomorphic) << trial;
    if (forward.isomorphic && forward.witness->map) {
      EXPECT_TRUE(is_isomorphism(build_quasi(s1), build_quasi(s2), *forward.witness->map));
    }

    auto perm = g.permutation(static_cast<std::size_t>(m));
    QuasiQnSpec moved;
    try {
      moved = permute_copies(s1, perm);
    } catch (const BadPivot&) {
      continue;
    }
    const IsoVerdict same = iso_decide(s1, moved);
    ASSERT_TRUE(same.isomorphic) << trial;
    ASSERT_EQ(iso_decide(moved, s2).isomorphic, forward.isomorphic) << trial;
  }
}

TEST(Scaling, RationalRoots) {
  EXPECT_EQ(rational_scaling(Scalar(1), 5), std::make_pair(Scalar(1), Scalar(1)));
  EXPECT_EQ(rational_scaling(Scalar(8), 5), std::make_pair(Scalar(2), Scalar(1)));
  for (const Scalar& k : {Scalar(2), Scalar(-3, 4), Scalar(5, 7)}) {
    for (int n : {5, 7, 9}) {
      const auto [alpha, beta] = rational_scaling(k, n);
      EXPECT_EQ(alpha.pow(n - 2) * beta * beta, k) << k.str() << " " << n;
    }
  }
  EXPECT_THROW(rational_scaling(Scalar(0), 5), ZeroScale);
  EXPECT_THROW(rational_scaling(Scalar(2), 6), BadN);
}

TEST(Scaling, AlgebraWitnessIsVerified) {
  const QuasiQnSpec a{5, 3, 2, Matrix{{1}, {1}}};
  QuasiQnSpec b{5, 3, 2, Matrix{{-3}, {1}}};
  b.B(1, 0) = Scalar(1, 2);
  const auto eq = monomial_equivalence(related_matrix_of(a), related_matrix_of(b));
  ASSERT_TRUE(std::holds_alternative<EquivalenceWitness>(eq));
  const auto map = build_algebra_witness(a, b, witness_of(eq));
  ASSERT_TRUE(std::holds_alternative<Matrix>(map));
  EXPECT_TRUE(is_isomorphism(build_quasi(a), build_quasi(b), std::get<Matrix>(map)));
}
