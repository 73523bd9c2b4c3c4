#include <gtest/gtest.h>

#include "qfla/error.hpp"
#include "qfla/quasi_qn.hpp"
#include "support.hpp"

using namespace qfla;
using qfla::testing::Gen;

namespace {

Vector e(std::size_t dim, std::size_t i) { return unit_vector(dim, i); }

RelatedMatrix related(std::size_t m, std::size_t r, Matrix matrix) {
  return RelatedMatrix{m, r, std::move(matrix)};
}

}  // namespace

TEST(BuildQn, N5Brackets) {
  const LieAlgebra q5 = build_qn(5);
  EXPECT_EQ(q5.basis_bracket(0, 1), e(6, 2));
  EXPECT_EQ(q5.basis_bracket(0, 2), e(6, 3));
  EXPECT_EQ(q5.basis_bracket(0, 3), e(6, 4));
  EXPECT_EQ(q5.basis_bracket(1, 4), Scalar(-1) * e(6, 5));
  EXPECT_EQ(q5.basis_bracket(2, 3), e(6, 5));
  EXPECT_TRUE(is_zero(q5.basis_bracket(0, 4)));
  EXPECT_EQ(q5.brackets().size(), 5u);
}

TEST(BuildQn, RejectsBadN) {
  EXPECT_THROW(build_qn(4), BadN);
  EXPECT_THROW(build_qn(3), BadN);
  EXPECT_THROW(build_qn_x_basis(6), BadN);
}

TEST(BuildQn, XBasisMatrix) {
  const Matrix p = rebase_x_to_e(5);
  Matrix expected = Matrix::identity(6);
  expected(1, 0) = Scalar(-1);
  EXPECT_EQ(p, expected);
}

TEST(BuildQuasi, SingleCopyIsQn) {
  const LieAlgebra n = build_quasi({5, 1, 1, Matrix(1, 0)});
  const LieAlgebra q5 = build_qn(5);
  EXPECT_EQ(n.brackets().size(), q5.brackets().size());
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) ASSERT_EQ(n.basis_bracket(i, j), q5.basis_bracket(i, j));
  EXPECT_EQ(n.labels()[0], BasisLabel::gen(1, 0));
  EXPECT_EQ(n.labels()[5], BasisLabel::top(1));
}

TEST(BuildQuasi, GluedTops) {
  const QuasiQnSpec spec{5, 2, 1, Matrix{{1}}};
  const LieAlgebra n = build_quasi(spec);
  EXPECT_EQ(n.dim(), 11u);
  EXPECT_EQ(n.basis_bracket(spec.gen(2, 1), spec.gen(2, 4)), Scalar(-1) * e(11, spec.top(1)));
  EXPECT_TRUE(is_zero(n.basis_bracket(spec.gen(1, 0), spec.gen(2, 1))));
  EXPECT_TRUE(check_jacobi(n).holds);
}

TEST(BuildQuasi, ValidatesSpec) {
  EXPECT_THROW(build_quasi({5, 2, 1, Matrix{{0}}}), BadSpec);
  EXPECT_THROW(build_quasi({5, 2, 3, Matrix(3, 0)}), BadSpec);
  EXPECT_THROW(build_quasi({5, 3, 1, Matrix{{1}}}), BadSpec);
  EXPECT_THROW(build_quasi({6, 1, 1, Matrix(1, 0)}), BadSpec);
}

TEST(BuildQuasi, PropertyInvariantsOverMatrix) {
  for (const auto& [name, spec] : qfla::testing::spec_matrix()) {
    const LieAlgebra n = build_quasi(spec);
    EXPECT_EQ(n.dim(), spec.dim()) << name;
    EXPECT_TRUE(check_jacobi(n).holds) << name;
    const auto dims = lower_central_series(n).dims();
    EXPECT_EQ(dims[static_cast<std::size_t>(spec.n - 1)], static_cast<std::size_t>(spec.r)) << name;
    // Distinct copies commute.
    for (int s = 1; s <= spec.m; ++s)
      for (int p = s + 1; p <= spec.m; ++p)
        for (int i = 0; i < spec.n; ++i)
          for (int j = 0; j < spec.n; ++j)
            ASSERT_TRUE(is_zero(n.basis_bracket(spec.gen(s, i), spec.gen(p, j)))) << name;
  }
}

TEST(Related, Examples) {
  EXPECT_EQ(related_matrix_of({5, 3, 2, Matrix{{1}, {1}}}).matrix, (Matrix{{-1, -1, 1}}));
  EXPECT_EQ(related_matrix_of({5, 2, 1, Matrix{{5}}}).matrix, (Matrix{{-5, 1}}));
  const RelatedMatrix empty = related_matrix_of({5, 2, 2, Matrix(2, 0)});
  EXPECT_EQ(empty.matrix.rows(), 0u);
  EXPECT_EQ(empty.matrix.cols(), 2u);
}

TEST(Related, AnnihilatesTopColumn) {
  for (const auto& [name, spec] : qfla::testing::spec_matrix()) {
    const RelatedMatrix rel = related_matrix_of(spec);
    const Matrix tops = spec.top_matrix();
    for (std::size_t t = 0; t < tops.rows(); ++t) {
      Vector row(static_cast<std::size_t>(spec.m));
      for (std::size_t s = 0; s < row.size(); ++s) row[s] = tops(t, s);
      EXPECT_TRUE(is_zero(rel.matrix * row)) << name;
    }
  }
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize_annihilator(Matrix{{2, 2, -2}}, 2), related(3, 2, Matrix{{-1, -1, 1}}));
  const RelatedMatrix done = related(3, 2, Matrix{{-1, -1, 1}});
  EXPECT_EQ(normalize_annihilator(done.matrix, 2), done);
  EXPECT_THROW(normalize_annihilator(Matrix{{1, 0, 0}}, 2), BadPivot);
}

TEST(Normalize, PropertyRowOperationsAreInvisible) {
  Gen g(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = g.integer(1, 3);
    const int m = r + g.integer(1, 3);
    const std::size_t k = static_cast<std::size_t>(m - r);
    Matrix a = g.matrix(k, static_cast<std::size_t>(r));
    Matrix rel(k, static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(r); ++j) rel(i, j) = a(i, j);
      rel(i, static_cast<std::size_t>(r) + i) = 1;
    }
    Matrix e = g.matrix(k, k);
    while (!inverse(e)) e = g.matrix(k, k);
    const RelatedMatrix back = normalize_annihilator(e * rel, static_cast<std::size_t>(r));
    ASSERT_EQ(back.matrix, rel);
  }
}

TEST(Related, SpecRoundTrip) {
  for (const auto& [name, spec] : qfla::testing::spec_matrix()) {
    EXPECT_EQ(spec_from_related(spec.n, related_matrix_of(spec)), spec) << name;
  }
}

TEST(PermuteCopies, ReordersAndRenormalizes) {
  const QuasiQnSpec spec{5, 3, 2, Matrix{{1}, {1}}};
  const QuasiQnSpec same = permute_copies(spec, {0, 1, 2});
  EXPECT_EQ(same, spec);
  // New first copy is old copy 3, whose top is e_{1,n} + e_{2,n}.
  const QuasiQnSpec moved = permute_copies(spec, {2, 1, 0});
  EXPECT_EQ(moved.B, (Matrix{{1}, {-1}}));
  const QuasiQnSpec split{5, 3, 2, Matrix{{1}, {0}}};
  EXPECT_THROW(permute_copies(split, {0, 2, 1}), BadPivot);
  EXPECT_THROW(permute_copies(split, {0, 1}), DimensionMismatch);
}

TEST(PermuteCopies, PreservesAlgebraUpToRelabeling) {
  for (const auto& [name, spec] : qfla::testing::spec_matrix()) {
    if (spec.m < 2) continue;
    std::vector<std::size_t> perm(static_cast<std::size_t>(spec.m));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    while (std::next_permutation(perm.begin(), perm.end())) {
      QuasiQnSpec moved;
      try {
        moved = permute_copies(spec, perm);
      } catch (const BadPivot&) {
        continue;
      }
      EXPECT_EQ(lower_central_series(build_quasi(moved)).dims(),
                lower_central_series(build_quasi(spec)).dims())
          << name;
    }
  }
}

TEST(BlockStructure, Examples) {
  const auto one = block_structure({5, 3, 1, Matrix{{1, 1}}});
  ASSERT_TRUE(one);
  EXPECT_EQ(one->q, 1u);
  EXPECT_EQ(one->sizes, (std::vector<std::size_t>{3}));

  const auto two = block_structure({5, 3, 2, Matrix{{1}, {0}}});
  ASSERT_TRUE(two);
  EXPECT_EQ(two->q, 2u);
  EXPECT_EQ(two->sizes, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(two->members[0], (std::vector<int>{1, 3}));
  EXPECT_EQ(two->starts, (std::vector<std::size_t>{1, 3}));

  EXPECT_FALSE(block_structure({5, 3, 2, Matrix{{1}, {1}}}));
  EXPECT_THROW(require_block_structure({5, 3, 2, Matrix{{1}, {1}}}), NonBlockForm);
}
