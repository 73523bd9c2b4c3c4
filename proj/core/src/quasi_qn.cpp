#include "qfla/quasi_qn.hpp"

#include <stdexcept>
#include <string>

#include "qfla/error.hpp"

namespace qfla {

namespace {

void require_odd_n(int n) {
  if (n < 5 || n % 2 == 0) {
    throw BadN("n must be odd and at least 5, got " + std::to_string(n));
  }
}

Scalar sign_pow(int i) { return i % 2 == 0 ? Scalar(1) : Scalar(-1); }

std::vector<Term> terms_of(const Vector& v) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.push_back({k, v[k]});
  return out;
}

void verify_jacobi(const LieAlgebra& l) {
  if (!check_jacobi(l).holds) throw std::logic_error("constructed algebra violates Jacobi");
}

}  // namespace

Vector QuasiQnSpec::top_coords(int s) const {
  Vector v(static_cast<std::size_t>(r));
  if (s <= r) {
    v[static_cast<std::size_t>(s - 1)] = 1;
  } else {
    for (int t = 0; t < r; ++t) v[static_cast<std::size_t>(t)] = B(t, s - r - 1);
  }
  return v;
}

Vector QuasiQnSpec::top_vector(int s) const {
  Vector v(dim());
  const Vector c = top_coords(s);
  for (int t = 1; t <= r; ++t) v[top(t)] = c[static_cast<std::size_t>(t - 1)];
  return v;
}

Matrix QuasiQnSpec::top_matrix() const {
  Matrix t(static_cast<std::size_t>(r), static_cast<std::size_t>(m));
  for (int s = 1; s <= m; ++s) t.set_column(static_cast<std::size_t>(s - 1), top_coords(s));
  return t;
}

void QuasiQnSpec::validate() const {
  if (n < 5 || n % 2 == 0) throw BadSpec("field n: must be odd and >= 5, got " + std::to_string(n));
  if (m < 1) throw BadSpec("field m: must be >= 1");
  if (r < 1 || r > m) throw BadSpec("field r: must satisfy 1 <= r <= m");
  if (B.rows() != static_cast<std::size_t>(r) || B.cols() != static_cast<std::size_t>(m - r)) {
    throw BadSpec("field B: expected " + std::to_string(r) + "x" + std::to_string(m - r) +
                  " matrix, got " + std::to_string(B.rows()) + "x" + std::to_string(B.cols()));
  }
  for (std::size_t c = 0; c < B.cols(); ++c) {
    if (is_zero(B.column(c))) {
      throw BadSpec("field B: column " + std::to_string(c + 1) + " is zero (e_{" +
                    std::to_string(r + static_cast<int>(c) + 1) + ",n} would vanish)");
    }
  }
}

LieAlgebra build_qn(int n) {
  require_odd_n(n);
  std::vector<BasisLabel> labels;
  for (int i = 0; i <= n; ++i) labels.push_back(BasisLabel::plain(i));
  std::vector<BracketEntry> entries;
  const auto idx = [](int i) { return static_cast<std::size_t>(i); };
  for (int i = 1; i <= n - 2; ++i) entries.push_back({0, idx(i), {{idx(i + 1), Scalar(1)}}});
  for (int i = 1; i < n - i; ++i) entries.push_back({idx(i), idx(n - i), {{idx(n), sign_pow(i)}}});
  LieAlgebra l(std::move(labels), entries);
  verify_jacobi(l);
  return l;
}

LieAlgebra build_qn_x_basis(int n) {
  require_odd_n(n);
  std::vector<BasisLabel> labels;
  for (int i = 0; i <= n; ++i) labels.push_back(BasisLabel::plain(i));
  std::vector<BracketEntry> entries;
  const auto idx = [](int i) { return static_cast<std::size_t>(i); };
  for (int i = 1; i <= n - 1; ++i) entries.push_back({0, idx(i), {{idx(i + 1), Scalar(1)}}});
  for (int i = 1; i < n - i; ++i) entries.push_back({idx(i), idx(n - i), {{idx(n), sign_pow(i)}}});
  return LieAlgebra(std::move(labels), entries);
}

Matrix rebase_x_to_e(int n) {
  require_odd_n(n);
  // x_0 = e_0 - e_1, so the e_1 coordinate picks up -a_0.
  Matrix p = Matrix::identity(static_cast<std::size_t>(n + 1));
  p(1, 0) = -1;
  return p;
}

LieAlgebra build_quasi(const QuasiQnSpec& spec) {
  spec.validate();
  const int n = spec.n;
  std::vector<BasisLabel> labels;
  for (int s = 1; s <= spec.m; ++s)
    for (int j = 0; j < n; ++j) labels.push_back(BasisLabel::gen(s, j));
  for (int t = 1; t <= spec.r; ++t) labels.push_back(BasisLabel::top(t));

  std::vector<BracketEntry> entries;
  for (int s = 1; s <= spec.m; ++s) {
    const Vector top = spec.top_vector(s);
    for (int i = 1; i <= n - 2; ++i) {
      entries.push_back({spec.gen(s, 0), spec.gen(s, i), {{spec.gen(s, i + 1), Scalar(1)}}});
    }
    for (int i = 1; i < n - i; ++i) {
      entries.push_back({spec.gen(s, i), spec.gen(s, n - i), terms_of(sign_pow(i) * top)});
    }
  }
  LieAlgebra l(std::move(labels), entries);
  verify_jacobi(l);
  return l;
}

RelatedMatrix related_matrix_of(const QuasiQnSpec& spec) {
  spec.validate();
  const auto m = static_cast<std::size_t>(spec.m);
  const auto r = static_cast<std::size_t>(spec.r);
  RelatedMatrix rel{m, r, Matrix(m - r, m)};
  for (std::size_t i = 0; i < m - r; ++i) {
    for (std::size_t t = 0; t < r; ++t) rel.matrix(i, t) = -spec.B(t, i);
    rel.matrix(i, r + i) = 1;
  }
  return rel;
}

RelatedMatrix normalize_annihilator(const Matrix& annihilator, std::size_t r) {
  const std::size_t m = annihilator.cols();
  if (r > m || annihilator.rows() != m - r) {
    throw DimensionMismatch("annihilator must be (m-r) x m");
  }
  const RrefResult red = rref_right_pivot(annihilator);
  if (red.rank != m - r) {
    throw BadPivot("annihilator has rank " + std::to_string(red.rank) + ", expected " +
                   std::to_string(m - r));
  }
  for (std::size_t i = 0; i < red.rank; ++i) {
    if (red.pivot_cols[i] != r + i) {
      throw BadPivot("trailing " + std::to_string(m - r) +
                     " columns are singular; reorder copies first");
    }
  }
  return RelatedMatrix{m, r, red.reduced};
}

QuasiQnSpec spec_from_related(int n, const RelatedMatrix& related) {
  QuasiQnSpec spec;
  spec.n = n;
  spec.m = static_cast<int>(related.m);
  spec.r = static_cast<int>(related.r);
  spec.B = Matrix(related.r, related.m - related.r);
  for (std::size_t t = 0; t < related.r; ++t)
    for (std::size_t i = 0; i < related.m - related.r; ++i) spec.B(t, i) = -related.matrix(i, t);
  spec.validate();
  return spec;
}

QuasiQnSpec permute_copies(const QuasiQnSpec& spec, const std::vector<std::size_t>& perm) {
  const RelatedMatrix rel = related_matrix_of(spec);
  if (perm.size() != rel.m) throw DimensionMismatch("permutation length must equal m");
  Matrix permuted(rel.m - rel.r, rel.m);
  for (std::size_t i = 0; i < rel.m; ++i) {
    if (perm[i] >= rel.m) throw DimensionMismatch("permutation entry out of range");
    for (std::size_t row = 0; row < rel.m - rel.r; ++row) permuted(row, i) = rel.matrix(row, perm[i]);
  }
  return spec_from_related(spec.n, normalize_annihilator(permuted, rel.r));
}

std::optional<BlockStructure> block_structure(const QuasiQnSpec& spec) {
  spec.validate();
  const auto r = static_cast<std::size_t>(spec.r);
  BlockStructure bs;
  bs.q = r;
  bs.members.assign(r, {});
  bs.block_of.assign(static_cast<std::size_t>(spec.m), 0);
  bs.scale.assign(static_cast<std::size_t>(spec.m), Scalar(0));
  for (int s = 1; s <= spec.m; ++s) {
    const Vector c = spec.top_coords(s);
    std::optional<std::size_t> hit;
    for (std::size_t t = 0; t < r; ++t) {
      if (c[t].is_zero()) continue;
      if (hit) return std::nullopt;
      hit = t;
    }
    const auto si = static_cast<std::size_t>(s - 1);
    bs.block_of[si] = *hit;  // validate() guarantees a nonzero entry
    bs.scale[si] = c[*hit];
    bs.members[*hit].push_back(s);
  }
  std::size_t start = 1;
  for (const auto& mem : bs.members) {
    bs.sizes.push_back(mem.size());
    bs.starts.push_back(start);
    start += mem.size();
  }
  return bs;
}

BlockStructure require_block_structure(const QuasiQnSpec& spec) {
  auto bs = block_structure(spec);
  if (!bs) throw NonBlockForm("some top vector e_{s,n} mixes several independent tops");
  return *bs;
}

}  // namespace qfla
