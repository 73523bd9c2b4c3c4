#include "qfla/lie_algebra.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "qfla/error.hpp"

namespace qfla {

std::string BasisLabel::str() const {
  switch (kind) {
    case Kind::Gen:
      return "e_{" + std::to_string(copy) + "," + std::to_string(level) + "}";
    case Kind::Top:
      return "e_{" + std::to_string(index) + ",n}";
    case Kind::Plain:
      break;
  }
  return "e_{" + std::to_string(index) + "}";
}

BasisLabel BasisLabel::parse(const std::string& text) {
  static const std::regex gen_re(R"(e_\{(\d+),(\d+)\})");
  static const std::regex top_re(R"(e_\{(\d+),n\})");
  static const std::regex plain_re(R"(e_\{(\d+)\})");
  std::smatch m;
  if (std::regex_match(text, m, gen_re)) return gen(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(text, m, top_re)) return top(std::stoi(m[1]));
  if (std::regex_match(text, m, plain_re)) return plain(std::stoi(m[1]));
  throw ParseError("malformed basis label '" + text + "'");
}

LieAlgebra::LieAlgebra(std::vector<BasisLabel> labels, const std::vector<BracketEntry>& brackets)
    : labels_(std::move(labels)) {
  const std::size_t d = labels_.size();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      if (labels_[a] == labels_[b]) throw DimensionMismatch("duplicate basis label " + labels_[a].str());
    }
  }
  sc_.assign(d * (d > 0 ? d - 1 : 0) / 2, {});
  std::vector<std::map<std::size_t, Scalar>> dense(sc_.size());
  for (const auto& e : brackets) {
    if (e.i >= e.j || e.j >= d) {
      throw DimensionMismatch("bracket entry (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                              ") must satisfy i < j < dim");
    }
    for (const auto& t : e.value) {
      if (t.index >= d) throw DimensionMismatch("bracket value index out of range");
      dense[slot(e.i, e.j)][t.index] += t.coeff;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      auto& out = sc_[slot(i, j)];
      for (const auto& [k, c] : dense[slot(i, j)]) {
        if (!c.is_zero()) out.push_back({k, c});
      }
      if (!out.empty()) nonzero_.emplace_back(i, j);
    }
  }
}

std::size_t LieAlgebra::slot(std::size_t i, std::size_t j) const {
  const std::size_t d = labels_.size();
  return i * d - i * (i + 1) / 2 + (j - i - 1);
}

std::optional<std::size_t> LieAlgebra::index_of(const BasisLabel& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

const std::vector<Term>& LieAlgebra::structure(std::size_t i, std::size_t j) const {
  if (i >= j || j >= dim()) throw DimensionMismatch("structure(i, j) needs i < j < dim");
  return sc_[slot(i, j)];
}

Vector LieAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
  Vector v(dim());
  if (i == j) return v;
  const bool flip = i > j;
  for (const auto& t : structure(std::min(i, j), std::max(i, j))) {
    v[t.index] = flip ? -t.coeff : t.coeff;
  }
  return v;
}

std::vector<BracketEntry> LieAlgebra::brackets() const {
  std::vector<BracketEntry> out;
  out.reserve(nonzero_.size());
  for (const auto& [i, j] : nonzero_) out.push_back({i, j, sc_[slot(i, j)]});
  return out;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw DimensionMismatch("bracket operands must have length " + std::to_string(dim()));
  }
  Vector out(dim());
  for (const auto& [i, j] : nonzero_) {
    const Scalar c = x[i] * y[j] - x[j] * y[i];
    if (c.is_zero()) continue;
    for (const auto& t : sc_[slot(i, j)]) out[t.index] += c * t.coeff;
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  Matrix m(dim(), dim());
  for (std::size_t c = 0; c < dim(); ++c) m.set_column(c, bracket(x, unit_vector(dim(), c)));
  return m;
}

bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
  return a.labels_ == b.labels_ && a.sc_ == b.sc_;
}

JacobiResult check_jacobi(const LieAlgebra& l) {
  const std::size_t d = l.dim();
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < d; ++i) basis.push_back(unit_vector(d, i));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const Vector ij = l.basis_bracket(i, j);
      for (std::size_t k = j + 1; k < d; ++k) {
        Vector sum = l.bracket(basis[i], l.basis_bracket(j, k));
        axpy(sum, Scalar(1), l.bracket(basis[j], l.basis_bracket(k, i)));
        axpy(sum, Scalar(1), l.bracket(basis[k], ij));
        if (!is_zero(sum)) return {false, std::array<std::size_t, 3>{i, j, k}};
      }
    }
  }
  return {};
}

std::vector<std::size_t> SubspaceChain::dims() const {
  std::vector<std::size_t> out;
  out.reserve(spaces.size());
  for (const auto& s : spaces) out.push_back(s.cols());
  return out;
}

Matrix bracket_span(const LieAlgebra& l, const Matrix& a, const Matrix& b) {
  std::vector<Vector> products;
  const auto acols = a.columns();
  const auto bcols = b.columns();
  for (const auto& x : acols) {
    for (const auto& y : bcols) {
      Vector v = l.bracket(x, y);
      if (!is_zero(v)) products.push_back(std::move(v));
    }
  }
  if (products.empty()) return Matrix(l.dim(), 0);
  return canonical_span(Matrix::from_columns(products, l.dim()));
}

SubspaceChain lower_central_series(const LieAlgebra& l) {
  SubspaceChain chain;
  const Matrix whole = Matrix::identity(l.dim());
  chain.spaces.push_back(whole);
  while (chain.spaces.back().cols() > 0) {
    Matrix next = bracket_span(l, whole, chain.spaces.back());
    if (next.cols() == chain.spaces.back().cols()) {
      throw NotNilpotent("lower central series stabilizes at dimension " +
                         std::to_string(next.cols()));
    }
    chain.spaces.push_back(std::move(next));
  }
  return chain;
}

bool is_filiform(const LieAlgebra& l) {
  const auto dims = lower_central_series(l).dims();
  const std::size_t d = l.dim();
  if (d < 2) return false;
  for (std::size_t i = 1; i + 1 <= d; ++i) {
    const std::size_t actual = i < dims.size() ? dims[i] : 0;
    if (actual != d - i - 1) return false;
  }
  return true;
}

std::size_t minimal_generator_count(const LieAlgebra& l) {
  const Matrix derived = bracket_span(l, Matrix::identity(l.dim()), Matrix::identity(l.dim()));
  return l.dim() - derived.cols();
}

bool is_minimal_generating_set(const LieAlgebra& l, const std::vector<Vector>& generators) {
  const Matrix derived = bracket_span(l, Matrix::identity(l.dim()), Matrix::identity(l.dim()));
  if (generators.size() != l.dim() - derived.cols()) return false;
  std::vector<Vector> all = derived.columns();
  all.insert(all.end(), generators.begin(), generators.end());
  return rank_of(all, l.dim()) == l.dim();
}

Matrix generator_complement(const LieAlgebra& l) {
  const Matrix derived = bracket_span(l, Matrix::identity(l.dim()), Matrix::identity(l.dim()));
  std::vector<Vector> acc = derived.columns();
  std::vector<Vector> chosen;
  std::size_t current = derived.cols();
  for (std::size_t i = 0; i < l.dim() && current < l.dim(); ++i) {
    acc.push_back(unit_vector(l.dim(), i));
    const std::size_t r = rank_of(acc, l.dim());
    if (r > current) {
      current = r;
      chosen.push_back(acc.back());
    } else {
      acc.pop_back();
    }
  }
  return Matrix::from_columns(chosen, l.dim());
}

std::variant<SubspaceChain, QuasiCyclicFailure> quasi_cyclic_split(const LieAlgebra& l,
                                                                    const Matrix& u) {
  if (u.rows() != l.dim()) throw DimensionMismatch("subspace U has wrong ambient dimension");
  SubspaceChain chain;
  const Matrix base = canonical_span(u);
  std::vector<Vector> sum;
  std::size_t sum_rank = 0;
  Matrix current = base;
  // A direct sum of nonzero pieces cannot have more than dim L pieces.
  for (std::size_t level = 0; current.cols() > 0; ++level) {
    chain.spaces.push_back(current);
    for (const auto& c : current.columns()) sum.push_back(c);
    const std::size_t r = rank_of(sum, l.dim());
    if (r != sum_rank + current.cols()) {
      return QuasiCyclicFailure{QuasiCyclicFailure::Kind::NotDirect, level, chain};
    }
    sum_rank = r;
    current = bracket_span(l, base, current);
  }
  if (sum_rank != l.dim()) {
    return QuasiCyclicFailure{QuasiCyclicFailure::Kind::NotSpanning, chain.spaces.size(), chain};
  }
  return chain;
}

LieAlgebra transport(const LieAlgebra& l, const Matrix& to_new, std::vector<BasisLabel> labels) {
  if (to_new.rows() != l.dim() || to_new.cols() != l.dim() || labels.size() != l.dim()) {
    throw DimensionMismatch("transport: shape mismatch");
  }
  const auto back = inverse(to_new);
  if (!back) throw DimensionMismatch("transport: change of basis is singular");
  const auto new_basis = back->columns();  // new basis vectors in old coordinates
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < l.dim(); ++a) {
    for (std::size_t b = a + 1; b < l.dim(); ++b) {
      const Vector v = to_new * l.bracket(new_basis[a], new_basis[b]);
      BracketEntry e{a, b, {}};
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) e.value.push_back({k, v[k]});
      if (!e.value.empty()) entries.push_back(std::move(e));
    }
  }
  return LieAlgebra(std::move(labels), entries);
}

}  // namespace qfla
