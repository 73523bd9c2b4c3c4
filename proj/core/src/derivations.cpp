#include "qfla/derivations.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qfla/error.hpp"

namespace qfla {

namespace {

std::size_t idx(int s) { return static_cast<std::size_t>(s - 1); }

// Union-find over copies 1..m.
struct Components {
  std::vector<int> parent;
  explicit Components(int m) : parent(static_cast<std::size_t>(m + 1)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[idx(x + 1)] != x) x = parent[idx(x + 1)];
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

DerBasisElement element(const QuasiQn& q, DerBasisElement::Tag tag, int i, int j,
                        const GeneratorImages& gi) {
  return {tag, i, j, extend_derivation_candidate(q, gi)};
}

}  // namespace

GeneratorImages GeneratorImages::zero(const QuasiQnSpec& spec) {
  GeneratorImages gi;
  gi.e0.assign(static_cast<std::size_t>(spec.m), Vector(spec.dim()));
  gi.e1.assign(static_cast<std::size_t>(spec.m), Vector(spec.dim()));
  return gi;
}

GeneratorImages GeneratorImages::of_map(const QuasiQnSpec& spec, const Matrix& map) {
  GeneratorImages gi;
  for (int s = 1; s <= spec.m; ++s) {
    gi.e0.push_back(map.column(spec.gen(s, 0)));
    gi.e1.push_back(map.column(spec.gen(s, 1)));
  }
  return gi;
}

bool is_derivation(const LieAlgebra& l, const Matrix& map) {
  const std::size_t d = l.dim();
  if (map.rows() != d || map.cols() != d) throw DimensionMismatch("map shape must be dim x dim");
  const auto images = map.columns();
  for (std::size_t i = 0; i < d; ++i) {
    const Vector ei = unit_vector(d, i);
    for (std::size_t j = i + 1; j < d; ++j) {
      const Vector ej = unit_vector(d, j);
      Vector lhs = map * l.basis_bracket(i, j);
      axpy(lhs, Scalar(-1), l.bracket(images[i], ej));
      axpy(lhs, Scalar(-1), l.bracket(ei, images[j]));
      if (!is_zero(lhs)) return false;
    }
  }
  return true;
}

std::vector<Matrix> derivation_oracle(const LieAlgebra& l) {
  const std::size_t d = l.dim();
  // Unknown X(a, b), the e_a coefficient of delta e_b, sits at a * d + b.
  std::vector<std::vector<Vector>> table(d, std::vector<Vector>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) table[a][b] = l.basis_bracket(a, b);

  std::vector<Vector> rows;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        Vector row(d * d);
        bool any = false;
        for (std::size_t c = 0; c < d; ++c) {
          if (!table[i][j][c].is_zero()) {
            row[k * d + c] += table[i][j][c];
            any = true;
          }
        }
        for (std::size_t a = 0; a < d; ++a) {
          if (!table[a][j][k].is_zero()) {
            row[a * d + i] -= table[a][j][k];
            any = true;
          }
          if (!table[i][a][k].is_zero()) {
            row[a * d + j] -= table[i][a][k];
            any = true;
          }
        }
        if (any && !is_zero(row)) rows.push_back(std::move(row));
      }
    }
  }
  std::vector<Vector> kernel;
  if (rows.empty()) {
    for (std::size_t v = 0; v < d * d; ++v) kernel.push_back(unit_vector(d * d, v));
  } else {
    kernel = nullspace(Matrix::from_rows(rows, d * d));
  }
  std::vector<Matrix> maps;
  maps.reserve(kernel.size());
  for (const auto& v : kernel) {
    Matrix m(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) m(a, b) = v[a * d + b];
    maps.push_back(std::move(m));
  }
  return maps;
}

Matrix extend_derivation_candidate(const QuasiQn& q, const GeneratorImages& images) {
  const auto& spec = q.spec;
  const auto& l = q.algebra;
  const std::size_t d = spec.dim();
  const auto copies = static_cast<std::size_t>(spec.m);
  if (images.e0.size() != copies || images.e1.size() != copies) {
    throw DimensionMismatch("generator images must cover every copy");
  }
  Matrix map(d, d);
  for (int s = 1; s <= spec.m; ++s) {
    const Vector& d0 = images.e0[idx(s)];
    const Vector& d1 = images.e1[idx(s)];
    if (d0.size() != d || d1.size() != d) throw DimensionMismatch("generator image length");
    const Vector e0 = unit_vector(d, spec.gen(s, 0));
    map.set_column(spec.gen(s, 0), d0);
    map.set_column(spec.gen(s, 1), d1);
    Vector prev = d1;
    for (int t = 2; t <= spec.n - 1; ++t) {
      Vector next = l.bracket(d0, unit_vector(d, spec.gen(s, t - 1)));
      axpy(next, Scalar(1), l.bracket(e0, prev));
      map.set_column(spec.gen(s, t), next);
      prev = std::move(next);
    }
    if (s <= spec.r) {
      Vector top = l.bracket(d1, unit_vector(d, spec.gen(s, spec.n - 1)));
      axpy(top, Scalar(1), l.bracket(unit_vector(d, spec.gen(s, 1)), prev));
      map.set_column(spec.top(s), Scalar(-1) * top);
    }
  }
  return map;
}

Vector derivation_interior_closed_form(const QuasiQn& q, const GeneratorImages& images, int s,
                                       int t) {
  const auto& spec = q.spec;
  const int n = spec.n;
  const Vector& d0 = images.e0[idx(s)];
  const Vector& d1 = images.e1[idx(s)];
  const Scalar c00 = d0[spec.gen(s, 0)];
  const Scalar c11 = d1[spec.gen(s, 1)];
  Vector v(spec.dim());
  v[spec.gen(s, t)] += Scalar(t - 1) * c00 + c11;
  for (int j = 2; j <= n - t; ++j) v[spec.gen(s, j + t - 1)] += d1[spec.gen(s, j)];
  const Scalar sign = t % 2 == 0 ? Scalar(1) : Scalar(-1);
  axpy(v, sign * d0[spec.gen(s, n - t + 1)], spec.top_vector(s));
  return v;
}

std::string to_string(DerCondition c) {
  switch (c) {
    case DerCondition::Shape22: return "2.2";
    case DerCondition::Shape23: return "2.3";
    case DerCondition::OddVanish24: return "2.4";
    case DerCondition::Eigen21: return "2.1";
    case DerCondition::Cross25: return "2.5";
  }
  return "?";
}

DerVerdict theorem21_conditions(const QuasiQn& q, const GeneratorImages& images) {
  const auto& spec = q.spec;
  const int n = spec.n;
  const int m = spec.m;
  const std::size_t d = spec.dim();
  const auto fail = [](DerCondition c, int s, int p, int index, std::string detail) {
    return DerVerdict{false, c, s, p, index, std::move(detail)};
  };

  // Copy and level of each non-top coordinate.
  std::vector<int> copy_of(d, 0);
  std::vector<int> level_of(d, -1);
  for (int s = 1; s <= m; ++s)
    for (int j = 0; j < n; ++j) {
      copy_of[spec.gen(s, j)] = s;
      level_of[spec.gen(s, j)] = j;
    }

  for (int s = 1; s <= m; ++s) {
    const Vector& d0 = images.e0[idx(s)];
    for (std::size_t k = 0; k < d; ++k) {
      if (d0[k].is_zero() || copy_of[k] == 0) continue;
      const bool ok = copy_of[k] == s && level_of[k] != 1;
      if (!ok) {
        return fail(DerCondition::Shape22, s, copy_of[k], level_of[k],
                    "image of e_{" + std::to_string(s) + ",0} has a component on " +
                        q.algebra.labels()[k].str());
      }
    }
  }
  for (int s = 1; s <= m; ++s) {
    const Vector& d1 = images.e1[idx(s)];
    for (std::size_t k = 0; k < d; ++k) {
      if (d1[k].is_zero() || copy_of[k] == 0) continue;
      const int lvl = level_of[k];
      const bool ok = lvl == n - 1 || (copy_of[k] == s && lvl >= 1 && lvl <= n - 2);
      if (!ok) {
        return fail(DerCondition::Shape23, s, copy_of[k], lvl,
                    "image of e_{" + std::to_string(s) + ",1} has a component on " +
                        q.algebra.labels()[k].str());
      }
    }
  }
  for (int s = 1; s <= m; ++s) {
    for (int i = 3; i <= n - 2; i += 2) {
      if (!images.e1[idx(s)][spec.gen(s, i)].is_zero()) {
        return fail(DerCondition::OddVanish24, s, s, i,
                    "coefficient of e_{" + std::to_string(s) + "," + std::to_string(i) +
                        "} in the image of e_{" + std::to_string(s) + ",1} must vanish");
      }
    }
  }
  const auto lambda = [&](int s) {
    return Scalar(n - 2) * images.e0[idx(s)][spec.gen(s, 0)] +
           Scalar(2) * images.e1[idx(s)][spec.gen(s, 1)];
  };
  for (int s = spec.r + 1; s <= m; ++s) {
    const Vector b = spec.top_coords(s);
    for (int j = 1; j <= spec.r; ++j) {
      if (!(b[idx(j)] * (lambda(s) - lambda(j))).is_zero()) {
        return fail(DerCondition::Eigen21, s, j, 0,
                    "lambda_" + std::to_string(s) + " != lambda_" + std::to_string(j) +
                        " although e_{" + std::to_string(s) + ",n} involves e_{" +
                        std::to_string(j) + ",n}");
      }
    }
  }
  for (int s = 1; s <= m; ++s) {
    for (int p = 1; p <= m; ++p) {
      if (s == p) continue;
      const Scalar csp = images.e1[idx(s)][spec.gen(p, n - 1)];
      const Scalar cps = images.e1[idx(p)][spec.gen(s, n - 1)];
      Vector combo = Scalar(-1) * csp * spec.top_coords(p);
      axpy(combo, cps, spec.top_coords(s));
      if (!is_zero(combo)) {
        return fail(DerCondition::Cross25, s, p, n - 1,
                    "level n-1 cross coefficients of copies " + std::to_string(s) + " and " +
                        std::to_string(p) + " do not annihilate their top rows");
      }
    }
  }
  return {};
}

std::string DerBasisElement::name() const {
  const auto si = std::to_string(i);
  const auto sj = std::to_string(j);
  switch (tag) {
    case Tag::Torus: return "tau_" + si;
    case Tag::BlockTorus: return "tau_block_" + si;
    case Tag::AdGen: return "ad e_{" + si + "," + sj + "}";
    case Tag::DiagTop: return "delta_{" + si + "}";
    case Tag::OffDiag: return "delta_{" + si + "," + sj + "}";
    case Tag::Even: return "epsilon_{" + si + "," + sj + "}";
    case Tag::TopFromE0: return "zeta_{" + si + "," + sj + "}";
    case Tag::TopFromE1: return "xi_{" + si + "," + sj + "}";
  }
  return "?";
}

std::vector<std::vector<int>> top_components(const QuasiQnSpec& spec) {
  Components uf(spec.m);
  for (int s = spec.r + 1; s <= spec.m; ++s) {
    const Vector b = spec.top_coords(s);
    for (int j = 1; j <= spec.r; ++j)
      if (!b[idx(j)].is_zero()) uf.unite(s, j);
  }
  std::map<int, std::vector<int>> groups;
  for (int s = 1; s <= spec.m; ++s) groups[uf.find(s)].push_back(s);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DerBasisElement> torus_basis(const QuasiQn& q) {
  const auto& spec = q.spec;
  std::vector<DerBasisElement> out;
  GeneratorImages tau0 = GeneratorImages::zero(spec);
  for (int s = 1; s <= spec.m; ++s) tau0.e1[idx(s)][spec.gen(s, 1)] = 1;
  out.push_back(element(q, DerBasisElement::Tag::Torus, 0, 0, tau0));
  for (int i = 1; i <= spec.m; ++i) {
    GeneratorImages gi = GeneratorImages::zero(spec);
    gi.e0[idx(i)][spec.gen(i, 0)] = -2;
    gi.e1[idx(i)][spec.gen(i, 1)] = spec.n - 2;
    out.push_back(element(q, DerBasisElement::Tag::Torus, i, 0, gi));
  }
  const auto comps = top_components(spec);
  for (std::size_t c = 1; c < comps.size(); ++c) {
    GeneratorImages gi = GeneratorImages::zero(spec);
    for (int s : comps[c]) gi.e1[idx(s)][spec.gen(s, 1)] = 1;
    out.push_back(element(q, DerBasisElement::Tag::BlockTorus, static_cast<int>(c + 1), 0, gi));
  }
  return out;
}

DerBasisElement h1_derivation(const QuasiQn& q) {
  const auto& spec = q.spec;
  GeneratorImages gi = GeneratorImages::zero(spec);
  for (int s = 1; s <= spec.m; ++s) {
    gi.e0[idx(s)][spec.gen(s, 0)] = -2 * s;
    gi.e1[idx(s)][spec.gen(s, 1)] = s * (spec.n - 2);
  }
  return element(q, DerBasisElement::Tag::Torus, -1, 0, gi);
}

std::vector<DerBasisElement> nilpotent_basis(const QuasiQn& q) {
  using Tag = DerBasisElement::Tag;
  const auto& spec = q.spec;
  const auto& l = q.algebra;
  const BlockStructure bs = require_block_structure(spec);
  const int n = spec.n;
  std::vector<DerBasisElement> out;
  for (std::size_t block = 0; block < bs.q; ++block) {
    const auto& members = bs.members[block];
    for (int s : members) {
      for (int u = 0; u <= n - 2; ++u) {
        const Matrix ad = l.ad(unit_vector(spec.dim(), spec.gen(s, u)));
        out.push_back(element(q, Tag::AdGen, s, u, GeneratorImages::of_map(spec, ad)));
      }
      for (int k = 2; k <= spec.d() - 1; ++k) {
        GeneratorImages gi = GeneratorImages::zero(spec);
        gi.e1[idx(s)][spec.gen(s, 2 * k)] = 1;
        out.push_back(element(q, Tag::Even, s, k, gi));
      }
      GeneratorImages diag = GeneratorImages::zero(spec);
      diag.e1[idx(s)][spec.gen(s, n - 1)] = 1;
      out.push_back(element(q, Tag::DiagTop, s, 0, diag));
      for (int t = 1; t <= spec.r; ++t) {
        GeneratorImages zeta = GeneratorImages::zero(spec);
        zeta.e0[idx(s)][spec.top(t)] = 1;
        out.push_back(element(q, Tag::TopFromE0, s, t, zeta));
      }
      for (int t = 1; t <= spec.r; ++t) {
        GeneratorImages xi = GeneratorImages::zero(spec);
        xi.e1[idx(s)][spec.top(t)] = 1;
        out.push_back(element(q, Tag::TopFromE1, s, t, xi));
      }
    }
    // e_{i,n} = mu_i u and e_{j,n} = mu_j u force c^{i1}_{j,n-1} mu_j = c^{j1}_{i,n-1} mu_i.
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const int i = members[a];
        const int j = members[b];
        GeneratorImages gi = GeneratorImages::zero(spec);
        gi.e1[idx(i)][spec.gen(j, n - 1)] = bs.scale[idx(i)];
        gi.e1[idx(j)][spec.gen(i, n - 1)] = bs.scale[idx(j)];
        out.push_back(element(q, Tag::OffDiag, i, j, gi));
      }
    }
  }
  return out;
}

std::size_t der_dimension(const QuasiQnSpec& spec) {
  const BlockStructure bs = require_block_structure(spec);
  const auto n = static_cast<std::size_t>(spec.n);
  const auto r = static_cast<std::size_t>(spec.r);
  const auto dd = static_cast<std::size_t>(spec.d());
  std::size_t total = static_cast<std::size_t>(spec.m) + bs.q;
  for (std::size_t ml : bs.sizes) total += (2 * r + n + dd - 2) * ml + ml * (ml - 1) / 2;
  return total;
}

std::vector<Matrix> epsilon_block_start_variants(const QuasiQn& q) {
  const auto& spec = q.spec;
  const BlockStructure bs = require_block_structure(spec);
  std::vector<Matrix> out;
  for (const auto& members : bs.members) {
    if (members.size() < 2) continue;
    const int start = members.front();
    for (std::size_t a = 1; a < members.size(); ++a) {
      for (int k = 2; k <= spec.d(); ++k) {
        GeneratorImages gi = GeneratorImages::zero(spec);
        gi.e1[idx(members[a])][spec.gen(start, 2 * k)] = 1;
        out.push_back(extend_derivation_candidate(q, gi));
      }
    }
  }
  return out;
}

DerivationAnalysis lambda_of(const QuasiQn& q, const Matrix& map) {
  const auto& spec = q.spec;
  DerivationAnalysis out;
  for (int s = 1; s <= spec.m; ++s) {
    CopyLambda c;
    c.c00 = map(spec.gen(s, 0), spec.gen(s, 0));
    c.c11 = map(spec.gen(s, 1), spec.gen(s, 1));
    for (int i = 0; i <= spec.n - 2; ++i) c.levels.push_back(Scalar(i) * c.c00 + c.c11);
    c.lambda = Scalar(spec.n - 2) * c.c00 + Scalar(2) * c.c11;
    out.copies.push_back(std::move(c));
  }
  return out;
}

std::vector<WeightSpace> weight_decomposition(std::size_t dim, const std::vector<Matrix>& torus) {
  for (const auto& t : torus) {
    if (t.rows() != dim || t.cols() != dim || !t.is_diagonal()) {
      throw NotSimultaneouslyDiagonal("torus element is not diagonal in the standard basis");
    }
  }
  std::vector<WeightSpace> spaces;
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<Scalar> w;
    w.reserve(torus.size());
    for (const auto& t : torus) w.push_back(t(k, k));
    auto it = std::find_if(spaces.begin(), spaces.end(),
                           [&](const WeightSpace& ws) { return ws.weight == w; });
    if (it == spaces.end()) {
      spaces.push_back({std::move(w), {k}});
    } else {
      it->basis.push_back(k);
    }
  }
  return spaces;
}

}  // namespace qfla
