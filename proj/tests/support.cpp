#include "support.hpp"

#include <algorithm>

namespace qfla::testing {

namespace {

std::size_t idx(int s) { return static_cast<std::size_t>(s - 1); }

// mu with b = mu a, if the nonzero vectors a and b are proportional.
std::optional<Scalar> ratio(const Vector& a, const Vector& b) {
  std::optional<Scalar> mu;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return std::nullopt;
    if (a[i].is_zero()) continue;
    const Scalar r = b[i] / a[i];
    if (mu && *mu != r) return std::nullopt;
    mu = r;
  }
  return mu;
}

}  // namespace

GeneratorImages random_der_candidate(Gen& g, const QuasiQnSpec& spec, bool respect) {
  const int n = spec.n;
  GeneratorImages gi = GeneratorImages::zero(spec);
  for (int s = 1; s <= spec.m; ++s) {
    Vector& d0 = gi.e0[idx(s)];
    Vector& d1 = gi.e1[idx(s)];
    d0[spec.gen(s, 0)] = g.small();
    for (int j = 2; j <= n - 1; ++j)
      if (g.coin()) d0[spec.gen(s, j)] = g.small();
    for (int j = 1; j <= n - 2; ++j)
      if (g.coin()) d1[spec.gen(s, j)] = g.small();
    for (int p = 1; p <= spec.m; ++p)
      if (g.coin(3)) d1[spec.gen(p, n - 1)] = g.small();
    for (int t = 1; t <= spec.r; ++t) {
      if (g.coin()) d0[spec.top(t)] = g.small();
      if (g.coin()) d1[spec.top(t)] = g.small();
    }
  }
  if (!respect) {
    const int s = g.integer(1, spec.m);
    const int p = g.integer(1, spec.m);
    if (g.coin()) {
      const int j = p == s ? 1 : g.integer(0, n - 1);
      gi.e0[idx(s)][spec.gen(p, j)] += g.nonzero();
    } else {
      const int j = p == s ? (g.coin() ? 0 : n - 1) : g.integer(0, n - 2);
      if (p == s && j == n - 1) {
        gi.e1[idx(s)][spec.gen(s, 0)] += g.nonzero();
      } else {
        gi.e1[idx(s)][spec.gen(p, j)] += g.nonzero();
      }
    }
  }
  return gi;
}

void repair_derivation(const QuasiQnSpec& spec, GeneratorImages& gi) {
  const int n = spec.n;
  for (int s = 1; s <= spec.m; ++s)
    for (int i = 3; i <= n - 2; i += 2) gi.e1[idx(s)][spec.gen(s, i)] = 0;
  // One common lambda = (n-2) c00 + 2 c11 for all copies.
  const Scalar lambda = Scalar(n - 2) * gi.e0[0][spec.gen(1, 0)] +
                        Scalar(2) * gi.e1[0][spec.gen(1, 1)];
  for (int s = 1; s <= spec.m; ++s) {
    const Scalar c00 = gi.e0[idx(s)][spec.gen(s, 0)];
    gi.e1[idx(s)][spec.gen(s, 1)] = (lambda - Scalar(n - 2) * c00) / Scalar(2);
  }
  for (int s = 1; s <= spec.m; ++s) {
    for (int p = s + 1; p <= spec.m; ++p) {
      const auto mu = ratio(spec.top_coords(s), spec.top_coords(p));  // top(p) = mu top(s)
      Scalar& csp = gi.e1[idx(s)][spec.gen(p, n - 1)];
      Scalar& cps = gi.e1[idx(p)][spec.gen(s, n - 1)];
      if (mu) {
        cps = *mu * csp;
      } else {
        csp = 0;
        cps = 0;
      }
    }
  }
}

std::optional<std::vector<Scalar>> compatible_scalings(const QuasiQnSpec& spec,
                                                       const std::vector<int>& q) {
  const auto m = static_cast<std::size_t>(spec.m);
  std::vector<Vector> rows;
  for (int s = spec.r + 1; s <= spec.m; ++s) {
    const Vector b = spec.top_coords(s);
    for (int t = 0; t < spec.r; ++t) {
      Vector row(m);
      row[idx(s)] += spec.top_coords(q[idx(s)])[static_cast<std::size_t>(t)];
      for (int j = 1; j <= spec.r; ++j) {
        row[idx(j)] -= b[idx(j)] * spec.top_coords(q[idx(j)])[static_cast<std::size_t>(t)];
      }
      rows.push_back(std::move(row));
    }
  }
  std::vector<Vector> basis;
  if (rows.empty()) {
    for (std::size_t i = 0; i < m; ++i) basis.push_back(unit_vector(m, i));
  } else {
    basis = nullspace(Matrix::from_rows(rows, m));
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (std::none_of(basis.begin(), basis.end(),
                     [&](const Vector& v) { return !v[j].is_zero(); })) {
      return std::nullopt;
    }
  }
  for (long t = 1;; ++t) {
    Vector k(m);
    Scalar w(1);
    for (const auto& v : basis) {
      axpy(k, w, v);
      w *= Scalar(t);
    }
    if (std::none_of(k.begin(), k.end(), [](const Scalar& x) { return x.is_zero(); })) return k;
  }
}

AutCandidate random_aut_candidate(Gen& g, const QuasiQnSpec& spec, bool repair) {
  const int n = spec.n;
  const int m = spec.m;
  std::vector<int> q(idx(m + 1));
  std::optional<std::vector<Scalar>> k;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const auto perm = g.permutation(idx(m + 1));
    for (int s = 1; s <= m; ++s) q[idx(s)] = static_cast<int>(perm[idx(s)]) + 1;
    if (!repair) break;
    k = compatible_scalings(spec, q);
    if (k) break;
  }
  if (repair && !k) {
    for (int s = 1; s <= m; ++s) q[idx(s)] = s;
    k = compatible_scalings(spec, q);
  }

  const Scalar common = g.nonzero(3);
  AutCandidate c;
  for (int s = 1; s <= m; ++s) {
    const int qs = q[idx(s)];
    Vector v0(spec.dim());
    Vector v1(spec.dim());
    if (repair) {
      const Scalar ks = common * (*k)[idx(s)];
      const Scalar scale = g.nonzero(2);
      v0[spec.gen(qs, 0)] = ks * scale * scale;
      v1[spec.gen(qs, 1)] = ks.pow(-(n - 3) / 2) * scale.pow(-(n - 2));
    } else {
      v0[spec.gen(qs, 0)] = g.coin(10) ? Scalar(0) : g.nonzero();
      v1[spec.gen(qs, 1)] = g.coin(10) ? Scalar(0) : g.nonzero();
    }
    for (int j = 2; j <= n - 1; ++j)
      if (g.coin()) v0[spec.gen(qs, j)] = g.small(2);
    for (int j = 2; j <= n - 2; ++j)
      if (g.coin()) v1[spec.gen(qs, j)] = g.small(2);
    for (int p = 1; p <= m; ++p)
      if (g.coin(3)) v1[spec.gen(p, n - 1)] = g.small(2);
    for (int t = 1; t <= spec.r; ++t) {
      if (g.coin()) v0[spec.top(t)] = g.small(2);
      if (g.coin()) v1[spec.top(t)] = g.small(2);
    }
    c.e0.push_back(std::move(v0));
    c.e1.push_back(std::move(v1));
  }
  if (!repair) return c;

  // Odd levels of e_{s,1} images solve the quadratic relations; cross terms
  // at level n-1 cancel pairwise.
  for (int s = 1; s <= m; ++s) {
    const int qs = q[idx(s)];
    Vector& b = c.e1[idx(s)];
    for (int p = 3; p <= n - 2; p += 2) {
      Scalar sum;
      for (int j = 2; j <= p - 1; ++j) {
        const Scalar term = b[spec.gen(qs, j)] * b[spec.gen(qs, p + 1 - j)];
        if (j % 2 == 0) sum += term; else sum -= term;
      }
      b[spec.gen(qs, p)] = sum / (Scalar(2) * b[spec.gen(qs, 1)]);
    }
  }
  for (int s = 1; s <= m; ++s) {
    for (int p = s + 1; p <= m; ++p) {
      const int qs = q[idx(s)];
      const int qp = q[idx(p)];
      const auto mu = ratio(spec.top_coords(qs), spec.top_coords(qp));  // top(qp) = mu top(qs)
      Scalar& z_pqs = c.e1[idx(p)][spec.gen(qs, n - 1)];
      Scalar& z_sqp = c.e1[idx(s)][spec.gen(qp, n - 1)];
      if (mu) {
        const Scalar ys = c.e1[idx(s)][spec.gen(qs, 1)];
        const Scalar yp = c.e1[idx(p)][spec.gen(qp, 1)];
        z_pqs = z_sqp * yp * *mu / ys;
      } else {
        z_pqs = 0;
        z_sqp = 0;
      }
    }
  }
  return c;
}

std::optional<GeneratorImages> der_mutant(Gen& g, const QuasiQnSpec& spec,
                                          const GeneratorImages& base, DerCondition c) {
  const int n = spec.n;
  const int m = spec.m;
  GeneratorImages gi = base;
  const int s = g.integer(1, m);
  int p = g.integer(1, m);
  switch (c) {
    case DerCondition::Shape22:
      if (m == 1 || g.coin()) {
        gi.e0[idx(s)][spec.gen(s, 1)] += g.nonzero();
      } else {
        while (p == s) p = g.integer(1, m);
        gi.e0[idx(s)][spec.gen(p, g.integer(0, n - 1))] += g.nonzero();
      }
      return gi;
    case DerCondition::Shape23:
      if (m == 1 || g.coin()) {
        gi.e1[idx(s)][spec.gen(s, 0)] += g.nonzero();
      } else {
        while (p == s) p = g.integer(1, m);
        gi.e1[idx(s)][spec.gen(p, g.integer(0, n - 2))] += g.nonzero();
      }
      return gi;
    case DerCondition::OddVanish24: {
      const int i = 2 * g.integer(1, (n - 3) / 2) + 1;
      gi.e1[idx(s)][spec.gen(s, i)] += g.nonzero();
      return gi;
    }
    case DerCondition::Eigen21: {
      if (m <= spec.r) return std::nullopt;
      const int t = g.integer(spec.r + 1, m);
      gi.e0[idx(t)][spec.gen(t, 0)] += g.nonzero();
      return gi;
    }
    case DerCondition::Cross25:
      if (m == 1) return std::nullopt;
      while (p == s) p = g.integer(1, m);
      gi.e1[idx(s)][spec.gen(p, n - 1)] += g.nonzero();
      return gi;
  }
  return std::nullopt;
}

std::optional<AutCandidate> aut_mutant(Gen& g, const QuasiQnSpec& spec, const AutCandidate& base,
                                       const std::vector<int>& q, int condition) {
  const int n = spec.n;
  const int m = spec.m;
  AutCandidate c = base;
  const int s = g.integer(1, m);
  const int qs = q[idx(s)];
  switch (condition) {
    case 1:
      c.e0[idx(s)][spec.gen(qs, 1)] += g.nonzero();
      return c;
    case 2: {
      if (m == 1) return std::nullopt;
      int p = g.integer(1, m);
      while (p == s) p = g.integer(1, m);
      c.e0[idx(p)] = c.e0[idx(s)];
      c.e1[idx(p)] = c.e1[idx(s)];
      return c;
    }
    case 3:
      if (m == 1 || g.coin()) {
        c.e0[idx(s)][spec.gen(qs, 0)] = 0;
        return c;
      } else {
        // A cross coefficient alone breaks the pairing identity when the
        // partner coefficient is left untouched.
        int p = g.integer(1, m);
        while (p == s) p = g.integer(1, m);
        c.e1[idx(s)][spec.gen(q[idx(p)], n - 1)] += g.nonzero();
        return c;
      }
    case 4: {
      const int i = 2 * g.integer(1, (n - 3) / 2) + 1;
      c.e1[idx(s)][spec.gen(qs, i)] += g.nonzero();
      return c;
    }
    case 5: {
      if (m <= spec.r) return std::nullopt;
      const int t = g.integer(spec.r + 1, m);
      for (auto& x : c.e1[idx(t)]) x *= Scalar(2);
      return c;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace qfla::testing
