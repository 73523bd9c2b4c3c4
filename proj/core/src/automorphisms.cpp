#include "qfla/automorphisms.hpp"

#include <algorithm>
#include <stdexcept>

#include "qfla/error.hpp"

namespace qfla {

namespace {

std::size_t idx(int s) { return static_cast<std::size_t>(s - 1); }

std::string gen_name(int s, int j) {
  return "e_{" + std::to_string(s) + "," + std::to_string(j) + "}";
}

void check_shape(const QuasiQnSpec& spec, const AutCandidate& c) {
  const auto copies = static_cast<std::size_t>(spec.m);
  if (c.e0.size() != copies || c.e1.size() != copies) {
    throw DimensionMismatch("candidate must give images for all " + std::to_string(spec.m) +
                            " copies");
  }
  for (std::size_t s = 0; s < copies; ++s) {
    if (c.e0[s].size() != spec.dim() || c.e1[s].size() != spec.dim()) {
      throw DimensionMismatch("candidate image for copy " + std::to_string(s + 1) +
                              " must have length " + std::to_string(spec.dim()));
    }
  }
}

// Supports allowed by condition (1) for target copy qs: rho e_{s,0} on
// e_{qs,0}, e_{qs,2..n-1} and tops; rho e_{s,1} on e_{qs,1..n-2}, any
// e_{i,n-1} and tops.
bool shape_fits(const QuasiQnSpec& spec, const AutCandidate& c, int s, int qs) {
  const int n = spec.n;
  for (int i = 1; i <= spec.m; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool own = i == qs;
      if (!c.e0[idx(s)][spec.gen(i, j)].is_zero() && !(own && j != 1)) return false;
      const bool ok1 = j == n - 1 || (own && j >= 1 && j <= n - 2);
      if (!c.e1[idx(s)][spec.gen(i, j)].is_zero() && !ok1) return false;
    }
  }
  return true;
}

Matrix diag(const std::vector<Scalar>& v, std::size_t first, std::size_t count) {
  Matrix out(count, count);
  for (std::size_t i = 0; i < count; ++i) out(i, i) = v[first + i];
  return out;
}

}  // namespace

AutCandidate AutCandidate::identity(const QuasiQnSpec& spec) {
  AutCandidate c;
  for (int s = 1; s <= spec.m; ++s) {
    c.e0.push_back(unit_vector(spec.dim(), spec.gen(s, 0)));
    c.e1.push_back(unit_vector(spec.dim(), spec.gen(s, 1)));
  }
  return c;
}

AutCandidate AutCandidate::of_map(const QuasiQnSpec& spec, const Matrix& map) {
  AutCandidate c;
  for (int s = 1; s <= spec.m; ++s) {
    c.e0.push_back(map.column(spec.gen(s, 0)));
    c.e1.push_back(map.column(spec.gen(s, 1)));
  }
  return c;
}

Vector automorphism_closed_form(const QuasiQn& target, const AutCandidate& c, int s, int t) {
  const auto& spec = target.spec;
  const int n = spec.n;
  const Vector& b0 = c.e0[idx(s)];
  const Vector& b1 = c.e1[idx(s)];
  const auto x = [&](int i, int j) -> const Scalar& { return b0[spec.gen(i, j)]; };
  const auto y = [&](int i, int j) -> const Scalar& { return b1[spec.gen(i, j)]; };
  const auto sign = [](int j) { return j % 2 == 0 ? Scalar(1) : Scalar(-1); };

  Vector v(spec.dim());
  for (int i = 1; i <= spec.m; ++i) {
    const Scalar& a = x(i, 0);
    Scalar top;
    if (t == n) {
      top = y(i, 1) * a.pow(n - 3) * (a * y(i, 1) - x(i, 1) * y(i, 0));
    } else {
      const Scalar lead = a.pow(t - 2);
      for (int j = 1; j <= n - t; ++j) {
        v[spec.gen(i, j + t - 1)] += lead * (a * y(i, j) - x(i, j) * y(i, 0));
      }
      if (t == 2) {
        for (int j = 1; j <= n - 1; ++j) top += sign(j) * x(i, j) * y(i, n - j);
      } else {
        const Scalar tail = a.pow(t - 3);
        for (int j = 1; j <= n - t + 1; ++j) {
          const int u = n - j - t + 2;
          top += sign(j) * x(i, j) * tail * (a * y(i, u) - x(i, u) * y(i, 0));
        }
      }
    }
    if (!top.is_zero()) axpy(v, top, spec.top_vector(i));
  }
  return v;
}

Matrix extend_automorphism_candidate(const QuasiQn& source, const QuasiQn& target,
                                     const AutCandidate& c) {
  const auto& spec = source.spec;
  if (target.spec.n != spec.n || target.spec.m != spec.m || target.spec.r != spec.r) {
    throw DimensionMismatch("source and target must share n, m and r");
  }
  check_shape(spec, c);
  const auto& l = target.algebra;
  const std::size_t d = spec.dim();
  Matrix map(d, d);
  for (int s = 1; s <= spec.m; ++s) {
    map.set_column(spec.gen(s, 0), c.e0[idx(s)]);
    map.set_column(spec.gen(s, 1), c.e1[idx(s)]);
    Vector prev = c.e1[idx(s)];
    for (int t = 2; t <= spec.n - 1; ++t) {
      prev = l.bracket(c.e0[idx(s)], prev);
      map.set_column(spec.gen(s, t), prev);
    }
    if (s <= spec.r) map.set_column(spec.top(s), Scalar(-1) * l.bracket(c.e1[idx(s)], prev));
  }
  for (int s = 1; s <= spec.m; ++s) {
    for (int t = 2; t <= spec.n; ++t) {
      if (t == spec.n && s > spec.r) break;
      const std::size_t col = t == spec.n ? spec.top(s) : spec.gen(s, t);
      if (map.column(col) != automorphism_closed_form(target, c, s, t)) {
        throw std::logic_error("closed form disagrees with recurrence at " + gen_name(s, t));
      }
    }
  }
  return map;
}

Matrix extend_automorphism_candidate(const QuasiQn& q, const AutCandidate& c) {
  return extend_automorphism_candidate(q, q, c);
}

AutVerdict theorem41_conditions(const QuasiQn& q, const AutCandidate& c) {
  const auto& spec = q.spec;
  check_shape(spec, c);
  const int n = spec.n;
  const int m = spec.m;
  const int r = spec.r;
  const auto fail = [](int cond, int s, int p, int index, std::string detail) {
    AutVerdict v;
    v.pass = false;
    v.failed = cond;
    v.s = s;
    v.p = p;
    v.index = index;
    v.detail = std::move(detail);
    return v;
  };

  AutAnalysis an;
  for (int s = 1; s <= m; ++s) {
    std::vector<int> fits;
    for (int qs = 1; qs <= m; ++qs)
      if (shape_fits(spec, c, s, qs)) fits.push_back(qs);
    if (fits.size() != 1) {
      return fail(1, s, fits.empty() ? 0 : fits[1], 0,
                  fits.empty() ? "images of copy " + std::to_string(s) + " fit no target copy"
                               : "images of copy " + std::to_string(s) +
                                     " fit more than one target copy");
    }
    an.q.push_back(fits.front());
  }

  for (int s = 1; s <= m; ++s) {
    for (int p = s + 1; p <= m; ++p) {
      if (an.q[idx(s)] == an.q[idx(p)]) {
        return fail(2, s, p, an.q[idx(s)],
                    "copies " + std::to_string(s) + " and " + std::to_string(p) +
                        " both map to copy " + std::to_string(an.q[idx(s)]));
      }
    }
  }
  const auto mm = static_cast<std::size_t>(m);
  const auto rr = static_cast<std::size_t>(r);
  an.t = Matrix(mm, mm);
  for (int s = 1; s <= m; ++s) an.t(idx(an.q[idx(s)]), idx(s)) = 1;
  for (int s = 1; s <= m; ++s) {
    const int qs = an.q[idx(s)];
    an.k.push_back(c.e0[idx(s)][spec.gen(qs, 0)].pow(n - 2) *
                   c.e1[idx(s)][spec.gen(qs, 1)].pow(2));
  }
  an.k1 = diag(an.k, 0, rr);
  an.k2 = diag(an.k, rr, mm - rr);

  const auto with_analysis = [&](AutVerdict v) {
    v.analysis = an;
    return v;
  };

  for (int s = 1; s <= m; ++s) {
    const int qs = an.q[idx(s)];
    if ((c.e0[idx(s)][spec.gen(qs, 0)] * c.e1[idx(s)][spec.gen(qs, 1)]).is_zero()) {
      return with_analysis(fail(3, s, s, 0,
                                "leading coefficients of " + gen_name(s, 0) + " or " +
                                    gen_name(s, 1) + " vanish on copy " + std::to_string(qs)));
    }
  }
  for (int s = 1; s <= m; ++s) {
    for (int p = 1; p <= m; ++p) {
      if (s == p) continue;
      const int qs = an.q[idx(s)];
      const int qp = an.q[idx(p)];
      Vector lhs = c.e1[idx(s)][spec.gen(qs, 1)] * c.e1[idx(p)][spec.gen(qs, n - 1)] *
                   spec.top_coords(qs);
      const Vector rhs = c.e1[idx(s)][spec.gen(qp, n - 1)] * c.e1[idx(p)][spec.gen(qp, 1)] *
                         spec.top_coords(qp);
      if (lhs != rhs) {
        return with_analysis(fail(3, s, p, n - 1,
                                  "level n-1 cross terms of copies " + std::to_string(s) +
                                      " and " + std::to_string(p) + " do not cancel"));
      }
    }
  }

  for (int s = 1; s <= m; ++s) {
    const int qs = an.q[idx(s)];
    const auto b = [&](int j) -> const Scalar& { return c.e1[idx(s)][spec.gen(qs, j)]; };
    for (int p = 3; p <= n - 2; p += 2) {
      Scalar sum;
      for (int j = 1; j <= p; ++j) {
        const Scalar term = b(j) * b(p - j + 1);
        if (j % 2 == 0) sum += term; else sum -= term;
      }
      if (!sum.is_zero()) {
        return with_analysis(fail(4, s, s, p,
                                  "quadratic relation p=" + std::to_string(p) + " fails for " +
                                      gen_name(s, 1) + ": sum is " + sum.str()));
      }
    }
  }

  if (m > r) {
    const Matrix ib = spec.top_matrix();
    const Matrix t1 = an.t.column_block(0, rr);
    const Matrix t2 = an.t.column_block(rr, mm - rr);
    const Matrix lhs = ib * t2 * an.k2;
    const Matrix rhs = ib * t1 * an.k1 * spec.B;
    for (std::size_t col = 0; col < mm - rr; ++col) {
      if (lhs.column(col) != rhs.column(col)) {
        const int s = r + static_cast<int>(col) + 1;
        return with_analysis(fail(5, s, an.q[idx(s)], 0,
                                  "scaling k_" + std::to_string(s) + " = " +
                                      an.k[idx(s)].str() +
                                      " is incompatible with the top relations"));
      }
    }
  }

  AutVerdict ok;
  ok.analysis = std::move(an);
  return ok;
}

bool is_isomorphism(const LieAlgebra& from, const LieAlgebra& to, const Matrix& map) {
  const std::size_t d = from.dim();
  if (to.dim() != d || map.rows() != d || map.cols() != d) {
    throw DimensionMismatch("map shape must be dim x dim for algebras of equal dimension");
  }
  if (rank(map) != d) return false;
  const auto images = map.columns();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (map * from.basis_bracket(i, j) != to.bracket(images[i], images[j])) return false;
    }
  }
  return true;
}

bool is_automorphism(const LieAlgebra& l, const Matrix& map) { return is_isomorphism(l, l, map); }

AutCandidate make_scaling_automorphism(const QuasiQnSpec& spec, const std::vector<Scalar>& a,
                                       const std::vector<Scalar>& b,
                                       const std::vector<std::size_t>& perm) {
  const auto mm = static_cast<std::size_t>(spec.m);
  if (a.size() != mm || b.size() != mm || perm.size() != mm) {
    throw DimensionMismatch("scaling data must have one entry per copy");
  }
  std::vector<bool> seen(mm, false);
  for (std::size_t p : perm) {
    if (p >= mm || seen[p]) throw DimensionMismatch("perm is not a permutation of the copies");
    seen[p] = true;
  }
  AutCandidate c;
  for (std::size_t s = 0; s < mm; ++s) {
    if (a[s].is_zero() || b[s].is_zero()) {
      throw ZeroScale("scaling for copy " + std::to_string(s + 1) + " is zero");
    }
    const int target = static_cast<int>(perm[s]) + 1;
    c.e0.push_back(a[s] * unit_vector(spec.dim(), spec.gen(target, 0)));
    c.e1.push_back(b[s] * unit_vector(spec.dim(), spec.gen(target, 1)));
  }
  return c;
}

Matrix inner_automorphism(const LieAlgebra& l, const Vector& x) {
  const Matrix ad = l.ad(x);
  const std::size_t d = l.dim();
  Matrix sum = Matrix::identity(d);
  Matrix term = Matrix::identity(d);
  for (std::size_t k = 1; k <= d; ++k) {
    term = term * ad * Scalar(1, static_cast<long>(k));
    if (term.is_zero()) return sum;
    sum += term;
  }
  throw NotNilpotent("ad x is not nilpotent");
}

}  // namespace qfla
