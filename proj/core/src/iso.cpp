#include "qfla/iso.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qfla/automorphisms.hpp"
#include "qfla/error.hpp"

namespace qfla {

namespace {

constexpr std::size_t kDefaultMaxM = 8;

std::size_t factorial(std::size_t m) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= i;
  return f;
}

// Permutation with the given lexicographic rank.
std::vector<std::size_t> nth_permutation(std::size_t m, std::size_t rank) {
  std::vector<std::size_t> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::size_t> out;
  for (std::size_t left = m; left > 0; --left) {
    const std::size_t f = factorial(left - 1);
    out.push_back(pool[rank / f]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(rank / f));
    rank %= f;
  }
  return out;
}

// Scaling d with densify(perm, d) ker(M2) inside ker(M1) and no zero entry.
std::optional<Vector> admissible_scaling(const Matrix& m1, const std::vector<Vector>& kernel2,
                                         const std::vector<std::size_t>& perm) {
  const std::size_t m = perm.size();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < m1.rows(); ++i) {
    for (const auto& v : kernel2) {
      Vector row(m);
      for (std::size_t j = 0; j < m; ++j) row[j] = m1(i, perm[j]) * v[j];
      if (!is_zero(row)) rows.push_back(std::move(row));
    }
  }
  const Vector ones(m, Scalar(1));
  if (rows.empty()) return ones;
  const Matrix system = Matrix::from_rows(rows, m);
  const std::vector<Vector> basis = nullspace(system);
  for (std::size_t j = 0; j < m; ++j) {
    const bool free = std::any_of(basis.begin(), basis.end(),
                                  [&](const Vector& v) { return !v[j].is_zero(); });
    if (!free) return std::nullopt;
  }
  if (is_zero(system * ones)) return ones;
  // Each d_j = 0 cuts out a proper subspace, so some t avoids all of them.
  for (long t = 1;; ++t) {
    Vector d(m);
    Scalar weight(1);
    for (const auto& v : basis) {
      axpy(d, weight, v);
      weight *= Scalar(t);
    }
    if (std::none_of(d.begin(), d.end(), [](const Scalar& x) { return x.is_zero(); })) return d;
  }
}

EquivalenceWitness make_witness(const RelatedMatrix& m1, const RelatedMatrix& m2,
                                std::vector<std::size_t> perm, Vector d, std::size_t rank) {
  MonomialMatrix k{std::move(perm), std::move(d)};
  const Matrix m1k = m1.matrix * k.densify();
  const std::size_t rows = m1.m - m1.r;
  Matrix e = Matrix::identity(rows);
  if (rows > 0) {
    const auto inv = inverse(m1k.column_block(m1.r, rows));
    if (!inv) throw std::logic_error("identity block of M1 K is singular");
    e = *inv;
  }
  if (e * m1k != m2.matrix) throw std::logic_error("equivalence witness fails E M1 K = M2");
  return {std::move(e), std::move(k), std::nullopt, rank};
}

}  // namespace

Matrix kernel_subspace(const RelatedMatrix& related) {
  if (related.matrix.rows() == 0) return Matrix::identity(related.m);
  const auto basis = nullspace(related.matrix);
  return canonical_span(Matrix::from_columns(basis, related.m));
}

std::size_t max_search_m() {
  const char* env = std::getenv("QFLA_MAX_M");
  if (env == nullptr || *env == '\0') return kDefaultMaxM;
  std::size_t value = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("QFLA_MAX_M must be a non-negative integer, got '" + std::string(env) + "'");
  }
  return value;
}

std::variant<EquivalenceWitness, NotEquivalent> monomial_equivalence(const RelatedMatrix& m1,
                                                                     const RelatedMatrix& m2,
                                                                     unsigned jobs) {
  if (m1.m != m2.m || m1.r != m2.r || m1.matrix.rows() != m2.matrix.rows() ||
      m1.matrix.cols() != m2.matrix.cols()) {
    throw DimensionMismatch("related matrices must share m and r");
  }
  const std::size_t m = m1.m;
  const std::size_t cap = max_search_m();
  if (m > cap) {
    throw SearchLimitExceeded("m = " + std::to_string(m) + " exceeds the search cap " +
                              std::to_string(cap) + " (set QFLA_MAX_M to raise it)");
  }
  const std::vector<Vector> kernel2 = kernel_subspace(m2).columns();
  const std::size_t total = factorial(m);

  if (jobs <= 1) {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t rank = 0;
    do {
      if (auto d = admissible_scaling(m1.matrix, kernel2, perm)) {
        return make_witness(m1, m2, perm, std::move(*d), rank);
      }
      ++rank;
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::mutex mu;
    Vector best_d;
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t rank = w; rank < total && rank < best.load(); rank += jobs) {
          const auto perm = nth_permutation(m, rank);
          if (auto d = admissible_scaling(m1.matrix, kernel2, perm)) {
            std::lock_guard lock(mu);
            if (rank < best.load()) {
              best = rank;
              best_d = std::move(*d);
            }
            return;
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    if (best.load() < total) {
      return make_witness(m1, m2, nth_permutation(m, best.load()), best_d, best.load());
    }
  }
  return NotEquivalent{"no permutation of the " + std::to_string(m) +
                           " copies admits an all-nonzero scaling",
                       total};
}

IsoVerdict iso_decide(const QuasiQnSpec& s1, const QuasiQnSpec& s2, unsigned jobs,
                      bool build_map) {
  s1.validate();
  s2.validate();
  if (s1.n != s2.n || s1.m != s2.m || s1.r != s2.r) {
    return {false, std::nullopt, "(n, m, r) differ"};
  }
  auto result = monomial_equivalence(related_matrix_of(s1), related_matrix_of(s2), jobs);
  if (auto* ne = std::get_if<NotEquivalent>(&result)) return {false, std::nullopt, ne->reason};
  auto w = std::get<EquivalenceWitness>(std::move(result));
  if (build_map) {
    auto built = build_algebra_witness(s1, s2, w);
    if (auto* map = std::get_if<Matrix>(&built)) w.map = std::move(*map);
  }
  return {true, std::move(w), "related matrices are monomially equivalent"};
}

std::pair<Scalar, Scalar> rational_scaling(const Scalar& k, int n) {
  if (n < 3 || n % 2 == 0) throw BadN("rational_scaling needs odd n >= 3");
  if (k.is_zero()) throw ZeroScale("scaling k must be nonzero");
  Scalar root;
  if (exact_root(k, static_cast<unsigned long>(n - 2), root)) return {root, Scalar(1)};
  // alpha = k, beta = k^{-(n-3)/2}: alpha^(n-2) beta^2 = k^(n-2) k^-(n-3) = k.
  return {k, k.pow(-(n - 3) / 2)};
}

std::variant<Matrix, NeedsIrrationalScalars> build_algebra_witness(const QuasiQnSpec& s1,
                                                                   const QuasiQnSpec& s2,
                                                                   const EquivalenceWitness& w) {
  const QuasiQn source(s1);
  const QuasiQn target(s2);
  const std::size_t m = static_cast<std::size_t>(s1.m);
  if (w.k.size() != m) throw DimensionMismatch("witness size differs from m");
  // K(perm[j], j) = d_j sends copy perm[j] of the source onto copy j.
  std::vector<std::size_t> sigma(m);
  for (std::size_t j = 0; j < m; ++j) sigma[w.k.perm[j]] = j;
  AutCandidate c;
  for (std::size_t s = 0; s < m; ++s) {
    const Scalar& k = w.k.scale[sigma[s]];
    const auto [alpha, beta] = rational_scaling(k, s1.n);
    const int to = static_cast<int>(sigma[s]) + 1;
    c.e0.push_back(alpha * unit_vector(s2.dim(), s2.gen(to, 0)));
    c.e1.push_back(beta * unit_vector(s2.dim(), s2.gen(to, 1)));
  }
  Matrix map = extend_automorphism_candidate(source, target, c);
  if (!is_isomorphism(source.algebra, target.algebra, map)) {
    throw std::logic_error("constructed witness is not an isomorphism");
  }
  return map;
}

}  // namespace qfla
