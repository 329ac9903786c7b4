#include "bellkit/local_bounds.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bellkit/errors.hpp"

namespace bell {

namespace {

using boost::multiprecision::cpp_int;

// Clears all coefficient denominators at once: returns the integer matrix
// (Alice rows) and the common scale L, so that coeff = int_entry / L.
struct ScaledMatrix {
  int m_a, m_b;
  std::int64_t scale;
  std::vector<std::int64_t> entries;  // row-major, Alice rows

  std::int64_t at(int x, int y) const { return entries[static_cast<std::size_t>(x) * m_b + y]; }
};

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  const __int128 l = static_cast<__int128>(a) / std::gcd(a, b) * b;
  if (l > INT64_MAX) throw std::overflow_error("coefficient denominators too large");
  return static_cast<std::int64_t>(l);
}

ScaledMatrix scale_correlation(const CorrelationInequality& ineq) {
  std::int64_t scale = 1;
  for (int x = 0; x < ineq.m_a(); ++x)
    for (int y = 0; y < ineq.m_b(); ++y) scale = lcm_checked(scale, ineq.coeff(x, y).den());
  ScaledMatrix m{ineq.m_a(), ineq.m_b(), scale, {}};
  m.entries.reserve(static_cast<std::size_t>(ineq.m_a()) * ineq.m_b());
  for (int x = 0; x < ineq.m_a(); ++x)
    for (int y = 0; y < ineq.m_b(); ++y) {
      const Rational& c = ineq.coeff(x, y);
      m.entries.push_back(c.num() * (scale / c.den()));
    }
  return m;
}

struct ScaledTensor {
  int n_a, n_b, k_a, k_b;
  std::int64_t scale;
  std::vector<std::int64_t> entries;  // indexed as ProbabilityInequality

  std::int64_t at(int a, int b, int x, int y) const {
    return entries[((static_cast<std::size_t>(a) * k_b + b) * n_a + x) * n_b + y];
  }
};

ScaledTensor scale_probability(const ProbabilityInequality& ineq) {
  std::int64_t scale = 1;
  for (int a = 0; a < ineq.k_a(); ++a)
    for (int b = 0; b < ineq.k_b(); ++b)
      for (int x = 0; x < ineq.n_a(); ++x)
        for (int y = 0; y < ineq.n_b(); ++y)
          scale = lcm_checked(scale, ineq.coeff(a, b, x, y).den());
  ScaledTensor t{ineq.n_a(), ineq.n_b(), ineq.k_a(), ineq.k_b(), scale, {}};
  t.entries.reserve(static_cast<std::size_t>(ineq.k_a()) * ineq.k_b() * ineq.n_a() * ineq.n_b());
  for (int a = 0; a < ineq.k_a(); ++a)
    for (int b = 0; b < ineq.k_b(); ++b)
      for (int x = 0; x < ineq.n_a(); ++x)
        for (int y = 0; y < ineq.n_b(); ++y) {
          const Rational& c = ineq.coeff(a, b, x, y);
          t.entries.push_back(c.num() * (scale / c.den()));
        }
  return t;
}

// Exact integer row space in reduced form: every stored row is zero at the
// other rows' pivot columns, so membership testing is a single elimination
// pass. Entries stay small through content division.
class IntEchelon {
 public:
  explicit IntEchelon(int cols) : cols_(cols) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  bool add(std::vector<cpp_int> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const int pc = pivots_[i];
      if (v[pc] == 0) continue;
      const cpp_int lead = rows_[i][pc];
      const cpp_int factor = v[pc];
      for (int c = 0; c < cols_; ++c) v[c] = lead * v[c] - factor * rows_[i][c];
      divide_by_content(v);
    }
    int pc = -1;
    for (int c = 0; c < cols_; ++c) {
      if (v[c] != 0) {
        pc = c;
        break;
      }
    }
    if (pc < 0) return false;
    if (v[pc] < 0)
      for (cpp_int& e : v) e = -e;
    // Keep the reduced invariant: clear the new pivot column everywhere else.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i][pc] == 0) continue;
      const cpp_int lead = v[pc];
      const cpp_int factor = rows_[i][pc];
      for (int c = 0; c < cols_; ++c) rows_[i][c] = lead * rows_[i][c] - factor * v[c];
      divide_by_content(rows_[i]);
    }
    pivots_.push_back(pc);
    rows_.push_back(std::move(v));
    return true;
  }

 private:
  static void divide_by_content(std::vector<cpp_int>& v) {
    cpp_int g = 0;
    for (const cpp_int& e : v) {
      g = boost::multiprecision::gcd(g, e);
      if (g == 1) return;
    }
    if (g > 1)
      for (cpp_int& e : v) e /= g;
  }

  int cols_;
  std::vector<std::vector<cpp_int>> rows_;
  std::vector<int> pivots_;
};

// Streams vertices and tracks the affine rank of everything seen so far,
// relative to the first vertex fed in.
class AffineRank {
 public:
  explicit AffineRank(int dim) : dim_(dim), echelon_(dim) {}

  void feed(const std::vector<int>& v) {
    ++count_;
    if (base_.empty()) {
      base_ = v;
      return;
    }
    if (echelon_.rank() >= dim_) return;  // cannot grow further
    std::vector<cpp_int> diff(dim_);
    for (int c = 0; c < dim_; ++c) diff[c] = v[c] - base_[c];
    echelon_.add(std::move(diff));
  }

  bool saturated() const { return !base_.empty() && echelon_.rank() >= dim_; }
  int rank() const { return echelon_.rank(); }
  long long count() const { return count_; }

 private:
  int dim_;
  long long count_ = 0;
  std::vector<int> base_;
  IntEchelon echelon_;
};

}  // namespace

Rational local_bound_correlation(const CorrelationInequality& ineq) {
  const ScaledMatrix m = scale_correlation(ineq);
  // Enumerate over the smaller side; the bound is symmetric in the parties.
  const bool enumerate_bob = ineq.m_b() <= ineq.m_a();
  const int rows = enumerate_bob ? m.m_a : m.m_b;
  const int cols = enumerate_bob ? m.m_b : m.m_a;
  if (cols > 30) {
    throw LimitError(
        "local_bound_correlation: " + std::to_string(cols) +
        " inputs exceed the enumeration cap of 30; use the family's closed-form bound instead");
  }
  std::vector<std::int64_t> w(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      w[static_cast<std::size_t>(r) * cols + c] = enumerate_bob ? m.at(r, c) : m.at(c, r);

  // Rows of w whose entry in a given column is nonzero; Gray-code flips only
  // touch these.
  std::vector<std::vector<int>> rows_of_col(cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r)
      if (w[static_cast<std::size_t>(r) * cols + c] != 0) rows_of_col[c].push_back(r);

  // Start from the all +1 assignment; s[r] is the running row sum.
  std::vector<std::int64_t> s(rows, 0);
  std::int64_t total = 0;
  for (int r = 0; r < rows; ++r) {
    std::int64_t acc = 0;
    for (int c = 0; c < cols; ++c) acc += w[static_cast<std::size_t>(r) * cols + c];
    s[r] = acc;
    total += std::abs(acc);
  }
  std::int64_t best = total;

  // b -> -b leaves sum_r |s_r| unchanged, so the first column stays at +1 and
  // only 2^(cols-1) assignments are visited.
  std::vector<int> assignment(cols, +1);
  const std::uint64_t steps = cols == 1 ? 0 : (1ULL << (cols - 1)) - 1;
  for (std::uint64_t i = 1; i <= steps; ++i) {
    const int flip = std::countr_zero(i) + 1;
    const std::int64_t delta = -2LL * assignment[flip];
    assignment[flip] = -assignment[flip];
    for (int r : rows_of_col[flip]) {
      total -= std::abs(s[r]);
      s[r] += delta * w[static_cast<std::size_t>(r) * cols + flip];
      total += std::abs(s[r]);
    }
    if (total > best) best = total;
  }
  return Rational(best, m.scale);
}

Rational local_bound_probability(const ProbabilityInequality& ineq) {
  const ScaledTensor t = scale_probability(ineq);
  double strategies = 1.0;
  for (int x = 0; x < t.n_a; ++x) strategies *= t.k_a;
  if (strategies > 1e7) {
    throw LimitError("local_bound_probability: more than 10^7 Alice strategies");
  }

  std::vector<int> alice(t.n_a, 0);
  std::int64_t best = INT64_MIN;
  while (true) {
    // Bob's inputs are independent once Alice's strategy is fixed.
    std::int64_t value = 0;
    for (int y = 0; y < t.n_b; ++y) {
      std::int64_t best_b = INT64_MIN;
      for (int b = 0; b < t.k_b; ++b) {
        std::int64_t acc = 0;
        for (int x = 0; x < t.n_a; ++x) acc += t.at(alice[x], b, x, y);
        best_b = std::max(best_b, acc);
      }
      value += best_b;
    }
    best = std::max(best, value);

    int pos = 0;
    while (pos < t.n_a && ++alice[pos] == t.k_a) alice[pos++] = 0;
    if (pos == t.n_a) break;
  }
  return Rational(best, t.scale);
}

namespace {

FacetReport facet_check_binary(const CorrelationInequality& ineq, PolytopeSpace space) {
  if (!ineq.bound()) {
    throw std::invalid_argument("facet_check: bound must be computed first");
  }
  const int m_a = ineq.m_a(), m_b = ineq.m_b();
  if (m_a + m_b > 26) {
    throw LimitError("facet_check: 2^" + std::to_string(m_a + m_b) +
                     " vertices exceed the 2^26 cap");
  }
  const ScaledMatrix m = scale_correlation(ineq);
  const Rational& bound = *ineq.bound();

  const int dim = space == PolytopeSpace::full ? m_a * m_b + m_a + m_b : m_a * m_b;
  AffineRank polytope(dim);
  AffineRank saturating(dim);
  long long saturating_count = 0;

  // In the correlation space (a, b) and (-a, -b) embed identically; fixing
  // a_0 = +1 enumerates each point exactly once.
  const int free_alice_bits = space == PolytopeSpace::correlation ? m_a - 1 : m_a;
  const std::uint64_t alice_masks = 1ULL << free_alice_bits;
  const std::uint64_t bob_masks = 1ULL << m_b;

  std::vector<int> a_sign(m_a), b_sign(m_b), embedding(dim);
  std::vector<std::int64_t> row_sum(m_a);

  const auto embed = [&]() {
    int pos = 0;
    if (space == PolytopeSpace::full) {
      for (int x = 0; x < m_a; ++x) embedding[pos++] = a_sign[x];
      for (int y = 0; y < m_b; ++y) embedding[pos++] = b_sign[y];
    }
    for (int x = 0; x < m_a; ++x)
      for (int y = 0; y < m_b; ++y) embedding[pos++] = a_sign[x] * b_sign[y];
  };

  for (std::uint64_t bm = 0; bm < bob_masks; ++bm) {
    for (int y = 0; y < m_b; ++y) b_sign[y] = (bm >> y) & 1 ? -1 : +1;
    for (int x = 0; x < m_a; ++x) {
      std::int64_t acc = 0;
      for (int y = 0; y < m_b; ++y) acc += m.at(x, y) * b_sign[y];
      row_sum[x] = acc;
    }
    for (std::uint64_t am = 0; am < alice_masks; ++am) {
      const std::uint64_t bits = space == PolytopeSpace::correlation ? am << 1 : am;
      std::int64_t value = 0;
      for (int x = 0; x < m_a; ++x) {
        a_sign[x] = (bits >> x) & 1 ? -1 : +1;
        value += a_sign[x] * row_sum[x];
      }
      const bool feed_polytope = !polytope.saturated();
      const bool saturates = static_cast<__int128>(value) * bound.den() ==
                             static_cast<__int128>(bound.num()) * m.scale;
      if (saturates) ++saturating_count;
      if (feed_polytope || saturates) {
        embed();
        if (feed_polytope) polytope.feed(embedding);
        if (saturates) saturating.feed(embedding);
      }
    }
  }

  FacetReport report;
  report.space = space;
  report.polytope_dim = polytope.rank();
  report.saturating_vertex_count = saturating_count;
  report.affine_rank = saturating.rank();
  report.is_facet = report.affine_rank == report.polytope_dim - 1;
  return report;
}

}  // namespace

FacetReport facet_check(const CorrelationInequality& ineq, PolytopeSpace space) {
  return facet_check_binary(ineq, space);
}

FacetReport facet_check(const ProbabilityInequality& ineq) {
  if (!ineq.bound()) {
    throw std::invalid_argument("facet_check: bound must be computed first");
  }
  const ScaledTensor t = scale_probability(ineq);
  double vertex_count = 1.0;
  for (int x = 0; x < t.n_a; ++x) vertex_count *= t.k_a;
  for (int y = 0; y < t.n_b; ++y) vertex_count *= t.k_b;
  if (vertex_count > static_cast<double>(1ULL << 26)) {
    throw LimitError("facet_check: vertex count exceeds the 2^26 cap");
  }
  const Rational& bound = *ineq.bound();

  // Free parametrization of the no-signaling behavior space: marginals
  // p(a|x) for a < k_a - 1, p(b|y) for b < k_b - 1, and joints over the
  // truncated outcome ranges. The local polytope is full-dimensional here.
  const int da = t.n_a * (t.k_a - 1);
  const int db = t.n_b * (t.k_b - 1);
  const int dim = da + db + t.n_a * t.n_b * (t.k_a - 1) * (t.k_b - 1);
  AffineRank polytope(dim);
  AffineRank saturating(dim);
  long long saturating_count = 0;

  std::vector<int> alice(t.n_a, 0), bob(t.n_b, 0), embedding(dim);
  const auto embed = [&]() {
    int pos = 0;
    for (int x = 0; x < t.n_a; ++x)
      for (int a = 0; a < t.k_a - 1; ++a) embedding[pos++] = alice[x] == a ? 1 : 0;
    for (int y = 0; y < t.n_b; ++y)
      for (int b = 0; b < t.k_b - 1; ++b) embedding[pos++] = bob[y] == b ? 1 : 0;
    for (int x = 0; x < t.n_a; ++x)
      for (int y = 0; y < t.n_b; ++y)
        for (int a = 0; a < t.k_a - 1; ++a)
          for (int b = 0; b < t.k_b - 1; ++b)
            embedding[pos++] = (alice[x] == a && bob[y] == b) ? 1 : 0;
  };

  while (true) {
    bob.assign(t.n_b, 0);
    while (true) {
      std::int64_t value = 0;
      for (int x = 0; x < t.n_a; ++x)
        for (int y = 0; y < t.n_b; ++y) value += t.at(alice[x], bob[y], x, y);
      const bool feed_polytope = !polytope.saturated();
      const bool saturates = static_cast<__int128>(value) * bound.den() ==
                             static_cast<__int128>(bound.num()) * t.scale;
      if (saturates) ++saturating_count;
      if (feed_polytope || saturates) {
        embed();
        if (feed_polytope) polytope.feed(embedding);
        if (saturates) saturating.feed(embedding);
      }
      int pos = 0;
      while (pos < t.n_b && ++bob[pos] == t.k_b) bob[pos++] = 0;
      if (pos == t.n_b) break;
    }
    int pos = 0;
    while (pos < t.n_a && ++alice[pos] == t.k_a) alice[pos++] = 0;
    if (pos == t.n_a) break;
  }

  FacetReport report;
  report.space = PolytopeSpace::full;
  report.polytope_dim = polytope.rank();
  report.saturating_vertex_count = saturating_count;
  report.affine_rank = saturating.rank();
  report.is_facet = report.affine_rank == report.polytope_dim - 1;
  return report;
}

std::string to_json(const FacetReport& report, int indent) {
  nlohmann::json doc = {
      {"is_facet", report.is_facet},
      {"polytope_dim", report.polytope_dim},
      {"saturating_vertices", report.saturating_vertex_count},
      {"affine_rank", report.affine_rank},
      {"space", report.space == PolytopeSpace::full ? "full" : "correlation"},
  };
  return indent >= 0 ? doc.dump(indent) : doc.dump();
}

}  // namespace bell
