#include "bellkit/shb.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellkit/errors.hpp"
#include "bellkit/local_bounds.hpp"

namespace bell {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::int64_t checked_pow(int base, int exp, std::int64_t cap) {
  std::int64_t value = 1;
  for (int i = 0; i < exp; ++i) {
    value *= base;
    if (value > cap) return -1;
  }
  return value;
}

// Digit j of the y-tuple encoded in `index`, with y_0 most significant.
int tuple_digit(std::int64_t index, int j, int n, int m) {
  for (int k = n - 1; k > j; --k) index /= m;
  return static_cast<int>(index % m);
}

}  // namespace

SHBGame::SHBGame(int n_, int m_) : n(n_), m(m_) {
  require(n >= 1, "SHBGame: n must be >= 1");
  require(m >= 2, "SHBGame: m must be >= 2");
}

ProbabilityInequality shb_inequality(int n, int m) {
  SHBGame game(n, m);
  const std::int64_t n_b = checked_pow(m, n, 100000);
  if (n_b < 0) throw LimitError("shb_inequality: m^n exceeds 10^5");

  const int k_a = m, k_b = 2;
  std::vector<Rational> coeffs(static_cast<std::size_t>(k_a) * k_b * n * n_b,
                               Rational(0));
  const auto index = [&](int a, int b, int x, std::int64_t y) {
    return ((static_cast<std::size_t>(a) * k_b + b) * n + x) * n_b + y;
  };
  for (int x = 0; x < n; ++x) {
    for (std::int64_t y = 0; y < n_b; ++y) {
      const int target = tuple_digit(y, x, n, m);
      for (int a = 0; a < m; ++a) {
        coeffs[index(a, 1, x, y)] = Rational(a == target ? +1 : -1);
      }
    }
  }
  return ProbabilityInequality("SHB(" + std::to_string(n) + "," + std::to_string(m) + ")",
                               n, static_cast<int>(n_b), k_a, k_b, std::move(coeffs));
}

std::int64_t shb_local_formula(int n) {
  require(n >= 1, "shb_local_formula: n must be >= 1");
  std::int64_t total = 0;
  std::int64_t binom = 1;  // C(n, r), updated incrementally
  for (int r = 0; r <= (n - 1) / 2; ++r) {
    total += static_cast<std::int64_t>(n - 2 * r) * binom;
    binom = binom * (n - r) / (r + 1);
  }
  return total;
}

std::int64_t shb_local_oracle(int n, int m) {
  SHBGame game(n, m);
  const std::int64_t tuples = checked_pow(m, n, 10000);
  if (tuples < 0) throw LimitError("shb_local_oracle: m^n exceeds 10^4");

  std::vector<int> guess(n, 0);
  std::int64_t best = 0;
  while (true) {
    std::int64_t value = 0;
    for (std::int64_t y = 0; y < tuples; ++y) {
      int score = 0;
      std::int64_t rest = y;
      for (int j = n - 1; j >= 0; --j) {  // y_0 most significant
        const int digit = static_cast<int>(rest % m);
        rest /= m;
        score += guess[j] == digit ? +1 : -1;
      }
      if (score > 0) value += score;  // Bob rejects non-positive rounds
    }
    best = std::max(best, value);

    int pos = 0;
    while (pos < n && ++guess[pos] == m) guess[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

ShbQuantumStrategy shb_quantum_score(int m) {
  require(m >= 2 && m <= 12, "shb_quantum_score: m must lie in [2, 12]");
  const int n = 2;
  const std::int64_t n_b = static_cast<std::int64_t>(m) * m;

  // |Phi> = m^{-1/2} sum_j |jj>.
  CVector phi = CVector::Zero(static_cast<Eigen::Index>(m) * m);
  for (int j = 0; j < m; ++j) phi(static_cast<Eigen::Index>(j) * m + j) = 1.0 / std::sqrt(m);
  GeneralState state(m, m, phi * phi.adjoint());

  // Alice's bases are conjugated so that a successful projection on Bob's
  // side steers her onto the measured basis state itself.
  const MubPair mub = mub_pair(m);
  ProjectiveMeasurementSet alice =
      basis_measurements({mub.computational, mub.fourier}, /*conjugate=*/true);

  std::vector<std::vector<CMatrix>> bob_projectors;
  bob_projectors.reserve(n_b);
  for (int y0 = 0; y0 < m; ++y0) {
    for (int y1 = 0; y1 < m; ++y1) {
      const CMatrix accept =
          intermediate_projector(mub.computational.col(y0), mub.fourier.col(y1));
      const CMatrix joker = CMatrix::Identity(m, m) - accept;
      bob_projectors.push_back({joker, accept});  // outcome index = game outcome
    }
  }
  ProjectiveMeasurementSet bob(m, std::move(bob_projectors));

  const Behavior behavior = behavior_from_quantum(state, alice, bob);
  const double score = evaluate_probability(shb_inequality(n, m), behavior);
  return ShbQuantumStrategy{score, std::move(state), std::move(alice), std::move(bob)};
}

CorrelationInequality shb_correlation_form() {
  const int n = 3;
  // Group each y-triple with its bitwise complement: both correspond to one
  // projective measurement whose +1 branch is the even-parity representative.
  // Scoring algebra turns the pair's two probability terms into
  // (-1)^{y_x} E(x, pair), so the matrix rows are the sign patterns of the
  // even-parity triples in increasing order: 000, 011, 101, 110.
  std::vector<std::vector<int>> representatives;
  for (int y = 0; y < (1 << n); ++y) {
    int parity = 0;
    std::vector<int> bits(n);
    for (int j = 0; j < n; ++j) {
      bits[j] = (y >> (n - 1 - j)) & 1;  // y_0 most significant
      parity ^= bits[j];
    }
    if (parity == 0) representatives.push_back(std::move(bits));
  }

  std::vector<Rational> display;
  display.reserve(representatives.size() * n);
  for (const std::vector<int>& rep : representatives)
    for (int x = 0; x < n; ++x) display.push_back(Rational(rep[x] == 0 ? +1 : -1));

  CorrelationInequality ineq("S3x4", /*m_a=*/n, /*m_b=*/static_cast<int>(representatives.size()),
                             std::move(display), /*rows_are_bob=*/true);
  ineq.set_bound(local_bound_correlation(ineq));
  return ineq;
}

}  // namespace bell
