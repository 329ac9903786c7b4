#include "bellkit/behavior.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bell {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Behavior::Behavior(int n_a, int n_b, int k_a, int k_b, std::vector<double> p)
    : n_a_(n_a), n_b_(n_b), k_a_(k_a), k_b_(k_b), p_(std::move(p)) {
  require(n_a_ >= 1 && n_b_ >= 1 && k_a_ >= 1 && k_b_ >= 1,
          "Behavior: counts must be positive");
  const std::size_t expected = static_cast<std::size_t>(n_a_) * n_b_ * k_a_ * k_b_;
  require(p_.size() == expected, "Behavior: table has wrong size");
  for (double& v : p_) {
    if (v < 0.0) {
      require(v >= -1e-12, "Behavior: negative probability " + std::to_string(v));
      v = 0.0;
    }
    require(v <= 1.0 + 1e-9, "Behavior: probability above one");
  }
  for (int x = 0; x < n_a_; ++x) {
    for (int y = 0; y < n_b_; ++y) {
      double sum = 0.0;
      for (int a = 0; a < k_a_; ++a)
        for (int b = 0; b < k_b_; ++b) sum += p_[index(x, y, a, b)];
      require(std::abs(sum - 1.0) <= 1e-9,
              "Behavior: input pair (" + std::to_string(x) + "," +
                  std::to_string(y) + ") not normalized");
    }
  }
}

Behavior deterministic_behavior(const DeterministicStrategy& s, int k_a, int k_b) {
  const int n_a = static_cast<int>(s.alice.size());
  const int n_b = static_cast<int>(s.bob.size());
  require(n_a >= 1 && n_b >= 1, "deterministic_behavior: empty strategy");
  for (int a : s.alice) require(a >= 0 && a < k_a, "deterministic_behavior: Alice outcome out of range");
  for (int b : s.bob) require(b >= 0 && b < k_b, "deterministic_behavior: Bob outcome out of range");
  std::vector<double> p(static_cast<std::size_t>(n_a) * n_b * k_a * k_b, 0.0);
  for (int x = 0; x < n_a; ++x) {
    for (int y = 0; y < n_b; ++y) {
      const std::size_t idx =
          ((static_cast<std::size_t>(x) * n_b + y) * k_a + s.alice[x]) * k_b + s.bob[y];
      p[idx] = 1.0;
    }
  }
  return Behavior(n_a, n_b, k_a, k_b, std::move(p));
}

CorrelatorTable::CorrelatorTable(int m_a, int m_b, std::vector<double> correlators,
                                 std::vector<double> alice_marginals,
                                 std::vector<double> bob_marginals)
    : m_a_(m_a), m_b_(m_b), e_(std::move(correlators)),
      a_(std::move(alice_marginals)), b_(std::move(bob_marginals)) {
  require(m_a_ >= 1 && m_b_ >= 1, "CorrelatorTable: counts must be positive");
  require(e_.size() == static_cast<std::size_t>(m_a_) * m_b_,
          "CorrelatorTable: E has wrong size");
  require(a_.size() == static_cast<std::size_t>(m_a_), "CorrelatorTable: A has wrong size");
  require(b_.size() == static_cast<std::size_t>(m_b_), "CorrelatorTable: B has wrong size");
  for (int x = 0; x < m_a_; ++x) {
    for (int y = 0; y < m_b_; ++y) {
      for (int alpha : {+1, -1}) {
        for (int beta : {+1, -1}) {
          const double q = 1.0 + alpha * A(x) + beta * B(y) + alpha * beta * E(x, y);
          require(q >= -1e-9, "CorrelatorTable: inconsistent with any behavior");
        }
      }
    }
  }
}

CorrelatorTable correlators_from_behavior(const Behavior& b) {
  require(b.k_a() == 2 && b.k_b() == 2,
          "correlators_from_behavior: outcomes must be binary");
  const int m_a = b.n_a(), m_b = b.n_b();
  std::vector<double> e(static_cast<std::size_t>(m_a) * m_b, 0.0);
  std::vector<double> ma(m_a, 0.0), mb(m_b, 0.0);
  for (int x = 0; x < m_a; ++x) {
    for (int y = 0; y < m_b; ++y) {
      double exy = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb)
          exy += outcome_sign(a) * outcome_sign(bb) * b.p(x, y, a, bb);
      e[static_cast<std::size_t>(x) * m_b + y] = exy;
    }
  }
  for (int x = 0; x < m_a; ++x) {
    double acc = 0.0;
    for (int y = 0; y < m_b; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) acc += outcome_sign(a) * b.p(x, y, a, bb);
    ma[x] = acc / m_b;
  }
  for (int y = 0; y < m_b; ++y) {
    double acc = 0.0;
    for (int x = 0; x < m_a; ++x)
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) acc += outcome_sign(bb) * b.p(x, y, a, bb);
    mb[y] = acc / m_a;
  }
  return CorrelatorTable(m_a, m_b, std::move(e), std::move(ma), std::move(mb));
}

Behavior behavior_from_correlators(const CorrelatorTable& t) {
  const int n_a = t.m_a(), n_b = t.m_b();
  std::vector<double> p(static_cast<std::size_t>(n_a) * n_b * 4, 0.0);
  for (int x = 0; x < n_a; ++x) {
    for (int y = 0; y < n_b; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const int alpha = outcome_sign(a), beta = outcome_sign(b);
          double q = (1.0 + alpha * t.A(x) + beta * t.B(y) + alpha * beta * t.E(x, y)) / 4.0;
          if (q < 0.0) {
            require(q >= -1e-9, "behavior_from_correlators: negative probability");
            q = 0.0;
          }
          p[((static_cast<std::size_t>(x) * n_b + y) * 2 + a) * 2 + b] = q;
        }
      }
    }
  }
  return Behavior(n_a, n_b, 2, 2, std::move(p));
}

NonsignalingReport nonsignaling_check(const Behavior& b, double tol) {
  double worst = 0.0;
  // Alice's marginal p(a|x) must not depend on y.
  for (int x = 0; x < b.n_a(); ++x) {
    for (int a = 0; a < b.k_a(); ++a) {
      double lo = 2.0, hi = -1.0;
      for (int y = 0; y < b.n_b(); ++y) {
        double m = 0.0;
        for (int bb = 0; bb < b.k_b(); ++bb) m += b.p(x, y, a, bb);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
      worst = std::max(worst, hi - lo);
    }
  }
  for (int y = 0; y < b.n_b(); ++y) {
    for (int bb = 0; bb < b.k_b(); ++bb) {
      double lo = 2.0, hi = -1.0;
      for (int x = 0; x < b.n_a(); ++x) {
        double m = 0.0;
        for (int a = 0; a < b.k_a(); ++a) m += b.p(x, y, a, bb);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
      worst = std::max(worst, hi - lo);
    }
  }
  return NonsignalingReport{worst <= tol, worst};
}

}  // namespace bell
