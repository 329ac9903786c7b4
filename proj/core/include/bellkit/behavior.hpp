#pragma once

#include <cstddef>
#include <vector>

namespace bell {

// Binary outcomes appear under two encodings: +-1 in correlation
// inequalities, {0,1} in probability tables. One bijection is used
// everywhere: outcome index 0 <-> +1, outcome index 1 <-> -1.
constexpr int outcome_sign(int outcome_index) {
  return outcome_index == 0 ? +1 : -1;
}
constexpr int sign_to_outcome(int sign) { return sign > 0 ? 0 : 1; }

// Conditional probability table p(a,b|x,y) for two parties. Immutable after
// construction. The constructor requires each input pair to be normalized
// within 1e-9 and clamps negative entries no smaller than -1e-12 to zero
// (see-saw and Born-rule outputs feed back in); anything more negative is
// rejected.
class Behavior {
 public:
  Behavior(int n_a, int n_b, int k_a, int k_b, std::vector<double> p);

  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int k_a() const { return k_a_; }
  int k_b() const { return k_b_; }

  double p(int x, int y, int a, int b) const {
    return p_[index(x, y, a, b)];
  }
  const std::vector<double>& raw() const { return p_; }

  std::size_t index(int x, int y, int a, int b) const {
    return ((static_cast<std::size_t>(x) * n_b_ + y) * k_a_ + a) * k_b_ + b;
  }

 private:
  int n_a_, n_b_, k_a_, k_b_;
  std::vector<double> p_;
};

// A local-polytope vertex: one outcome per input on each side.
struct DeterministicStrategy {
  std::vector<int> alice;  // input x -> outcome index
  std::vector<int> bob;    // input y -> outcome index
};

Behavior deterministic_behavior(const DeterministicStrategy& s, int k_a, int k_b);

// Correlators and marginals of a binary-outcome behavior:
// E(x,y) = p(a=b|x,y) - p(a!=b|x,y), A_x = <a>, B_y = <b> with outcomes +-1.
// The constructor checks the four-point positivity conditions
// 1 + alpha*A_x + beta*B_y + alpha*beta*E_xy >= 0 (within 1e-9), i.e. that
// the table could have come from a valid behavior.
class CorrelatorTable {
 public:
  CorrelatorTable(int m_a, int m_b, std::vector<double> correlators,
                  std::vector<double> alice_marginals,
                  std::vector<double> bob_marginals);

  int m_a() const { return m_a_; }
  int m_b() const { return m_b_; }
  double E(int x, int y) const { return e_[static_cast<std::size_t>(x) * m_b_ + y]; }
  double A(int x) const { return a_[x]; }
  double B(int y) const { return b_[y]; }

 private:
  int m_a_, m_b_;
  std::vector<double> e_, a_, b_;
};

// Requires k_a = k_b = 2. Marginals are averaged over the other side's
// inputs, so the call is total even on (slightly) signaling tables.
CorrelatorTable correlators_from_behavior(const Behavior& b);

// Inverse map p(a,b|x,y) = (1 + alpha A_x + beta B_y + alpha beta E_xy)/4.
// Rejects tables whose reconstruction would need a probability below -1e-9.
Behavior behavior_from_correlators(const CorrelatorTable& t);

struct NonsignalingReport {
  bool passes;
  double max_deviation;
};

// Largest spread of p(a|x) across Bob's inputs (and symmetrically for Bob).
NonsignalingReport nonsignaling_check(const Behavior& b, double tol);

}  // namespace bell
