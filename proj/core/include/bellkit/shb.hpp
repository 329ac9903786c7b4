#pragma once

#include <cstdint>

#include "bellkit/inequality.hpp"
#include "bellkit/quantum.hpp"

namespace bell {

// The guessing game behind the elegant inequality: Alice receives
// x in {0..n-1} and answers a in {0..m-1}; Bob receives the whole symbol
// tuple (y_0..y_{n-1}), y_j in {0..m-1}, and may play a joker. The round
// scores +1 when Bob accepts (b = 1) and a = y_x, -1 when he accepts and
// a != y_x, 0 whenever he plays the joker (b = 0).
struct SHBGame {
  int n;
  int m;
  SHBGame(int n_, int m_);
};

// Probability-form coefficient tensor of the game. Bob's input index
// enumerates y-tuples in base-m order with y_0 as the most significant
// digit; his outcome index is the game outcome itself (0 = joker,
// 1 = accept). Capped at m^n <= 10^5 Bob inputs.
ProbabilityInequality shb_inequality(int n, int m);

// S_local = sum_{r=0}^{floor((n-1)/2)} (n - 2r) C(n, r). Note the formula
// has no m dependence; the oracle below is authoritative when they differ.
std::int64_t shb_local_formula(int n);

// Exhaustive local bound: for every one of Alice's m^n deterministic
// strategies, Bob accepts exactly the tuples with a positive score.
// Capped at m^n <= 10^4.
std::int64_t shb_local_oracle(int n, int m);

struct ShbQuantumStrategy {
  double score = 0.0;
  GeneralState state;
  ProjectiveMeasurementSet alice;
  ProjectiveMeasurementSet bob;
};

// The constructed n = 2 strategy: maximally entangled state of dimension m,
// Alice measuring the conjugated computational/Fourier pair, Bob projecting
// onto the state midway between his two input states. Scores 2 sqrt(m).
ShbQuantumStrategy shb_quantum_score(int m);

// The n = 3, m = 2 game regrouped as a 4-setting correlation inequality:
// complementary y-triples share one projective measurement, which yields
// a 4 x 3 sign matrix (displayed with Bob rows) with bound 6.
CorrelationInequality shb_correlation_form();

}  // namespace bell
