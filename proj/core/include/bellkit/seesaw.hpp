#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "bellkit/inequality.hpp"

namespace bell {

// Unit-vector strategy realizing E(x,y) = V * (a_x . b_y). For
// full-correlation bipartite inequalities the optimum over such strategies
// (at large enough dimension) is the quantum maximum.
struct VectorStrategy {
  int dim = 0;
  std::vector<Eigen::VectorXd> a_vectors;
  std::vector<Eigen::VectorXd> b_vectors;
  double visibility = 1.0;
};

struct OptimizerConfig {
  // 0 picks the per-size default: 32 restarts when both sides have at most
  // 10 inputs, 128 otherwise.
  int restarts = 0;
  double tol = 1e-12;
  int max_iters = 10000;
  std::uint64_t seed = 0;
  // Records the per-sweep values of the winning restart.
  bool record_trace = false;
};

struct SeesawResult {
  double value = 0.0;
  VectorStrategy strategy;
  std::vector<double> trace;
};

// Alternating closed-form maximization of sum_xy M_xy a_x . b_y over unit
// vectors in R^dim: a_x <- normalize(sum_y M_xy b_y), then the mirror update
// for b. Monotone per sweep; seeded restarts, deterministic for a fixed
// seed, ties across restarts keep the earliest.
SeesawResult seesaw_value(const CorrelationInequality& ineq, int dim,
                          const OptimizerConfig& cfg = {});

// bound / seesaw_value: the critical visibility at which the inequality
// stops being violated.
double visibility_threshold(const CorrelationInequality& ineq, int dim,
                            const OptimizerConfig& cfg = {});

struct GeometryReport {
  Eigen::MatrixXd gram_a;
  Eigen::MatrixXd gram_b;
  bool planar = false;
  double max_plane_distance = 0.0;
};

// Gram matrices of both sides plus whether every vector lies within 1e-6 of
// a common 2-plane.
GeometryReport geometry_report(const VectorStrategy& strategy);

std::string to_json(const VectorStrategy& strategy, double value, int indent = -1);

}  // namespace bell
