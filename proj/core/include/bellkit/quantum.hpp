#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "bellkit/behavior.hpp"

namespace bell {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Bipartite density matrix on C^{d_a} x C^{d_b}. The constructor
// symmetrizes rho <- (rho + rho^dagger)/2 after checking the asymmetry is
// below 1e-12, verifies unit trace, and rejects eigenvalues below -1e-10.
class GeneralState {
 public:
  GeneralState(int d_a, int d_b, CMatrix rho);

  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }
  const CMatrix& rho() const { return rho_; }

 private:
  int d_a_, d_b_;
  CMatrix rho_;
};

// One list of orthogonal projectors per input, each list summing to the
// identity. Outcome index = position in the list.
class ProjectiveMeasurementSet {
 public:
  ProjectiveMeasurementSet(int dim, std::vector<std::vector<CMatrix>> projectors);

  int dim() const { return dim_; }
  int num_inputs() const { return static_cast<int>(projectors_.size()); }
  int num_outcomes() const { return static_cast<int>(projectors_.front().size()); }
  const CMatrix& projector(int input, int outcome) const {
    return projectors_[input][outcome];
  }

 private:
  int dim_;
  std::vector<std::vector<CMatrix>> projectors_;
};

// Unit vector on the Poincare/Bloch sphere.
struct BlochSetting {
  double x = 0.0, y = 0.0, z = 1.0;

  BlochSetting() = default;
  BlochSetting(double x_, double y_, double z_);
  static BlochSetting normalized(double x_, double y_, double z_);
};

// cos(theta)|00> + sin(theta)|11>, theta in [0, pi/4];
// theta = pi/4 is maximally entangled.
struct PureTwoQubitState {
  double theta;
  explicit PureTwoQubitState(double theta_);
};

// W |psi-><psi-| + (1 - W) 1/4.
struct WernerState {
  double visibility;
  explicit WernerState(double w);
};

// Born rule: p(a,b|x,y) = Tr[(P^x_a (x) Q^y_b) rho].
Behavior behavior_from_quantum(const GeneralState& state,
                               const ProjectiveMeasurementSet& alice,
                               const ProjectiveMeasurementSet& bob);

struct TwoQubitCorrelators {
  double E, A, B;
};

// Closed form for cos(theta)|00> + sin(theta)|11>:
//   E = a_z b_z + sin(2 theta) (a_x b_x - a_y b_y),
//   A = cos(2 theta) a_z,  B = cos(2 theta) b_z.
TwoQubitCorrelators two_qubit_correlators(double theta, const BlochSetting& a,
                                          const BlochSetting& b);

struct MubPair {
  CMatrix computational;  // columns are basis vectors
  CMatrix fourier;
};

// Computational + Fourier bases; mutually unbiased in every dimension.
MubPair mub_pair(int d);

// Rank-1 projector onto the top eigenvector of (|s1><s1| + |s2><s2|)/2.
// Rejects orthogonal inputs (degenerate top eigenvalue).
CMatrix intermediate_projector(const CVector& s1, const CVector& s2);

GeneralState werner_density(double w);
GeneralState partial_state_density(double theta);

// Qubit measurement sets {(1 + n.sigma)/2, (1 - n.sigma)/2} per setting;
// outcome index 0 is the +1 eigenprojector.
ProjectiveMeasurementSet bloch_measurements(const std::vector<BlochSetting>& settings);

// Rank-1 measurements from full bases (columns of each matrix). With
// conjugate = true the projectors are entrywise conjugated -- the alignment
// needed on Alice's side of |Phi> = d^{-1/2} sum_j |jj>.
ProjectiveMeasurementSet basis_measurements(const std::vector<CMatrix>& bases,
                                            bool conjugate = false);

// Complex entries encoded as [re, im] pairs.
std::string to_json(const GeneralState& state, int indent = -1);
std::string to_json(const ProjectiveMeasurementSet& mset, int indent = -1);

}  // namespace bell
