#include "bellkit/quantum.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <stdexcept>

namespace bell {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

GeneralState::GeneralState(int d_a, int d_b, CMatrix rho)
    : d_a_(d_a), d_b_(d_b), rho_(std::move(rho)) {
  require(d_a_ >= 1 && d_b_ >= 1, "GeneralState: dimensions must be >= 1");
  const Eigen::Index dim = static_cast<Eigen::Index>(d_a_) * d_b_;
  require(rho_.rows() == dim && rho_.cols() == dim,
          "GeneralState: matrix does not match d_a * d_b");
  const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12, "GeneralState: matrix is not Hermitian");
  rho_ = ((rho_ + rho_.adjoint()) / 2.0).eval();
  require(std::abs(rho_.trace().real() - 1.0) <= 1e-12 &&
              std::abs(rho_.trace().imag()) <= 1e-12,
          "GeneralState: trace must be one");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
  require(solver.eigenvalues().minCoeff() >= -1e-10,
          "GeneralState: matrix has a negative eigenvalue");
}

ProjectiveMeasurementSet::ProjectiveMeasurementSet(
    int dim, std::vector<std::vector<CMatrix>> projectors)
    : dim_(dim), projectors_(std::move(projectors)) {
  require(dim_ >= 1, "ProjectiveMeasurementSet: dimension must be >= 1");
  require(!projectors_.empty(), "ProjectiveMeasurementSet: no inputs");
  const std::size_t outcomes = projectors_.front().size();
  require(outcomes >= 1, "ProjectiveMeasurementSet: no outcomes");
  const CMatrix identity = CMatrix::Identity(dim_, dim_);
  for (const auto& input : projectors_) {
    require(input.size() == outcomes,
            "ProjectiveMeasurementSet: inputs must share an outcome count");
    CMatrix sum = CMatrix::Zero(dim_, dim_);
    for (const CMatrix& p : input) {
      require(p.rows() == dim_ && p.cols() == dim_,
              "ProjectiveMeasurementSet: projector has wrong shape");
      require((p * p - p).cwiseAbs().maxCoeff() <= 1e-10,
              "ProjectiveMeasurementSet: projector is not idempotent");
      sum += p;
    }
    require((sum - identity).cwiseAbs().maxCoeff() <= 1e-10,
            "ProjectiveMeasurementSet: projectors do not sum to identity");
  }
}

BlochSetting::BlochSetting(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  require(std::abs(norm - 1.0) <= 1e-12, "BlochSetting: vector must be unit length");
}

BlochSetting BlochSetting::normalized(double x_, double y_, double z_) {
  const double norm = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
  require(norm > 0.0, "BlochSetting: cannot normalize the zero vector");
  return BlochSetting(x_ / norm, y_ / norm, z_ / norm);
}

PureTwoQubitState::PureTwoQubitState(double theta_) : theta(theta_) {
  require(theta >= 0.0 && theta <= std::numbers::pi / 4 + 1e-12,
          "PureTwoQubitState: theta must lie in [0, pi/4]");
}

WernerState::WernerState(double w) : visibility(w) {
  require(w >= 0.0 && w <= 1.0, "WernerState: visibility must lie in [0, 1]");
}

Behavior behavior_from_quantum(const GeneralState& state,
                               const ProjectiveMeasurementSet& alice,
                               const ProjectiveMeasurementSet& bob) {
  require(alice.dim() == state.d_a() && bob.dim() == state.d_b(),
          "behavior_from_quantum: dimension mismatch");
  const int n_a = alice.num_inputs(), n_b = bob.num_inputs();
  const int k_a = alice.num_outcomes(), k_b = bob.num_outcomes();
  // Tr[M rho] = sum_ij M_ij rho_ji, so the product is never materialized.
  const CMatrix rho_t = state.rho().transpose();
  std::vector<double> p(static_cast<std::size_t>(n_a) * n_b * k_a * k_b);
  for (int x = 0; x < n_a; ++x) {
    for (int y = 0; y < n_b; ++y) {
      for (int a = 0; a < k_a; ++a) {
        for (int b = 0; b < k_b; ++b) {
          const CMatrix joint = kron(alice.projector(x, a), bob.projector(y, b));
          const Complex tr = joint.cwiseProduct(rho_t).sum();
          p[((static_cast<std::size_t>(x) * n_b + y) * k_a + a) * k_b + b] = tr.real();
        }
      }
    }
  }
  return Behavior(n_a, n_b, k_a, k_b, std::move(p));
}

TwoQubitCorrelators two_qubit_correlators(double theta, const BlochSetting& a,
                                          const BlochSetting& b) {
  const double s = std::sin(2.0 * theta), c = std::cos(2.0 * theta);
  TwoQubitCorrelators out;
  out.E = a.z * b.z + s * (a.x * b.x - a.y * b.y);
  out.A = c * a.z;
  out.B = c * b.z;
  return out;
}

MubPair mub_pair(int d) {
  require(d >= 2, "mub_pair: dimension must be >= 2");
  MubPair out;
  out.computational = CMatrix::Identity(d, d);
  out.fourier = CMatrix(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      out.fourier(j, k) =
          scale * std::exp(Complex(0.0, 2.0 * std::numbers::pi * j * k / d));
  return out;
}

CMatrix intermediate_projector(const CVector& s1, const CVector& s2) {
  require(s1.size() == s2.size(), "intermediate_projector: dimension mismatch");
  require(std::abs(s1.norm() - 1.0) <= 1e-10 && std::abs(s2.norm() - 1.0) <= 1e-10,
          "intermediate_projector: states must be unit vectors");
  const double overlap = std::abs((s1.adjoint() * s2)(0, 0));
  require(overlap > 1e-12,
          "intermediate_projector: orthogonal states give a degenerate mixture");
  const CMatrix mixture =
      0.5 * (s1 * s1.adjoint() + s2 * s2.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(mixture);
  // Eigen sorts eigenvalues in increasing order; the top one is last.
  const CVector top = solver.eigenvectors().col(s1.size() - 1);
  return top * top.adjoint();
}

GeneralState werner_density(double w) {
  WernerState params(w);
  CVector singlet = CVector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  const CMatrix rho = params.visibility * (singlet * singlet.adjoint()) +
                      (1.0 - params.visibility) * CMatrix::Identity(4, 4) / 4.0;
  return GeneralState(2, 2, rho);
}

GeneralState partial_state_density(double theta) {
  PureTwoQubitState params(theta);
  CVector psi = CVector::Zero(4);
  psi(0) = std::cos(params.theta);
  psi(3) = std::sin(params.theta);
  return GeneralState(2, 2, psi * psi.adjoint());
}

ProjectiveMeasurementSet bloch_measurements(const std::vector<BlochSetting>& settings) {
  require(!settings.empty(), "bloch_measurements: no settings");
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  std::vector<std::vector<CMatrix>> projectors;
  projectors.reserve(settings.size());
  for (const BlochSetting& n : settings) {
    const CMatrix obs = n.x * sx + n.y * sy + n.z * sz;
    const CMatrix plus = (CMatrix::Identity(2, 2) + obs) / 2.0;
    const CMatrix minus = (CMatrix::Identity(2, 2) - obs) / 2.0;
    projectors.push_back({plus, minus});
  }
  return ProjectiveMeasurementSet(2, std::move(projectors));
}

ProjectiveMeasurementSet basis_measurements(const std::vector<CMatrix>& bases,
                                            bool conjugate) {
  require(!bases.empty(), "basis_measurements: no bases");
  const int d = static_cast<int>(bases.front().rows());
  std::vector<std::vector<CMatrix>> projectors;
  projectors.reserve(bases.size());
  for (const CMatrix& basis : bases) {
    require(basis.rows() == d && basis.cols() == d,
            "basis_measurements: bases must be square and share a dimension");
    std::vector<CMatrix> input;
    input.reserve(d);
    for (int k = 0; k < d; ++k) {
      const CVector v = basis.col(k);
      CMatrix p = v * v.adjoint();
      if (conjugate) p = p.conjugate();
      input.push_back(std::move(p));
    }
    projectors.push_back(std::move(input));
  }
  return ProjectiveMeasurementSet(d, std::move(projectors));
}

namespace {

using nlohmann::json;

json complex_matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string to_json(const GeneralState& state, int indent) {
  json doc = {{"dA", state.d_a()},
              {"dB", state.d_b()},
              {"rho", complex_matrix_to_json(state.rho())}};
  return indent >= 0 ? doc.dump(indent) : doc.dump();
}

std::string to_json(const ProjectiveMeasurementSet& mset, int indent) {
  json inputs = json::array();
  for (int x = 0; x < mset.num_inputs(); ++x) {
    json outcomes = json::array();
    for (int a = 0; a < mset.num_outcomes(); ++a)
      outcomes.push_back(complex_matrix_to_json(mset.projector(x, a)));
    inputs.push_back(std::move(outcomes));
  }
  json doc = {{"dim", mset.dim()}, {"projectors", inputs}};
  return indent >= 0 ? doc.dump(indent) : doc.dump();
}

}  // namespace bell
