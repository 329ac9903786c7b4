#include "bellkit/detection.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bell {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

DetectionModel::DetectionModel(double a, double b) : eta_a(a), eta_b(b) {
  require(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0,
          "DetectionModel: efficiencies must lie in [0, 1]");
}

double detection_value(const CorrelationInequality& ineq, double theta,
                       const std::vector<BlochSetting>& alice,
                       const std::vector<BlochSetting>& bob,
                       const DetectionModel& model) {
  require(static_cast<int>(alice.size()) == ineq.m_a() &&
              static_cast<int>(bob.size()) == ineq.m_b(),
          "detection_value: setting counts must match the inequality");
  const double ea = model.eta_a, eb = model.eta_b;
  double value = 0.0;
  for (int x = 0; x < ineq.m_a(); ++x) {
    for (int y = 0; y < ineq.m_b(); ++y) {
      const TwoQubitCorrelators c = two_qubit_correlators(theta, alice[x], bob[y]);
      const double observed = ea * eb * c.E + ea * (1.0 - eb) * c.A +
                              (1.0 - ea) * eb * c.B + (1.0 - ea) * (1.0 - eb);
      value += ineq.coeff(x, y).to_double() * observed;
    }
  }
  return value;
}

namespace {

// See-saw in the x-z plane. Each Alice setting enters the objective through
//   eta_a eta_b sum_y M_xy (u_z v_z + s u_x v_x) + eta_a (1-eta_b) c u_z R_x
// with s = sin(2 theta), c = cos(2 theta) and R_x the row sum of M, so the
// optimal u is the normalized gradient; likewise for Bob. Monotone per sweep.
struct PlanarSeesaw {
  int m_a, m_b;
  Eigen::MatrixXd m;           // Alice rows
  Eigen::VectorXd row_sums, col_sums;
  double s, c;

  PlanarSeesaw(const CorrelationInequality& ineq, double theta)
      : m_a(ineq.m_a()), m_b(ineq.m_b()), m(m_a, m_b),
        s(std::sin(2.0 * theta)), c(std::cos(2.0 * theta)) {
    for (int x = 0; x < m_a; ++x)
      for (int y = 0; y < m_b; ++y) m(x, y) = ineq.coeff(x, y).to_double();
    row_sums = m.rowwise().sum();
    col_sums = m.colwise().sum();
  }

  double objective(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                   const DetectionModel& model) const {
    const double ea = model.eta_a, eb = model.eta_b;
    double value = (1.0 - ea) * (1.0 - eb) * m.sum();
    for (int x = 0; x < m_a; ++x)
      for (int y = 0; y < m_b; ++y)
        value += m(x, y) * ea * eb * (u(0, x) * v(0, y) + s * u(1, x) * v(1, y));
    for (int x = 0; x < m_a; ++x) value += ea * (1.0 - eb) * c * u(0, x) * row_sums(x);
    for (int y = 0; y < m_b; ++y) value += (1.0 - ea) * eb * c * v(0, y) * col_sums(y);
    return value;
  }

  double optimize(const DetectionModel& model, const OptimizerConfig& cfg,
                  Eigen::MatrixXd& u_best, Eigen::MatrixXd& v_best) const {
    const double ea = model.eta_a, eb = model.eta_b;
    const int restarts = cfg.restarts > 0 ? cfg.restarts : 16;
    std::mt19937_64 rng(cfg.seed);
    double best = -std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < restarts; ++restart) {
      Eigen::MatrixXd u(2, m_a), v(2, m_b);  // row 0 = z component, row 1 = x
      for (int x = 0; x < m_a; ++x) {
        const double phi = 2.0 * std::numbers::pi * uniform01(rng);
        u(0, x) = std::cos(phi);
        u(1, x) = std::sin(phi);
      }
      for (int y = 0; y < m_b; ++y) {
        const double phi = 2.0 * std::numbers::pi * uniform01(rng);
        v(0, y) = std::cos(phi);
        v(1, y) = std::sin(phi);
      }
      double value = objective(u, v, model);
      for (int iter = 0; iter < cfg.max_iters; ++iter) {
        for (int x = 0; x < m_a; ++x) {
          double gz = ea * (1.0 - eb) * c * row_sums(x);
          double gx = 0.0;
          for (int y = 0; y < m_b; ++y) {
            gz += ea * eb * m(x, y) * v(0, y);
            gx += ea * eb * s * m(x, y) * v(1, y);
          }
          const double norm = std::hypot(gz, gx);
          if (norm > 1e-300) {
            u(0, x) = gz / norm;
            u(1, x) = gx / norm;
          }
        }
        for (int y = 0; y < m_b; ++y) {
          double gz = (1.0 - ea) * eb * c * col_sums(y);
          double gx = 0.0;
          for (int x = 0; x < m_a; ++x) {
            gz += ea * eb * m(x, y) * u(0, x);
            gx += ea * eb * s * m(x, y) * u(1, x);
          }
          const double norm = std::hypot(gz, gx);
          if (norm > 1e-300) {
            v(0, y) = gz / norm;
            v(1, y) = gx / norm;
          }
        }
        const double next = objective(u, v, model);
        if (next - value < cfg.tol) {
          value = std::max(value, next);
          break;
        }
        value = next;
      }
      if (value > best) {
        best = value;
        u_best = u;
        v_best = v;
      }
    }
    return best;
  }
};

std::vector<BlochSetting> planar_settings(const Eigen::MatrixXd& uv) {
  std::vector<BlochSetting> out;
  out.reserve(uv.cols());
  for (Eigen::Index i = 0; i < uv.cols(); ++i)
    out.push_back(BlochSetting::normalized(uv(1, i), 0.0, uv(0, i)));
  return out;
}

}  // namespace

DetectionOptimum detection_optimal_value(const CorrelationInequality& ineq,
                                         double theta, const DetectionModel& model,
                                         const OptimizerConfig& cfg) {
  const PlanarSeesaw solver(ineq, theta);
  Eigen::MatrixXd u, v;
  DetectionOptimum out;
  out.value = solver.optimize(model, cfg, u, v);
  out.alice = planar_settings(u);
  out.bob = planar_settings(v);
  return out;
}

std::optional<DetectionThreshold> detection_threshold(
    const CorrelationInequality& ineq, double theta,
    const DetectionThresholdQuery& query, const OptimizerConfig& cfg) {
  if (!ineq.bound()) {
    throw std::invalid_argument("detection_threshold: bound must be computed first");
  }
  const double bound = ineq.bound()->to_double();
  const auto model_at = [&](double eta) {
    return query.symmetric ? DetectionModel(eta, eta)
                           : DetectionModel(eta, query.fixed_eta_b);
  };

  DetectionOptimum at_one = detection_optimal_value(ineq, theta, model_at(1.0), cfg);
  if (at_one.value <= bound + 1e-9) {
    return std::nullopt;  // no violation even with perfect detectors
  }

  // The optimized value grows with efficiency, so the crossing is found by
  // bisection: lo never violates, hi always does.
  double lo = 0.0, hi = 1.0;
  DetectionOptimum at_hi = at_one;
  while (hi - lo > query.bisect_tol) {
    const double mid = (lo + hi) / 2.0;
    DetectionOptimum at_mid = detection_optimal_value(ineq, theta, model_at(mid), cfg);
    if (at_mid.value > bound + 1e-12) {
      hi = mid;
      at_hi = at_mid;
    } else {
      lo = mid;
    }
  }

  DetectionThreshold result;
  result.eta_star = hi;
  result.eta_b = query.symmetric ? hi : query.fixed_eta_b;
  result.value_at_threshold = at_hi.value;
  result.alice = at_hi.alice;
  result.bob = at_hi.bob;
  return result;
}

}  // namespace bell
