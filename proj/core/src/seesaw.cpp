#include "bellkit/seesaw.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bell {

namespace {

// Uniform double in [0,1) from the top 53 bits; mt19937_64 output is fixed
// by the standard, so runs are reproducible across platforms.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller, hand-rolled: std::normal_distribution is not pinned down by
// the standard and would break the byte-identical-output contract.
double gaussian(std::mt19937_64& rng) {
  double u = uniform01(rng);
  while (u == 0.0) u = uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Eigen::VectorXd random_unit_vector(int dim, std::mt19937_64& rng) {
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = gaussian(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

int default_restarts(const CorrelationInequality& ineq) {
  return std::max(ineq.m_a(), ineq.m_b()) <= 10 ? 32 : 128;
}

}  // namespace

SeesawResult seesaw_value(const CorrelationInequality& ineq, int dim,
                          const OptimizerConfig& cfg) {
  if (dim < 1) throw std::invalid_argument("seesaw_value: dimension must be >= 1");
  if (cfg.tol <= 0.0) throw std::invalid_argument("seesaw_value: tol must be positive");
  const int m_a = ineq.m_a(), m_b = ineq.m_b();
  Eigen::MatrixXd m(m_a, m_b);
  for (int x = 0; x < m_a; ++x)
    for (int y = 0; y < m_b; ++y) m(x, y) = ineq.coeff(x, y).to_double();

  const int restarts = cfg.restarts > 0 ? cfg.restarts : default_restarts(ineq);
  std::mt19937_64 rng(cfg.seed);

  SeesawResult best;
  best.value = -std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < restarts; ++restart) {
    Eigen::MatrixXd a(dim, m_a), b(dim, m_b);
    for (int x = 0; x < m_a; ++x) a.col(x) = random_unit_vector(dim, rng);
    for (int y = 0; y < m_b; ++y) b.col(y) = random_unit_vector(dim, rng);

    std::vector<double> trace;
    double value = (a.transpose() * b * m.transpose()).trace();
    if (cfg.record_trace) trace.push_back(value);

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      for (int x = 0; x < m_a; ++x) {
        Eigen::VectorXd g = b * m.row(x).transpose();
        const double norm = g.norm();
        if (norm > 1e-300) a.col(x) = g / norm;  // else keep the previous direction
      }
      for (int y = 0; y < m_b; ++y) {
        Eigen::VectorXd g = a * m.col(y);
        const double norm = g.norm();
        if (norm > 1e-300) b.col(y) = g / norm;
      }
      const double next = (a.transpose() * b * m.transpose()).trace();
      if (cfg.record_trace) trace.push_back(next);
      if (next - value < cfg.tol) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }

    if (value > best.value) {
      best.value = value;
      best.strategy.dim = dim;
      best.strategy.visibility = 1.0;
      best.strategy.a_vectors.assign(m_a, Eigen::VectorXd());
      best.strategy.b_vectors.assign(m_b, Eigen::VectorXd());
      for (int x = 0; x < m_a; ++x) best.strategy.a_vectors[x] = a.col(x);
      for (int y = 0; y < m_b; ++y) best.strategy.b_vectors[y] = b.col(y);
      best.trace = std::move(trace);
    }
  }
  return best;
}

double visibility_threshold(const CorrelationInequality& ineq, int dim,
                            const OptimizerConfig& cfg) {
  if (!ineq.bound()) {
    throw std::invalid_argument("visibility_threshold: bound must be computed first");
  }
  const double quantum = seesaw_value(ineq, dim, cfg).value;
  return ineq.bound()->to_double() / quantum;
}

GeometryReport geometry_report(const VectorStrategy& strategy) {
  const int n_a = static_cast<int>(strategy.a_vectors.size());
  const int n_b = static_cast<int>(strategy.b_vectors.size());
  GeometryReport report;
  report.gram_a.resize(n_a, n_a);
  report.gram_b.resize(n_b, n_b);
  for (int i = 0; i < n_a; ++i)
    for (int j = 0; j < n_a; ++j)
      report.gram_a(i, j) = strategy.a_vectors[i].dot(strategy.a_vectors[j]);
  for (int i = 0; i < n_b; ++i)
    for (int j = 0; j < n_b; ++j)
      report.gram_b(i, j) = strategy.b_vectors[i].dot(strategy.b_vectors[j]);

  if (strategy.dim <= 2) {
    report.planar = true;
    report.max_plane_distance = 0.0;
    return report;
  }
  Eigen::MatrixXd stacked(n_a + n_b, strategy.dim);
  for (int i = 0; i < n_a; ++i) stacked.row(i) = strategy.a_vectors[i].transpose();
  for (int i = 0; i < n_b; ++i) stacked.row(n_a + i) = strategy.b_vectors[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinV);
  const Eigen::MatrixXd plane = svd.matrixV().leftCols(std::min<int>(2, strategy.dim));
  double worst = 0.0;
  for (int i = 0; i < stacked.rows(); ++i) {
    const Eigen::VectorXd v = stacked.row(i).transpose();
    const double dist = (v - plane * (plane.transpose() * v)).norm();
    worst = std::max(worst, dist);
  }
  report.max_plane_distance = worst;
  report.planar = worst <= 1e-6;
  return report;
}

std::string to_json(const VectorStrategy& strategy, double value, int indent) {
  nlohmann::json doc;
  doc["dim"] = strategy.dim;
  doc["visibility"] = strategy.visibility;
  doc["value"] = value;
  auto vectors_to_json = [](const std::vector<Eigen::VectorXd>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Eigen::VectorXd& v : vs) {
      nlohmann::json entry = nlohmann::json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) entry.push_back(v(i));
      arr.push_back(std::move(entry));
    }
    return arr;
  };
  doc["aliceVectors"] = vectors_to_json(strategy.a_vectors);
  doc["bobVectors"] = vectors_to_json(strategy.b_vectors);
  return indent >= 0 ? doc.dump(indent) : doc.dump();
}

}  // namespace bell
