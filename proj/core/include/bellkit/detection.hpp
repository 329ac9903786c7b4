#pragma once

#include <optional>
#include <vector>

#include "bellkit/inequality.hpp"
#include "bellkit/quantum.hpp"
#include "bellkit/seesaw.hpp"

namespace bell {

// Detector model with one efficiency per side; a non-detection is recorded
// as outcome +1 (no binning choice is exposed).
struct DetectionModel {
  double eta_a = 1.0;
  double eta_b = 1.0;

  DetectionModel() = default;
  DetectionModel(double a, double b);
};

// Bell value observed through lossy detectors: for each input pair,
//   E_obs = eta_a eta_b E + eta_a (1 - eta_b) A_x
//         + (1 - eta_a) eta_b B_y + (1 - eta_a)(1 - eta_b),
// with E, A, B the ideal correlators of cos(theta)|00> + sin(theta)|11>
// at the given Bloch settings.
double detection_value(const CorrelationInequality& ineq, double theta,
                       const std::vector<BlochSetting>& alice,
                       const std::vector<BlochSetting>& bob,
                       const DetectionModel& model);

struct DetectionOptimum {
  double value = 0.0;
  std::vector<BlochSetting> alice;
  std::vector<BlochSetting> bob;
};

// Maximizes detection_value over measurement settings for a fixed model.
// Settings are restricted to the x-z plane: the correlators of
// cos(theta)|00> + sin(theta)|11> only lose value through a_y, b_y at a
// maximum, so nothing is given up.
DetectionOptimum detection_optimal_value(const CorrelationInequality& ineq,
                                         double theta, const DetectionModel& model,
                                         const OptimizerConfig& cfg = {});

struct DetectionThresholdQuery {
  bool symmetric = true;     // eta_a = eta_b = eta
  double fixed_eta_b = 1.0;  // used when symmetric is false; eta_a is scanned
  double bisect_tol = 1e-6;
};

struct DetectionThreshold {
  double eta_star = 1.0;
  double eta_b = 1.0;
  double value_at_threshold = 0.0;
  std::vector<BlochSetting> alice;
  std::vector<BlochSetting> bob;
};

// Smallest efficiency at which the optimized detection value still exceeds
// the local bound (outer bisection, inner see-saw over settings). Empty when
// there is no violation even at unit efficiency.
std::optional<DetectionThreshold> detection_threshold(
    const CorrelationInequality& ineq, double theta,
    const DetectionThresholdQuery& query, const OptimizerConfig& cfg = {});

}  // namespace bell
