// Acceptance checklist: every reproduced value at its stated tolerance,
// one pass/fail line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bellkit/detection.hpp"
#include "bellkit/families.hpp"
#include "bellkit/local_bounds.hpp"
#include "bellkit/quantum.hpp"
#include "bellkit/seesaw.hpp"
#include "bellkit/shb.hpp"

using namespace bell;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;
std::vector<std::string> notes;

void check(bool ok, const std::string& detail) {
  if (!ok) {
    ++failures;
    notes.push_back(detail);
  }
}

struct Criterion {
  explicit Criterion(std::string label) : label_(std::move(label)), baseline_(failures) {
    notes.clear();
  }
  ~Criterion() {
    const bool ok = failures == baseline_;
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", label_.c_str());
    for (const std::string& note : notes) std::printf("       %s\n", note.c_str());
    std::fflush(stdout);
  }
  std::string label_;
  int baseline_;
};

bool near(double value, double target, double tol) {
  return std::abs(value - target) <= tol;
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

// --------------------------------------------------------------------------

void criterion_1_local_bounds() {
  Criterion c("1. exact local bounds: CHSH 2, AS4 6, AS6 12, AS8 20, D4 10, "
              "D5_1 8, D5_2 20, D6_1 10, D6_2 28, D6_3 36, D6_4 42, S3x4 6");
  const std::vector<std::pair<std::string, std::int64_t>> expected = {
      {"CHSH", 2},  {"AS4", 6},   {"AS6", 12},  {"AS8", 20},
      {"D4", 10},   {"D5_1", 8},  {"D5_2", 20}, {"D6_1", 10},
      {"D6_2", 28}, {"D6_3", 36}, {"D6_4", 42}, {"S3x4", 6},
  };
  for (const auto& [name, bound] : expected) {
    const auto start = std::chrono::steady_clock::now();
    const Rational derived = local_bound_correlation(catalog(name));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(derived == Rational(bound),
          name + ": got " + derived.to_string() + ", want " + std::to_string(bound));
    check(seconds < 1.0, name + ": took " + fmt(seconds) + "s (limit 1s)");
  }
}

void criterion_2_as_closed_form() {
  Criterion c("2. AS family bound equals n(n+2)/4 by enumeration for even n <= 24");
  for (int n = 2; n <= 24; n += 2) {
    const CorrelationInequality ineq = gen_as(n);
    check(!ineq.bound_conjectured(), "n=" + std::to_string(n) + ": bound not enumerated");
    check(*ineq.bound() == as_bound_formula(n),
          "n=" + std::to_string(n) + ": got " + ineq.bound()->to_string());
  }
}

void criterion_3_quantum_values() {
  Criterion c("3. see-saw values: CHSH 2*sqrt(2) +-1e-8, S3x4 d=3 4*sqrt(3) +-1e-6, "
              "S3x4 d=2 2+2*sqrt(5) +-1e-6");
  const double chsh = seesaw_value(catalog("CHSH"), 2).value;
  check(near(chsh, 2.0 * std::sqrt(2.0), 1e-8), "CHSH: " + fmt(chsh));
  const double s3 = seesaw_value(catalog("S3x4"), 3).value;
  check(near(s3, 4.0 * std::sqrt(3.0), 1e-6), "S3x4 d=3: " + fmt(s3));
  const double s2 = seesaw_value(catalog("S3x4"), 2).value;
  check(near(s2, 2.0 + 2.0 * std::sqrt(5.0), 1e-6), "S3x4 d=2: " + fmt(s2));
}

void criterion_4_visibility_thresholds() {
  Criterion c("4. visibility thresholds: V2 0.70711, V4 0.7348, V10 0.7469, "
              "V32 0.7497, V50 0.7499 (32, 50 on the conjectured bound)");
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::tuple<int, double, double>> targets = {
      {2, 0.70711, 1e-4}, {4, 0.7348, 5e-4}, {10, 0.7469, 5e-4},
      {32, 0.7497, 1e-3}, {50, 0.7499, 1e-3},
  };
  double previous = 0.0;
  for (const auto& [n, target, tol] : targets) {
    const CorrelationInequality ineq = gen_as(n);
    const double v = visibility_threshold(ineq, 2);
    check(near(v, target, tol), "V_" + std::to_string(n) + ": " + fmt(v));
    check(v > previous && v < 0.7501,
          "V_" + std::to_string(n) + " breaks the increasing-below-0.7501 pattern");
    previous = v;
    check(ineq.bound_conjectured() == (n > 26),
          "V_" + std::to_string(n) + ": conjectured-bound flag wrong");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(seconds < 120.0, "sweep took " + fmt(seconds) + "s (limit 120s)");
}

void criterion_5_grand_circle() {
  Criterion c("5. grand circle: AS_n see-saw value at d=2 equals d=n within 1e-6, "
              "n in {4, 6, 8, 10}");
  for (const int n : {4, 6, 8, 10}) {
    const CorrelationInequality ineq = gen_as(n);
    const double planar = seesaw_value(ineq, 2).value;
    const double free = seesaw_value(ineq, n).value;
    check(near(planar, free, 1e-6),
          "n=" + std::to_string(n) + ": d2 " + fmt(planar) + " vs dn " + fmt(free));
  }
}

void criterion_6_geometry() {
  Criterion c("6. S3x4 optimum geometry: Alice pairwise orthogonal (<1e-4), "
              "Bob tetrahedral (-1/3 +-1e-4)");
  const SeesawResult r = seesaw_value(catalog("S3x4"), 3);
  const GeometryReport geo = geometry_report(r.strategy);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        check(std::abs(geo.gram_a(i, j)) < 1e-4,
              "Alice gram(" + std::to_string(i) + "," + std::to_string(j) +
                  ") = " + fmt(geo.gram_a(i, j)));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j)
        check(near(geo.gram_b(i, j), -1.0 / 3.0, 1e-4),
              "Bob gram(" + std::to_string(i) + "," + std::to_string(j) +
                  ") = " + fmt(geo.gram_b(i, j)));
}

void criterion_7_shb() {
  Criterion c("7. SHB: bounds (2,m)=2 for m in {2,3,4} and (3,2)=6; oracle = formula "
              "at m=2, n<=4; quantum 2*sqrt(m) +-1e-9 for m in {2..8}; S3x4 export");
  for (const int m : {2, 3, 4}) {
    const std::int64_t bound = shb_local_oracle(2, m);
    check(bound == 2, "(2," + std::to_string(m) + "): " + std::to_string(bound));
  }
  check(shb_local_oracle(3, 2) == 6, "(3,2) oracle");
  check(local_bound_probability(shb_inequality(3, 2)) == Rational(6), "(3,2) tensor bound");
  for (int n = 1; n <= 4; ++n) {
    check(shb_local_oracle(n, 2) == shb_local_formula(n),
          "formula mismatch at n=" + std::to_string(n));
  }
  for (int m = 2; m <= 8; ++m) {
    const double score = shb_quantum_score(m).score;
    check(near(score, 2.0 * std::sqrt(static_cast<double>(m)), 1e-9),
          "quantum m=" + std::to_string(m) + ": " + fmt(score));
  }
  const CorrelationInequality exported = shb_correlation_form();
  const std::int64_t matrix[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 3; ++col)
      check(exported.display_coeff(r, col) == Rational(matrix[r][col]),
            "export entry (" + std::to_string(r) + "," + std::to_string(col) + ")");
  check(*exported.bound() == Rational(6), "export bound");
}

void criterion_8_werner() {
  Criterion c("8. Werner/CHSH: optimized value 2*sqrt(2)*W +-1e-6 for "
              "W in {0.6, 1/sqrt(2), 0.8, 1.0}; crossing 2 at W = 0.70711 +-1e-4");
  // Settings optimized once by see-saw, realized as Bloch directions; the
  // singlet's E = -a.b flips Bob's vectors.
  const CorrelationInequality chsh = catalog("CHSH");
  const SeesawResult opt = seesaw_value(chsh, 3);
  std::vector<BlochSetting> alice, bob;
  for (const auto& v : opt.strategy.a_vectors)
    alice.push_back(BlochSetting::normalized(v(0), v(1), v(2)));
  for (const auto& v : opt.strategy.b_vectors)
    bob.push_back(BlochSetting::normalized(-v(0), -v(1), -v(2)));

  const auto optimized_value = [&](double w) {
    const Behavior b = behavior_from_quantum(werner_density(w), bloch_measurements(alice),
                                             bloch_measurements(bob));
    return evaluate_correlation(chsh, correlators_from_behavior(b));
  };
  for (const double w : {0.6, 1.0 / std::sqrt(2.0), 0.8, 1.0}) {
    const double value = optimized_value(w);
    check(near(value, 2.0 * std::sqrt(2.0) * w, 1e-6),
          "W=" + fmt(w) + ": " + fmt(value));
  }
  double lo = 0.5, hi = 1.0;
  while (hi - lo > 1e-7) {
    const double mid = (lo + hi) / 2;
    (optimized_value(mid) > 2.0 ? hi : lo) = mid;
  }
  check(near(hi, 0.70711, 1e-4), "crossing at W = " + fmt(hi));
}

void criterion_9_detection() {
  Criterion c("9. detection loophole: symmetric CHSH threshold 0.828427 +-1e-4 at "
              "theta = pi/4; strictly smaller at theta = 0.2");
  const CorrelationInequality chsh = catalog("CHSH");
  const auto full = detection_threshold(chsh, kPi / 4, DetectionThresholdQuery{});
  check(full.has_value(), "no threshold found at maximal entanglement");
  if (full) check(near(full->eta_star, 0.828427, 1e-4), "eta* = " + fmt(full->eta_star));
  const auto partial = detection_threshold(chsh, 0.2, DetectionThresholdQuery{});
  check(partial.has_value(), "no threshold found at theta = 0.2");
  if (full && partial) {
    check(partial->eta_star < full->eta_star,
          "partial " + fmt(partial->eta_star) + " !< " + fmt(full->eta_star));
  }
}

void criterion_10_facets() {
  Criterion c("10. facet certification: CHSH rank 7 in dim 8; AS4 and AS6 facets; "
              "S3x4 not a facet (exact ranks)");
  const auto start = std::chrono::steady_clock::now();
  const FacetReport chsh = facet_check(catalog("CHSH"));
  check(chsh.is_facet && chsh.polytope_dim == 8 && chsh.affine_rank == 7,
        "CHSH: rank " + std::to_string(chsh.affine_rank) + " dim " +
            std::to_string(chsh.polytope_dim));
  check(facet_check(catalog("AS4")).is_facet, "AS4 not certified as a facet");
  check(facet_check(catalog("AS6")).is_facet, "AS6 not certified as a facet");
  check(!facet_check(catalog("S3x4")).is_facet, "S3x4 wrongly certified as a facet");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(seconds < 30.0, "took " + fmt(seconds) + "s (limit 30s)");
}

void criterion_11_property_suites() {
  Criterion c("11. properties: see-saw monotone; quantum behaviors non-signaling "
              "(1e-9); closed form vs trace (1e-12, 10^4 draws); fast vs naive "
              "enumeration (m_a+m_b <= 16); scaling invariance");

  // See-saw monotonicity, several inequalities and seeds.
  for (const char* name : {"CHSH", "AS4", "AS6", "S3x4"}) {
    for (const std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
      OptimizerConfig cfg;
      cfg.seed = seed;
      cfg.record_trace = true;
      const SeesawResult r = seesaw_value(catalog(name), 3, cfg);
      for (std::size_t i = 1; i < r.trace.size(); ++i) {
        if (r.trace[i] < r.trace[i - 1] - 1e-12) {
          check(false, std::string(name) + ": trace decreased at sweep " + std::to_string(i));
          break;
        }
      }
    }
  }

  // Non-signaling of quantum behaviors.
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, kPi / 4);
  const auto random_setting = [&]() {
    double x, y, z, norm;
    do {
      x = gauss(rng);
      y = gauss(rng);
      z = gauss(rng);
      norm = std::sqrt(x * x + y * y + z * z);
    } while (norm < 1e-6);
    return BlochSetting(x / norm, y / norm, z / norm);
  };
  for (int trial = 0; trial < 25; ++trial) {
    const Behavior b = behavior_from_quantum(
        partial_state_density(angle(rng)),
        bloch_measurements({random_setting(), random_setting()}),
        bloch_measurements({random_setting(), random_setting()}));
    if (!nonsignaling_check(b, 1e-9).passes) {
      check(false, "two-qubit behavior signals at trial " + std::to_string(trial));
      break;
    }
  }
  for (const int m : {2, 3, 4}) {
    const ShbQuantumStrategy s = shb_quantum_score(m);
    const Behavior b = behavior_from_quantum(s.state, s.alice, s.bob);
    check(nonsignaling_check(b, 1e-9).passes,
          "SHB strategy signals at m = " + std::to_string(m));
  }

  // Closed-form correlators against the Born rule, 10^4 draws.
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double theta = angle(rng);
    const BlochSetting a = random_setting(), b = random_setting();
    const TwoQubitCorrelators closed = two_qubit_correlators(theta, a, b);
    const Behavior via_trace = behavior_from_quantum(
        partial_state_density(theta), bloch_measurements({a}), bloch_measurements({b}));
    double e = 0.0, ma = 0.0, mb = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double p = via_trace.p(0, 0, i, j);
        e += outcome_sign(i) * outcome_sign(j) * p;
        ma += outcome_sign(i) * p;
        mb += outcome_sign(j) * p;
      }
    worst = std::max({worst, std::abs(closed.E - e), std::abs(closed.A - ma),
                      std::abs(closed.B - mb)});
  }
  check(worst <= 1e-12, "closed form vs trace: worst deviation " + fmt(worst));

  // Gray-code enumeration against the naive double loop.
  std::uniform_int_distribution<int> small_coeff(-3, 3);
  const auto naive_bound = [](const CorrelationInequality& ineq) {
    Rational best(INT64_MIN);
    for (std::uint64_t am = 0; am < (1ULL << ineq.m_a()); ++am)
      for (std::uint64_t bm = 0; bm < (1ULL << ineq.m_b()); ++bm) {
        Rational value(0);
        for (int x = 0; x < ineq.m_a(); ++x)
          for (int y = 0; y < ineq.m_b(); ++y)
            value += ineq.coeff(x, y) *
                     Rational(((am >> x) & 1 ? -1 : 1) * ((bm >> y) & 1 ? -1 : 1));
        if (best < value) best = value;
      }
    return best;
  };
  std::uniform_int_distribution<int> side(1, 8);
  for (int trial = 0; trial < 30; ++trial) {
    int m_a = side(rng), m_b = side(rng);
    std::vector<Rational> coeffs;
    for (int i = 0; i < m_a * m_b; ++i) coeffs.emplace_back(small_coeff(rng));
    const CorrelationInequality ineq("random", m_a, m_b, std::move(coeffs));
    if (local_bound_correlation(ineq) != naive_bound(ineq)) {
      check(false, "enumeration mismatch at trial " + std::to_string(trial));
      break;
    }
  }
  for (const char* name : {"CHSH", "AS4", "AS8", "D4", "D5_2", "D6_3", "S3x4"}) {
    const CorrelationInequality ineq = catalog(name);
    check(local_bound_correlation(ineq) == naive_bound(ineq),
          std::string(name) + ": fast and naive enumeration disagree");
  }

  // Positive scaling: bound and value scale, threshold does not, and the
  // deterministic argmax set (the saturating vertices) is exactly unchanged.
  const CorrelationInequality chsh = catalog("CHSH");
  CorrelationInequality scaled = chsh.scaled(Rational(7, 3));
  check(local_bound_correlation(scaled) == Rational(14, 3), "scaled bound");
  OptimizerConfig cfg;
  cfg.seed = 3;
  const SeesawResult base = seesaw_value(chsh, 2, cfg);
  const SeesawResult big = seesaw_value(scaled, 2, cfg);
  check(near(big.value, 7.0 / 3.0 * base.value, 1e-9), "scaled see-saw value");
  check(near(visibility_threshold(scaled, 2, cfg), visibility_threshold(chsh, 2, cfg), 1e-12),
        "visibility moved under scaling");
  scaled.set_bound(local_bound_correlation(scaled));
  const FacetReport base_facet = facet_check(chsh);
  const FacetReport scaled_facet = facet_check(scaled);
  check(base_facet.saturating_vertex_count == scaled_facet.saturating_vertex_count &&
            base_facet.affine_rank == scaled_facet.affine_rank,
        "saturating vertex set moved under scaling");
}

}  // namespace

int main() {
  criterion_1_local_bounds();
  criterion_2_as_closed_form();
  criterion_3_quantum_values();
  criterion_4_visibility_thresholds();
  criterion_5_grand_circle();
  criterion_6_geometry();
  criterion_7_shb();
  criterion_8_werner();
  criterion_9_detection();
  criterion_10_facets();
  criterion_11_property_suites();
  if (failures == 0) {
    std::printf("ACCEPTANCE: all 11 criteria passed\n");
  } else {
    std::printf("ACCEPTANCE: %d check(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
