#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bellkit/behavior.hpp"
#include "bellkit/rational.hpp"

namespace bell {

// Full-correlation bipartite Bell inequality  sum_xy M_xy E(x,y) <= bound.
//
// Coefficients are stored in display orientation: normally rows are Alice's
// inputs, but a matrix conventionally written with Bob's inputs as rows
// (S3x4) keeps that layout and sets rows_are_bob. coeff(x, y) always takes
// (Alice, Bob) regardless of orientation.
class CorrelationInequality {
 public:
  CorrelationInequality(std::string name, int m_a, int m_b,
                        std::vector<Rational> display_coeffs,
                        bool rows_are_bob = false);

  const std::string& name() const { return name_; }
  int m_a() const { return m_a_; }
  int m_b() const { return m_b_; }
  bool rows_are_bob() const { return rows_are_bob_; }
  int display_rows() const { return rows_are_bob_ ? m_b_ : m_a_; }
  int display_cols() const { return rows_are_bob_ ? m_a_ : m_b_; }

  const Rational& coeff(int x, int y) const {
    return rows_are_bob_ ? display_coeff(y, x) : display_coeff(x, y);
  }
  const Rational& display_coeff(int row, int col) const {
    return coeffs_[static_cast<std::size_t>(row) * display_cols() + col];
  }

  const std::optional<Rational>& bound() const { return bound_; }
  bool bound_conjectured() const { return bound_conjectured_; }
  void set_bound(Rational bound, bool conjectured = false) {
    bound_ = bound;
    bound_conjectured_ = conjectured;
  }

  CorrelationInequality scaled(const Rational& factor) const;

 private:
  std::string name_;
  int m_a_, m_b_;
  bool rows_are_bob_;
  std::vector<Rational> coeffs_;
  std::optional<Rational> bound_;
  bool bound_conjectured_ = false;
};

// General bipartite inequality  sum C_ab^xy p(a,b|x,y) <= bound,
// coefficient tensor indexed (a, b, x, y).
class ProbabilityInequality {
 public:
  ProbabilityInequality(std::string name, int n_a, int n_b, int k_a, int k_b,
                        std::vector<Rational> coeffs);

  const std::string& name() const { return name_; }
  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int k_a() const { return k_a_; }
  int k_b() const { return k_b_; }

  const Rational& coeff(int a, int b, int x, int y) const {
    return coeffs_[index(a, b, x, y)];
  }
  std::size_t index(int a, int b, int x, int y) const {
    return ((static_cast<std::size_t>(a) * k_b_ + b) * n_a_ + x) * n_b_ + y;
  }

  const std::optional<Rational>& bound() const { return bound_; }
  bool bound_conjectured() const { return bound_conjectured_; }
  void set_bound(Rational bound, bool conjectured = false) {
    bound_ = bound;
    bound_conjectured_ = conjectured;
  }

 private:
  std::string name_;
  int n_a_, n_b_, k_a_, k_b_;
  std::vector<Rational> coeffs_;
  std::optional<Rational> bound_;
  bool bound_conjectured_ = false;
};

double evaluate_correlation(const CorrelationInequality& ineq,
                            const CorrelatorTable& table);

double evaluate_probability(const ProbabilityInequality& ineq, const Behavior& b);

// Canonical embedding of a correlation inequality into probability form:
// C_ab^xy = M_xy * sign(a) * sign(b); the bound carries over unchanged.
ProbabilityInequality to_probability_form(const CorrelationInequality& ineq);

using AnyInequality = std::variant<CorrelationInequality, ProbabilityInequality>;

// JSON document format shared by files and the CLI:
//   {"name": str, "form": "correlation"|"probability",
//    "mA": int, "mB": int, "kA": int, "kB": int,
//    "coefficients": nested arrays (integers or "p/q" strings),
//    "bound": optional rational, "boundConjectured": present only when true}
// Correlation coefficients are written with Alice's inputs as rows;
// probability coefficients are nested [a][b][x][y].
std::string to_json(const CorrelationInequality& ineq, int indent = -1);
std::string to_json(const ProbabilityInequality& ineq, int indent = -1);
AnyInequality inequality_from_json(const std::string& text);

}  // namespace bell
