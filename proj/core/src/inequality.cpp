#include "bellkit/inequality.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace bell {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

CorrelationInequality::CorrelationInequality(std::string name, int m_a, int m_b,
                                             std::vector<Rational> display_coeffs,
                                             bool rows_are_bob)
    : name_(std::move(name)), m_a_(m_a), m_b_(m_b), rows_are_bob_(rows_are_bob),
      coeffs_(std::move(display_coeffs)) {
  require(m_a_ >= 1 && m_b_ >= 1, "CorrelationInequality: input counts must be >= 1");
  require(coeffs_.size() == static_cast<std::size_t>(m_a_) * m_b_,
          "CorrelationInequality: coefficient matrix has wrong size");
}

CorrelationInequality CorrelationInequality::scaled(const Rational& factor) const {
  std::vector<Rational> scaled_coeffs = coeffs_;
  for (Rational& c : scaled_coeffs) c *= factor;
  CorrelationInequality out(name_, m_a_, m_b_, std::move(scaled_coeffs), rows_are_bob_);
  if (bound_) out.set_bound(*bound_ * factor, bound_conjectured_);
  return out;
}

ProbabilityInequality::ProbabilityInequality(std::string name, int n_a, int n_b,
                                             int k_a, int k_b,
                                             std::vector<Rational> coeffs)
    : name_(std::move(name)), n_a_(n_a), n_b_(n_b), k_a_(k_a), k_b_(k_b),
      coeffs_(std::move(coeffs)) {
  require(n_a_ >= 1 && n_b_ >= 1 && k_a_ >= 1 && k_b_ >= 1,
          "ProbabilityInequality: counts must be >= 1");
  require(coeffs_.size() ==
              static_cast<std::size_t>(k_a_) * k_b_ * n_a_ * n_b_,
          "ProbabilityInequality: coefficient tensor has wrong size");
}

double evaluate_correlation(const CorrelationInequality& ineq,
                            const CorrelatorTable& table) {
  require(table.m_a() == ineq.m_a() && table.m_b() == ineq.m_b(),
          "evaluate_correlation: dimension mismatch");
  double value = 0.0;
  for (int x = 0; x < ineq.m_a(); ++x)
    for (int y = 0; y < ineq.m_b(); ++y)
      value += ineq.coeff(x, y).to_double() * table.E(x, y);
  return value;
}

double evaluate_probability(const ProbabilityInequality& ineq, const Behavior& b) {
  require(b.n_a() == ineq.n_a() && b.n_b() == ineq.n_b() &&
              b.k_a() == ineq.k_a() && b.k_b() == ineq.k_b(),
          "evaluate_probability: shape mismatch");
  double value = 0.0;
  for (int a = 0; a < ineq.k_a(); ++a)
    for (int bb = 0; bb < ineq.k_b(); ++bb)
      for (int x = 0; x < ineq.n_a(); ++x)
        for (int y = 0; y < ineq.n_b(); ++y)
          value += ineq.coeff(a, bb, x, y).to_double() * b.p(x, y, a, bb);
  return value;
}

ProbabilityInequality to_probability_form(const CorrelationInequality& ineq) {
  const int n_a = ineq.m_a(), n_b = ineq.m_b();
  std::vector<Rational> tensor(static_cast<std::size_t>(4) * n_a * n_b);
  const auto index = [&](int a, int b, int x, int y) {
    return ((static_cast<std::size_t>(a) * 2 + b) * n_a + x) * n_b + y;
  };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < n_a; ++x)
        for (int y = 0; y < n_b; ++y)
          tensor[index(a, b, x, y)] =
              ineq.coeff(x, y) * Rational(outcome_sign(a) * outcome_sign(b));
  ProbabilityInequality result(ineq.name(), n_a, n_b, 2, 2, std::move(tensor));
  if (ineq.bound()) result.set_bound(*ineq.bound(), ineq.bound_conjectured());
  return result;
}

namespace {

using nlohmann::json;

json rational_to_json(const Rational& r) {
  if (r.is_integer()) return json(r.num());
  return json(r.to_string());
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("inequality JSON: coefficient must be integer or 'p/q' string");
}

void attach_bound(json& doc, const std::optional<Rational>& bound, bool conjectured) {
  if (bound) {
    doc["bound"] = rational_to_json(*bound);
    if (conjectured) doc["boundConjectured"] = true;
  }
}

std::string dump(const json& doc, int indent) {
  return indent >= 0 ? doc.dump(indent) : doc.dump();
}

}  // namespace

std::string to_json(const CorrelationInequality& ineq, int indent) {
  json rows = json::array();
  // Files always use Alice-rows orientation, whatever the display layout.
  for (int x = 0; x < ineq.m_a(); ++x) {
    json row = json::array();
    for (int y = 0; y < ineq.m_b(); ++y) row.push_back(rational_to_json(ineq.coeff(x, y)));
    rows.push_back(std::move(row));
  }
  json doc = {{"name", ineq.name()},   {"form", "correlation"},
              {"mA", ineq.m_a()},      {"mB", ineq.m_b()},
              {"kA", 2},               {"kB", 2},
              {"coefficients", rows}};
  attach_bound(doc, ineq.bound(), ineq.bound_conjectured());
  return dump(doc, indent);
}

std::string to_json(const ProbabilityInequality& ineq, int indent) {
  json tensor = json::array();
  for (int a = 0; a < ineq.k_a(); ++a) {
    json level_a = json::array();
    for (int b = 0; b < ineq.k_b(); ++b) {
      json level_b = json::array();
      for (int x = 0; x < ineq.n_a(); ++x) {
        json level_x = json::array();
        for (int y = 0; y < ineq.n_b(); ++y)
          level_x.push_back(rational_to_json(ineq.coeff(a, b, x, y)));
        level_b.push_back(std::move(level_x));
      }
      level_a.push_back(std::move(level_b));
    }
    tensor.push_back(std::move(level_a));
  }
  json doc = {{"name", ineq.name()},   {"form", "probability"},
              {"mA", ineq.n_a()},      {"mB", ineq.n_b()},
              {"kA", ineq.k_a()},      {"kB", ineq.k_b()},
              {"coefficients", tensor}};
  attach_bound(doc, ineq.bound(), ineq.bound_conjectured());
  return dump(doc, indent);
}

namespace {

AnyInequality inequality_from_parsed(const json& doc);

}  // namespace

AnyInequality inequality_from_json(const std::string& text) {
  try {
    return inequality_from_parsed(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("inequality JSON: ") + e.what());
  }
}

namespace {

AnyInequality inequality_from_parsed(const json& doc) {
  const std::string form = doc.at("form").get<std::string>();
  const std::string name = doc.value("name", "unnamed");
  const int m_a = doc.at("mA").get<int>();
  const int m_b = doc.at("mB").get<int>();
  const int k_a = doc.at("kA").get<int>();
  const int k_b = doc.at("kB").get<int>();
  const json& coeffs = doc.at("coefficients");

  std::optional<Rational> bound;
  bool conjectured = false;
  if (doc.contains("bound") && !doc["bound"].is_null()) {
    bound = rational_from_json(doc["bound"]);
    conjectured = doc.value("boundConjectured", false);
  }

  if (form == "correlation") {
    require(k_a == 2 && k_b == 2, "inequality JSON: correlation form requires kA = kB = 2");
    require(coeffs.is_array() && static_cast<int>(coeffs.size()) == m_a,
            "inequality JSON: expected mA coefficient rows");
    std::vector<Rational> matrix;
    matrix.reserve(static_cast<std::size_t>(m_a) * m_b);
    for (const json& row : coeffs) {
      require(row.is_array() && static_cast<int>(row.size()) == m_b,
              "inequality JSON: expected mB coefficients per row");
      for (const json& c : row) matrix.push_back(rational_from_json(c));
    }
    CorrelationInequality ineq(name, m_a, m_b, std::move(matrix));
    if (bound) ineq.set_bound(*bound, conjectured);
    return ineq;
  }
  if (form == "probability") {
    std::vector<Rational> tensor(static_cast<std::size_t>(k_a) * k_b * m_a * m_b);
    require(coeffs.is_array() && static_cast<int>(coeffs.size()) == k_a,
            "inequality JSON: expected kA outer entries");
    ProbabilityInequality shape(name, m_a, m_b, k_a, k_b, tensor);
    for (int a = 0; a < k_a; ++a) {
      const json& level_a = coeffs.at(a);
      require(level_a.is_array() && static_cast<int>(level_a.size()) == k_b,
              "inequality JSON: expected kB entries");
      for (int b = 0; b < k_b; ++b) {
        const json& level_b = level_a.at(b);
        require(level_b.is_array() && static_cast<int>(level_b.size()) == m_a,
                "inequality JSON: expected mA entries");
        for (int x = 0; x < m_a; ++x) {
          const json& level_x = level_b.at(x);
          require(level_x.is_array() && static_cast<int>(level_x.size()) == m_b,
                  "inequality JSON: expected mB entries");
          for (int y = 0; y < m_b; ++y)
            tensor[shape.index(a, b, x, y)] = rational_from_json(level_x.at(y));
        }
      }
    }
    ProbabilityInequality ineq(name, m_a, m_b, k_a, k_b, std::move(tensor));
    if (bound) ineq.set_bound(*bound, conjectured);
    return ineq;
  }
  throw std::invalid_argument("inequality JSON: unknown form '" + form + "'");
}

}  // namespace

}  // namespace bell
