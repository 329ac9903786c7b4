#include "bellkit/families.hpp"

#include <map>
#include <stdexcept>

#include "bellkit/local_bounds.hpp"

namespace bell {

namespace {

CorrelationInequality build_as(const std::string& name, int n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("gen_as: n must be even and >= 2");
  }
  std::vector<Rational> coeffs(static_cast<std::size_t>(n) * n, Rational(0));
  for (int col = 0; col < n; ++col) coeffs[col] = Rational(1);
  for (int k = 2; k <= n; ++k) {
    const int ones = n - k + 1;
    const std::size_t row = static_cast<std::size_t>(k - 1) * n;
    for (int col = 0; col < ones; ++col) coeffs[row + col] = Rational(1);
    coeffs[row + ones] = Rational(-std::min<std::int64_t>(k - 1, ones));
  }
  return CorrelationInequality(name, n, n, std::move(coeffs));
}

}  // namespace

Rational as_bound_formula(int n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("as_bound_formula: n must be even and >= 2");
  }
  return Rational(static_cast<std::int64_t>(n) * (n + 2), 4);
}

CorrelationInequality gen_as(int n) {
  CorrelationInequality ineq = build_as("AS" + std::to_string(n), n);
  if (n <= 26) {
    ineq.set_bound(local_bound_correlation(ineq));
  } else {
    ineq.set_bound(as_bound_formula(n), /*conjectured=*/true);
  }
  return ineq;
}

CorrelationInequality gen_d(const std::vector<std::int64_t>& first_row) {
  if (first_row.empty()) {
    throw std::invalid_argument("gen_d: first row must be non-empty");
  }
  const int n = static_cast<int>(first_row.size());
  std::vector<Rational> coeffs(static_cast<std::size_t>(n) * n);
  std::vector<std::int64_t> row = first_row;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) coeffs[static_cast<std::size_t>(r) * n + c] = Rational(row[c]);
    if (r + 1 < n) {
      std::vector<std::int64_t> next(row.begin() + 1, row.end());
      next.push_back(-row.front());
      row = std::move(next);
    }
  }
  CorrelationInequality ineq("D" + std::to_string(n), n, n, std::move(coeffs));
  ineq.set_bound(local_bound_correlation(ineq));
  return ineq;
}

namespace {

struct CatalogEntry {
  std::int64_t bound;
  CorrelationInequality (*build)();
};

CorrelationInequality build_s3x4() {
  // Displayed with Bob's 4 settings as rows and Alice's 3 as columns.
  const std::vector<Rational> display = {
      Rational(1),  Rational(1),  Rational(1),   //
      Rational(1),  Rational(-1), Rational(-1),  //
      Rational(-1), Rational(1),  Rational(-1),  //
      Rational(-1), Rational(-1), Rational(1),
  };
  return CorrelationInequality("S3x4", /*m_a=*/3, /*m_b=*/4, display,
                               /*rows_are_bob=*/true);
}

const std::map<std::string, CatalogEntry>& catalog_table() {
  static const std::map<std::string, CatalogEntry> table = {
      {"CHSH", {2, [] { return build_as("CHSH", 2); }}},
      {"AS4", {6, [] { return build_as("AS4", 4); }}},
      {"AS6", {12, [] { return build_as("AS6", 6); }}},
      {"AS8", {20, [] { return build_as("AS8", 8); }}},
      {"D4", {10, [] { return gen_d({2, 1, 1, 2}); }}},
      {"D5_1", {8, [] { return gen_d({1, 1, 0, 1, 1}); }}},
      {"D5_2", {20, [] { return gen_d({3, 2, 1, 1, 3}); }}},
      {"D6_1", {10, [] { return gen_d({1, 0, 1, 0, 1, 1}); }}},
      {"D6_2", {28, [] { return gen_d({3, 1, 1, 1, 2, 4}); }}},
      {"D6_3", {36, [] { return gen_d({4, 2, 2, 1, 2, 5}); }}},
      {"D6_4", {42, [] { return gen_d({4, 2, 2, 1, 3, 6}); }}},
      {"S3x4", {6, build_s3x4}},
  };
  return table;
}

}  // namespace

CorrelationInequality catalog(const std::string& name) {
  const auto& table = catalog_table();
  const auto it = table.find(name);
  if (it == table.end()) {
    throw std::invalid_argument("catalog: unknown inequality '" + name + "'");
  }
  CorrelationInequality ineq = it->second.build();
  const Rational derived = local_bound_correlation(ineq);
  if (derived != Rational(it->second.bound)) {
    throw std::logic_error("catalog: stored bound for " + name +
                           " disagrees with enumeration (" + derived.to_string() + ")");
  }
  ineq.set_bound(derived);
  // The D entries carry generic generator names; restore the catalog key.
  if (ineq.name() != name) {
    std::vector<Rational> coeffs;
    coeffs.reserve(static_cast<std::size_t>(ineq.display_rows()) * ineq.display_cols());
    for (int r = 0; r < ineq.display_rows(); ++r)
      for (int c = 0; c < ineq.display_cols(); ++c) coeffs.push_back(ineq.display_coeff(r, c));
    CorrelationInequality renamed(name, ineq.m_a(), ineq.m_b(), std::move(coeffs),
                                  ineq.rows_are_bob());
    renamed.set_bound(derived);
    return renamed;
  }
  return ineq;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, entry] : catalog_table()) out.push_back(name);
    return out;
  }();
  return names;
}

}  // namespace bell
