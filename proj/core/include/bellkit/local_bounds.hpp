#pragma once

#include <string>

#include "bellkit/inequality.hpp"

namespace bell {

enum class PolytopeSpace { full, correlation };

// Result of certifying an inequality against the local polytope.
// is_facet holds exactly when the vertices saturating the bound span an
// affine subspace of dimension polytope_dim - 1.
struct FacetReport {
  bool is_facet = false;
  int polytope_dim = 0;
  long long saturating_vertex_count = 0;
  int affine_rank = 0;
  PolytopeSpace space = PolytopeSpace::full;
};

// Exact local bound max over deterministic strategies of sum_xy M_xy a_x b_y.
// Enumerates the smaller side's +-1 assignments (2^(m-1) after the global
// sign symmetry) with Gray-code increments; the other side answers with the
// sign of each row sum. Errors with LimitError when min(m_a, m_b) > 30.
Rational local_bound_correlation(const CorrelationInequality& ineq);

// Exact local bound for probability-form inequalities: enumerate Alice's
// k_a^{n_a} deterministic strategies (capped at 10^7), Bob responds per
// input independently.
Rational local_bound_probability(const ProbabilityInequality& ineq);

// Certifies tightness by exact affine-rank computation over the saturating
// deterministic vertices (fraction-free integer elimination, no floats).
// Requires the bound to be present; vertex count capped at 2^26.
FacetReport facet_check(const CorrelationInequality& ineq,
                        PolytopeSpace space = PolytopeSpace::full);
FacetReport facet_check(const ProbabilityInequality& ineq);

std::string to_json(const FacetReport& report, int indent = -1);

}  // namespace bell
