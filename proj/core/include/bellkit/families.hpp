#pragma once

#include <string>
#include <vector>

#include "bellkit/inequality.hpp"

namespace bell {

// AS_n family: n even inputs per side, binary outcomes. Row 1 is all +1;
// row k (2 <= k <= n) has +1 in columns 1..(n-k+1), then -min(k-1, n-k+1),
// then zeros. AS_2 is CHSH. The local bound is attached by exact enumeration
// for n <= 26 and by the closed form n(n+2)/4 (flagged conjectured) beyond.
CorrelationInequality gen_as(int n);

// Closed-form AS_n local bound n(n+2)/4; proven by enumeration for n <= 26
// within this library, conjectured beyond.
Rational as_bound_formula(int n);

// D family: square matrix built from its first row by the shift rule --
// each next row is the previous one cyclically shifted left with the
// wrapped-around entry negated. The bound is attached by enumeration.
CorrelationInequality gen_d(const std::vector<std::int64_t>& first_row);

// Built-in named inequalities with their bounds pre-attached. Each catalog
// load re-derives the bound by enumeration and refuses to return an
// inequality whose stored bound fails that check.
CorrelationInequality catalog(const std::string& name);

const std::vector<std::string>& catalog_names();

}  // namespace bell
