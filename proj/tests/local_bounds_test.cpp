#include "bellkit/local_bounds.hpp"

#include <algorithm>
#include <random>

#include "bellkit/errors.hpp"
#include "bellkit/families.hpp"
#include "bellkit/shb.hpp"
#include "gtest/gtest.h"

using namespace bell;

namespace {

// Independent oracle: walk every one of the 2^(m_a+m_b) sign assignments
// with no shortcuts. Only usable for small instances, which is the point.
Rational naive_local_bound(const CorrelationInequality& ineq) {
  const int m_a = ineq.m_a(), m_b = ineq.m_b();
  Rational best(INT64_MIN);
  for (std::uint64_t am = 0; am < (1ULL << m_a); ++am) {
    for (std::uint64_t bm = 0; bm < (1ULL << m_b); ++bm) {
      Rational value(0);
      for (int x = 0; x < m_a; ++x)
        for (int y = 0; y < m_b; ++y) {
          const int sign = ((am >> x) & 1 ? -1 : 1) * ((bm >> y) & 1 ? -1 : 1);
          value += ineq.coeff(x, y) * Rational(sign);
        }
      best = std::max(best, value);
    }
  }
  return best;
}

CorrelationInequality random_inequality(int m_a, int m_b, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<Rational> coeffs;
  coeffs.reserve(static_cast<std::size_t>(m_a) * m_b);
  for (int i = 0; i < m_a * m_b; ++i) coeffs.emplace_back(coeff(rng));
  return CorrelationInequality("random", m_a, m_b, std::move(coeffs));
}

}  // namespace

TEST(LocalBoundCorrelation, CatalogBoundsMatchTheirSources) {
  const std::vector<std::pair<std::string, std::int64_t>> expected = {
      {"CHSH", 2},  {"AS4", 6},   {"AS6", 12},  {"AS8", 20},
      {"D4", 10},   {"D5_1", 8},  {"D5_2", 20}, {"D6_1", 10},
      {"D6_2", 28}, {"D6_3", 36}, {"D6_4", 42}, {"S3x4", 6},
  };
  for (const auto& [name, bound] : expected) {
    EXPECT_EQ(local_bound_correlation(catalog(name)), Rational(bound)) << name;
  }
}

TEST(LocalBoundCorrelation, D6_3FromShiftRule) {
  EXPECT_EQ(*gen_d({4, 2, 2, 1, 2, 5}).bound(), Rational(36));
}

TEST(LocalBoundCorrelation, AgreesWithNaiveEnumeration) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> size(1, 5);
    const CorrelationInequality ineq = random_inequality(size(rng), size(rng), rng);
    ASSERT_EQ(local_bound_correlation(ineq), naive_local_bound(ineq));
  }
  // Larger asymmetric shapes, still within the naive oracle's reach.
  for (const auto& [m_a, m_b] : std::vector<std::pair<int, int>>{{8, 8}, {3, 10}, {10, 3}}) {
    const CorrelationInequality ineq = random_inequality(m_a, m_b, rng);
    ASSERT_EQ(local_bound_correlation(ineq), naive_local_bound(ineq));
  }
  for (const char* name : {"CHSH", "AS4", "D4", "D5_1", "D6_2", "S3x4"}) {
    const CorrelationInequality ineq = catalog(name);
    ASSERT_EQ(local_bound_correlation(ineq), naive_local_bound(ineq)) << name;
  }
}

TEST(LocalBoundCorrelation, RationalCoefficientsStayExact) {
  // Halving all coefficients halves the bound, with no float in sight.
  CorrelationInequality chsh = catalog("CHSH");
  const CorrelationInequality half = chsh.scaled(Rational(1, 2));
  EXPECT_EQ(local_bound_correlation(half), Rational(1));
  const CorrelationInequality thirds = chsh.scaled(Rational(2, 3));
  EXPECT_EQ(local_bound_correlation(thirds), Rational(4, 3));
}

TEST(LocalBoundCorrelation, EveryVertexRespectsTheBoundAndOneSaturates) {
  std::mt19937_64 rng(5);
  for (const char* name : {"CHSH", "AS4", "D4", "S3x4"}) {
    const CorrelationInequality ineq = catalog(name);
    const Rational bound = *ineq.bound();
    bool saturated = false;
    for (std::uint64_t am = 0; am < (1ULL << ineq.m_a()); ++am) {
      for (std::uint64_t bm = 0; bm < (1ULL << ineq.m_b()); ++bm) {
        Rational value(0);
        for (int x = 0; x < ineq.m_a(); ++x)
          for (int y = 0; y < ineq.m_b(); ++y) {
            const int sign = ((am >> x) & 1 ? -1 : 1) * ((bm >> y) & 1 ? -1 : 1);
            value += ineq.coeff(x, y) * Rational(sign);
          }
        ASSERT_LE(value, bound);
        saturated = saturated || value == bound;
      }
    }
    EXPECT_TRUE(saturated) << name;
  }
}

TEST(LocalBoundCorrelation, EnumerationCapIsEnforced) {
  const CorrelationInequality big("big", 31, 31,
                                  std::vector<Rational>(31 * 31, Rational(1)));
  EXPECT_THROW(local_bound_correlation(big), LimitError);
}

TEST(LocalBoundProbability, ShbExamples) {
  EXPECT_EQ(local_bound_probability(shb_inequality(2, 2)), Rational(2));
  EXPECT_EQ(local_bound_probability(shb_inequality(3, 2)), Rational(6));
}

TEST(LocalBoundProbability, SingleInputSingleOutcome) {
  const ProbabilityInequality trivial("five", 1, 1, 1, 1, {Rational(5)});
  EXPECT_EQ(local_bound_probability(trivial), Rational(5));
}

TEST(LocalBoundProbability, MatchesCorrelationBoundThroughTheEmbedding) {
  for (const char* name : {"CHSH", "AS4", "D4"}) {
    const CorrelationInequality ineq = catalog(name);
    EXPECT_EQ(local_bound_probability(to_probability_form(ineq)), *ineq.bound()) << name;
  }
}

TEST(LocalBoundProbability, EveryDeterministicBehaviorRespectsTheBound) {
  // Exhaustive over the vertex behaviors, through the Behavior path.
  struct Case {
    ProbabilityInequality ineq;
    double bound;
  };
  const std::vector<Case> cases = {
      {to_probability_form(catalog("CHSH")), 2.0},
      {shb_inequality(2, 2), 2.0},
      {shb_inequality(2, 3), 2.0},
  };
  for (const Case& c : cases) {
    double best = -1e300;
    std::vector<int> alice(c.ineq.n_a(), 0), bob(c.ineq.n_b(), 0);
    while (true) {
      bob.assign(c.ineq.n_b(), 0);
      while (true) {
        const Behavior b = deterministic_behavior({alice, bob}, c.ineq.k_a(), c.ineq.k_b());
        const double value = evaluate_probability(c.ineq, b);
        ASSERT_LE(value, c.bound + 1e-12) << c.ineq.name();
        best = std::max(best, value);
        int pos = 0;
        while (pos < c.ineq.n_b() && ++bob[pos] == c.ineq.k_b()) bob[pos++] = 0;
        if (pos == c.ineq.n_b()) break;
      }
      int pos = 0;
      while (pos < c.ineq.n_a() && ++alice[pos] == c.ineq.k_a()) alice[pos++] = 0;
      if (pos == c.ineq.n_a()) break;
    }
    EXPECT_NEAR(best, c.bound, 1e-12) << c.ineq.name();
  }
}

TEST(FacetCheck, ChshIsAFacetInBothSpaces) {
  const CorrelationInequality chsh = catalog("CHSH");
  const FacetReport full = facet_check(chsh, PolytopeSpace::full);
  EXPECT_TRUE(full.is_facet);
  EXPECT_EQ(full.polytope_dim, 8);
  EXPECT_EQ(full.affine_rank, 7);
  EXPECT_EQ(full.saturating_vertex_count, 8);

  const FacetReport corr = facet_check(chsh, PolytopeSpace::correlation);
  EXPECT_TRUE(corr.is_facet);
  EXPECT_EQ(corr.polytope_dim, 4);
  EXPECT_EQ(corr.affine_rank, 3);
}

TEST(FacetCheck, AsFamilyIsTightInBothSpaces) {
  for (const char* name : {"AS4", "AS6"}) {
    const CorrelationInequality ineq = catalog(name);
    EXPECT_TRUE(facet_check(ineq, PolytopeSpace::full).is_facet) << name;
    EXPECT_TRUE(facet_check(ineq, PolytopeSpace::correlation).is_facet) << name;
  }
}

TEST(FacetCheck, S3x4IsNotAFacetInEitherSpace) {
  const CorrelationInequality s = catalog("S3x4");
  const FacetReport full = facet_check(s, PolytopeSpace::full);
  EXPECT_FALSE(full.is_facet);
  EXPECT_EQ(full.polytope_dim, 19);
  EXPECT_EQ(full.affine_rank, 7);
  EXPECT_EQ(full.saturating_vertex_count, 8);
  EXPECT_FALSE(facet_check(s, PolytopeSpace::correlation).is_facet);
}

TEST(FacetCheck, SurvivesLocalRelabelings) {
  // Permute inputs and flip outcome signs on both sides: facet status is a
  // property of the inequality's local-symmetry class.
  std::mt19937_64 rng(99);
  const CorrelationInequality chsh = catalog("CHSH");
  std::uniform_int_distribution<int> flip(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> pa = {0, 1}, pb = {0, 1};
    std::shuffle(pa.begin(), pa.end(), rng);
    std::shuffle(pb.begin(), pb.end(), rng);
    const int sa0 = flip(rng) ? -1 : 1, sa1 = flip(rng) ? -1 : 1;
    const int sb0 = flip(rng) ? -1 : 1, sb1 = flip(rng) ? -1 : 1;
    const int sa[2] = {sa0, sa1}, sb[2] = {sb0, sb1};
    std::vector<Rational> coeffs(4);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        coeffs[static_cast<std::size_t>(x) * 2 + y] =
            chsh.coeff(pa[x], pb[y]) * Rational(sa[x] * sb[y]);
    CorrelationInequality relabeled("CHSH-relabeled", 2, 2, std::move(coeffs));
    relabeled.set_bound(local_bound_correlation(relabeled));
    EXPECT_EQ(*relabeled.bound(), Rational(2));
    const FacetReport report = facet_check(relabeled, PolytopeSpace::full);
    EXPECT_TRUE(report.is_facet);
    EXPECT_EQ(report.affine_rank, 7);
  }
}

TEST(FacetCheck, RankIsIndependentOfVertexOrder) {
  // Reversing Bob's input order permutes the vertex enumeration; the exact
  // rank must not move.
  const CorrelationInequality as4 = catalog("AS4");
  std::vector<Rational> reversed;
  for (int x = 0; x < 4; ++x)
    for (int y = 3; y >= 0; --y) reversed.push_back(as4.coeff(x, y));
  CorrelationInequality permuted("AS4-reversed", 4, 4, std::move(reversed));
  permuted.set_bound(local_bound_correlation(permuted));
  const FacetReport a = facet_check(as4, PolytopeSpace::full);
  const FacetReport b = facet_check(permuted, PolytopeSpace::full);
  EXPECT_EQ(a.affine_rank, b.affine_rank);
  EXPECT_EQ(a.saturating_vertex_count, b.saturating_vertex_count);
  EXPECT_EQ(a.polytope_dim, b.polytope_dim);
}

TEST(FacetCheck, ProbabilityFormFacetMatchesCorrelationForm) {
  const CorrelationInequality chsh = catalog("CHSH");
  const FacetReport report = facet_check(to_probability_form(chsh));
  EXPECT_TRUE(report.is_facet);
  EXPECT_EQ(report.polytope_dim, 8);
  EXPECT_EQ(report.affine_rank, 7);
}

TEST(FacetCheck, RequiresABound) {
  CorrelationInequality nameless("no-bound", 2, 2,
                                 std::vector<Rational>{1, 1, 1, Rational(-1)});
  EXPECT_THROW(facet_check(nameless), std::invalid_argument);
}

TEST(FacetReportJson, SerializesAllFields) {
  const FacetReport report = facet_check(catalog("CHSH"));
  const std::string text = to_json(report);
  EXPECT_NE(text.find("\"is_facet\":true"), std::string::npos);
  EXPECT_NE(text.find("\"polytope_dim\":8"), std::string::npos);
  EXPECT_NE(text.find("\"saturating_vertices\":8"), std::string::npos);
  EXPECT_NE(text.find("\"affine_rank\":7"), std::string::npos);
  EXPECT_NE(text.find("\"space\":\"full\""), std::string::npos);
}
