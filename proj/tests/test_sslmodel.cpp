#include <gtest/gtest.h>

#include <random>

#include "gpal/sslmodel.hpp"
#include "oracle.hpp"

using namespace gpal;

namespace {

const PointSet S = PointSet::of({0});
const PointSet ST = PointSet::of({0, 1});

SSLModel two_point(PointSet p) { return SSLModel::make({"s", "t"}, {S, ST}, {{"p", p}}); }

}  // namespace

TEST(Situations, Enumeration) {
  const SSLModel m = two_point(S);
  EXPECT_EQ(situations(m), (std::vector<Situation>{{0, S}, {0, ST}, {1, ST}}));
  EXPECT_TRUE(situations(SSLModel::make({"s"}, {}, {})).empty());
  EXPECT_EQ(situations(SSLModel::make({"s"}, {S}, {})), (std::vector<Situation>{{0, S}}));
}

TEST(Ssl, ExhaustiveExample) {
  const SSLModel m = two_point(S);
  EXPECT_FALSE(satisfies_ssl(m, {0, ST}, parse("K p")));
  EXPECT_TRUE(satisfies_ssl(m, {0, S}, parse("K p")));
  EXPECT_TRUE(satisfies_ssl(m, {0, ST}, parse("D K p")));
  EXPECT_FALSE(satisfies_ssl(m, {0, ST}, parse("E K p")));
  EXPECT_TRUE(satisfies_ssl(m, {0, ST}, parse("true")));
  EXPECT_TRUE(satisfies_ssl(m, {0, ST}, parse("[!p] K p")));
  EXPECT_TRUE(satisfies_ssl(m, {0, ST}, parse("p -> K [!p] p")));
}

TEST(Ssl, UpdateExamples) {
  const SSLModel m = two_point(S);
  const SSLModel u = update_ssl(m, parse("p"));
  EXPECT_EQ(u.points(), S);
  EXPECT_EQ(u.sigma(), (std::vector<PointSet>{S}));
  EXPECT_EQ(u.value("p"), S);
  EXPECT_EQ(update_ssl(m, parse("true")), m);
  EXPECT_TRUE(situations(update_ssl(m, parse("q"))).empty());
}

TEST(Ssl, Errors) {
  const SSLModel m = two_point(S);
  EXPECT_THROW(satisfies_ssl(m, {1, S}, parse("p")), std::invalid_argument);
  EXPECT_THROW(satisfies_ssl(m, {0, ST}, parse("I p")), UnsupportedOperator);
  EXPECT_THROW(extension_ssl(m, parse("K1 p")), UnsupportedOperator);
  EXPECT_THROW(SSLModel::make({"s"}, {PointSet{}}, {}), std::invalid_argument);
  EXPECT_THROW(SSLModel::make({"s"}, {PointSet::of({4})}, {}), std::invalid_argument);
}

TEST(Ssl, EvaluatorsAgreeWithOracle) {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 300; ++i) {
    const SSLModel m = random_ssl_model(rng, 5, 5, {"p", "q", "r"});
    const auto o = oracle::from(m);
    const Formula f = oracle::random_formula(rng, oracle::Lang::Ssl, 4, 2);
    const auto e = extension_ssl(m, f);
    for (const auto& sit : situations(m)) {
      const bool expected = oracle::eval(o, sit.point, oracle::to_set(sit.nbhd), f);
      ASSERT_EQ(e[m.sigma_index(sit.nbhd)].contains(sit.point), expected) << render(f);
      ASSERT_EQ(satisfies_ssl(m, sit, f), expected) << render(f);
    }
  }
}

TEST(Ssl, SubsetSpaceAxioms) {
  std::mt19937_64 rng(52);
  const Formula p = Formula::atom("p");
  for (int i = 0; i < 300; ++i) {
    const SSLModel m = random_ssl_model(rng, 5, 5, {"p", "q"});
    const Formula a = oracle::random_formula(rng, oracle::Lang::Ssl, 3, 0);
    const Formula b = oracle::random_formula(rng, oracle::Lang::Ssl, 3, 0);
    const std::vector<Formula> valid{
        Formula::conj(Formula::implies(p, Formula::effort(p)),
                      Formula::implies(Formula::neg(p), Formula::effort(Formula::neg(p)))),
        Formula::implies(Formula::know(Formula::implies(a, b)), Formula::implies(Formula::know(a), Formula::know(b))),
        Formula::implies(Formula::know(a), a),
        Formula::implies(Formula::know(a), Formula::know(Formula::know(a))),
        Formula::implies(Formula::neg(Formula::know(a)), Formula::know(Formula::neg(Formula::know(a)))),
        Formula::implies(Formula::effort(Formula::implies(a, b)),
                         Formula::implies(Formula::effort(a), Formula::effort(b))),
        Formula::implies(Formula::effort(a), a),
        Formula::implies(Formula::effort(a), Formula::effort(Formula::effort(a))),
        Formula::implies(Formula::know(Formula::effort(a)), Formula::effort(Formula::know(a))),
    };
    for (const Formula& v : valid) {
      const auto e = extension_ssl(m, v);
      for (std::size_t k = 0; k < m.sigma().size(); ++k) ASSERT_EQ(e[k], m.sigma()[k]) << render(v);
    }
    for (const auto& [dual, prim] : {std::pair{Formula::possible(a), Formula::neg(Formula::know(Formula::neg(a)))},
                                     std::pair{Formula::effort_dual(a), Formula::neg(Formula::effort(Formula::neg(a)))}})
      ASSERT_EQ(extension_ssl(m, dual), extension_ssl(m, prim));
  }
}

TEST(Ssl, UpdateMonotone) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 300; ++i) {
    const SSLModel m = random_ssl_model(rng, 5, 5, {"p", "q"});
    const Formula f = oracle::random_formula(rng, oracle::Lang::Ssl, 3, 1);
    const SSLModel u = update_ssl(m, f);
    ASSERT_TRUE(u.points().subset_of(m.points()));
    for (PointSet v : u.sigma()) {
      bool inside_some = false;
      for (PointSet w : m.sigma()) inside_some = inside_some || v.subset_of(w);
      ASSERT_TRUE(inside_some);
    }
    if (u != m) ASSERT_LT(situations(u).size(), situations(m).size());
    ASSERT_EQ(update_ssl(m, parse("true")), m);
    const auto e = extension_ssl(m, f);
    ASSERT_EQ(u.points(), point_projection(m, e));
  }
}

TEST(Persistence, BooleanAndTrue) {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 100; ++i) {
    const SSLModel m = random_ssl_model(rng, 5, 5, {"p", "q"});
    ASSERT_FALSE(is_persistent(m, parse("p & ~q | q")).has_value());
    ASSERT_FALSE(is_persistent(m, parse("true")).has_value());
  }
}

TEST(Persistence, PossibleWitness) {
  const SSLModel m = two_point(PointSet::of({1}));
  const auto w = is_persistent(m, parse("L p"));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->point, 0);
  EXPECT_EQ(w->larger, ST);
  EXPECT_EQ(w->smaller, S);
  EXPECT_THROW(persistence_immunity_check(m, parse("L p"), {parse("p")}), NotPersistent);
}

TEST(Persistence, ImmunityForBooleans) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 100; ++i) {
    const SSLModel m = random_ssl_model(rng, 5, 5, {"p", "q"});
    std::vector<Formula> chis;
    for (int k = 0; k < 4; ++k) chis.push_back(oracle::random_formula(rng, oracle::Lang::Ssl, 3, 1));
    const auto r = persistence_immunity_check(m, parse("p | ~q"), chis);
    ASSERT_TRUE(r.violations.empty());
    ASSERT_TRUE(persistence_immunity_check(m, parse("true"), chis).violations.empty());
  }
}

// Persistence is checked relative to the model, and the announcement can
// create a smaller neighbourhood the model never had: ~K p holds at (s,{s,t})
// and is persistent there (no smaller set), yet [!p] ~K p fails.
TEST(Persistence, ModelRelativePersistenceIsNotImmunity) {
  const SSLModel m = SSLModel::make({"s", "t"}, {ST}, {{"p", S}});
  ASSERT_FALSE(is_persistent(m, parse("~K p")).has_value());
  const auto r = persistence_immunity_check(m, parse("~K p"), {parse("p")});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations.front().at, (Situation{0, ST}));
}

TEST(Ssl, Formatting) {
  const SSLModel m = two_point(S);
  EXPECT_EQ(format_situation(m, {0, ST}), "(s, {s,t})");
}
