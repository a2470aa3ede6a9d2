#include <gtest/gtest.h>

#include <random>

#include "gpal/topomodel.hpp"
#include "oracle.hpp"

using namespace gpal;

namespace {

TopoModel sierpinski() {
  const Topology t = generate_from_subbasis(numeric_labels(2), std::vector<PointSet>{PointSet::of({0})});
  return make_topo_model(t, {{"p", PointSet::of({0})}});
}

}  // namespace

TEST(TopoModel, SierpinskiInterior) {
  const TopoModel m = sierpinski();
  EXPECT_EQ(extension(m, parse("I p")), PointSet::of({0}));
  EXPECT_TRUE(satisfies(m, 0, parse("I p")));
  EXPECT_FALSE(satisfies(m, 1, parse("I p")));
  EXPECT_EQ(extension(m, parse("C p")), PointSet::of({0, 1}));
}

TEST(TopoModel, SierpinskiUpdate) {
  const TopoModel m = sierpinski();
  const TopoModel u = update(m, parse("p"));
  EXPECT_EQ(u.space.carrier(), PointSet::of({0}));
  EXPECT_EQ(u.space.opens(), (std::vector<PointSet>{PointSet{}, PointSet::of({0})}));
  EXPECT_EQ(u.value("p"), PointSet::of({0}));
  EXPECT_EQ(update(m, parse("true")), m);
  const TopoModel empty = update(m, parse("false"));
  EXPECT_TRUE(empty.space.carrier().empty());
  EXPECT_TRUE(verify_topology(empty.space).empty());
}

TEST(TopoModel, PointOutsideCarrier) {
  const TopoModel u = update(sierpinski(), parse("p"));
  EXPECT_THROW(satisfies(u, 1, parse("p")), std::out_of_range);
}

TEST(TopoModel, RejectsForeignOperators) {
  const TopoModel m = sierpinski();
  EXPECT_THROW(extension(m, parse("K p")), UnsupportedOperator);
  EXPECT_THROW(satisfies(m, 0, parse("K1 p")), UnsupportedOperator);
  EXPECT_THROW(extension(m, parse("E p")), UnsupportedOperator);
}

TEST(TopoModel, ValuationOutsideCarrier) {
  const Topology t = Topology::discrete(numeric_labels(2));
  EXPECT_THROW(make_topo_model(t, {{"p", PointSet::of({3})}}), std::invalid_argument);
}

TEST(TopoModel, EvaluatorsAgreeWithOracle) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const TopoModel m = random_topo_model(rng, 1 + static_cast<int>(rng() % 6), static_cast<int>(rng() % 4),
                                          {"p", "q", "r"});
    const auto o = oracle::from(m);
    const Formula f = oracle::random_formula(rng, oracle::Lang::Topo, 5, 2);
    const PointSet e = extension(m, f);
    for (int x : m.space.carrier().members()) {
      const bool expected = oracle::eval(o, x, f);
      ASSERT_EQ(e.contains(x), expected) << render(f);
      ASSERT_EQ(satisfies(m, x, f), expected) << render(f);
    }
    ASSERT_TRUE(e.subset_of(m.space.carrier()));
  }
}

TEST(TopoModel, S4Validities) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; ++i) {
    const TopoModel m = random_topo_model(rng, 1 + static_cast<int>(rng() % 6), static_cast<int>(rng() % 4), {"p", "q"});
    const Formula a = oracle::random_formula(rng, oracle::Lang::Topo, 3, 0);
    const Formula b = oracle::random_formula(rng, oracle::Lang::Topo, 3, 0);
    for (const Formula& v : {Formula::implies(Formula::interior(a), a),
                             Formula::implies(Formula::interior(a), Formula::interior(Formula::interior(a))),
                             Formula::implies(Formula::interior(Formula::implies(a, b)),
                                              Formula::implies(Formula::interior(a), Formula::interior(b)))}) {
      ASSERT_EQ(extension(m, v), m.space.carrier()) << render(v);
    }
    ASSERT_EQ(extension(m, Formula::closure(a)), extension(m, Formula::neg(Formula::interior(Formula::neg(a)))));
  }
}

TEST(TopoModel, UpdateKeepsTopology) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 300; ++i) {
    const TopoModel m = random_topo_model(rng, 1 + static_cast<int>(rng() % 8), static_cast<int>(rng() % 5), {"p", "q"});
    const Formula f = oracle::random_formula(rng, oracle::Lang::Topo, 4, 1);
    const TopoModel u = update(m, f);
    ASSERT_TRUE(verify_topology(u.space).empty());
    ASSERT_EQ(u.space.carrier(), extension(m, f));
    for (const auto& [k, v] : u.valuation) ASSERT_TRUE(v.subset_of(u.space.carrier()));
  }
}

TEST(TopoModel, RandomModelDeterministic) {
  std::mt19937_64 a(5), b(5);
  EXPECT_EQ(random_topo_model(a, 5, 3, {"p"}), random_topo_model(b, 5, 3, {"p"}));
}
