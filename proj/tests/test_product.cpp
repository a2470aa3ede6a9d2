#include <gtest/gtest.h>

#include <random>

#include "gpal/product.hpp"
#include "oracle.hpp"

using namespace gpal;

namespace {

ProductModel two_bits() {
  std::vector<Topology> f(2, Topology::indiscrete({"0", "1"}));
  ProductModel shape = ProductModel::full(f, {});
  return ProductModel::full(f, {{"p", world_set(shape, {{1, 0}, {1, 1}})}});
}

}  // namespace

TEST(Product, KnowledgeVariesOwnCoordinate) {
  const ProductModel m = two_bits();
  EXPECT_TRUE(satisfies_product(m, {1, 0}, parse("K2 p")));
  EXPECT_FALSE(satisfies_product(m, {1, 0}, parse("K1 p")));
  for (const World& w : m.world_list()) EXPECT_TRUE(satisfies_product(m, w, parse("K1 true")));
}

TEST(Product, AnnouncementRelativizesKnowledge) {
  const ProductModel m = two_bits();
  const ProductModel u = update_product(m, parse("p"));
  EXPECT_EQ(u.worlds().count(), 2u);
  EXPECT_TRUE(satisfies_product(u, {1, 0}, parse("K1 p")));
  EXPECT_TRUE(satisfies_product(m, {1, 0}, parse("[!p] K1 p")));
}

TEST(Product, UpdateExamples) {
  const ProductModel m = two_bits();
  EXPECT_EQ(update_product(m, parse("true")), m);
  EXPECT_EQ(update_product(m, parse("false")).worlds().count(), 0u);

  std::vector<Topology> f(3, Topology::indiscrete({"0", "1"}));
  ProductModel shape = ProductModel::full(f, {});
  ProductValuation v;
  for (int i = 0; i < 3; ++i) {
    WorldSet s = shape.empty_set();
    for (const World& w : shape.world_list())
      if (w[i]) s.set(shape.encode(w));
    v[std::string("m_") + static_cast<char>('a' + i)] = s;
  }
  const ProductModel cube = ProductModel::full(f, v);
  const ProductModel after = update_product(cube, parse("m_a | m_b | m_c"));
  EXPECT_EQ(after.worlds().count(), 7u);
  EXPECT_FALSE(after.worlds().test(after.encode({0, 0, 0})));
}

TEST(Product, Errors) {
  const ProductModel m = two_bits();
  EXPECT_THROW(satisfies_product(m, {1, 0}, parse("K3 p")), std::out_of_range);
  const ProductModel u = update_product(m, parse("p"));
  EXPECT_THROW(satisfies_product(u, {0, 0}, parse("p")), std::invalid_argument);
  EXPECT_THROW(extension_product(m, parse("I p")), UnsupportedOperator);
}

TEST(Product, HOpen) {
  const ProductModel m = two_bits();
  EXPECT_TRUE(h_open(m, m.full_product(), 1));
  EXPECT_TRUE(h_open(m, m.full_product(), 2));
  EXPECT_FALSE(h_open(m, std::vector<World>{{1, 0}}, 1));
  // U x T' with U open in factor 1 (here U = whole carrier).
  EXPECT_TRUE(h_open(m, std::vector<World>{{0, 0}, {1, 0}}, 1));
  EXPECT_FALSE(h_open(m, std::vector<World>{{0, 0}, {1, 0}}, 2));

  std::vector<Topology> f{Topology::discrete({"0", "1"}), Topology::indiscrete({"0", "1"})};
  const ProductModel d = ProductModel::full(f, {});
  EXPECT_TRUE(h_open(d, std::vector<World>{{1, 0}, {1, 1}}, 1));
  EXPECT_THROW(h_open(d, std::vector<World>{{2, 0}}, 1), std::invalid_argument);
}

TEST(Product, EvaluatorsAgreeWithOracle) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    const int factors = 2 + static_cast<int>(rng() % 2);
    const ProductModel m = random_product_model(rng, factors, 4, {"p", "q", "r"});
    const auto o = oracle::from(m);
    const Formula f = oracle::random_formula(rng, oracle::Lang::Product, 4, 2, factors);
    const WorldSet e = extension_product(m, f);
    for (const World& w : m.world_list()) {
      const bool expected = oracle::eval(o, w, f);
      ASSERT_EQ(e.test(m.encode(w)), expected) << render(f);
      ASSERT_EQ(satisfies_product(m, w, f), expected) << render(f);
    }
  }
}

TEST(Product, RelativizedS4) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const int factors = 2 + static_cast<int>(rng() % 2);
    const ProductModel m = random_product_model(rng, factors, 4, {"p", "q"});
    const Formula a = oracle::random_formula(rng, oracle::Lang::Product, 3, 0, factors);
    for (int k = 1; k <= factors; ++k) {
      const Formula ka = Formula::know_i(k, a);
      ASSERT_EQ(extension_product(m, Formula::implies(ka, a)), m.worlds());
      ASSERT_EQ(extension_product(m, Formula::implies(ka, Formula::know_i(k, ka))), m.worlds());
    }
  }
}

TEST(Product, AtomicUpdatesCommute) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const ProductModel m = random_product_model(rng, 2 + static_cast<int>(rng() % 2), 4, {"p", "q"});
    const ProductModel both = update_product(m, parse("p & q"));
    ASSERT_EQ(both, update_product(update_product(m, parse("p")), parse("q")));
    ASSERT_EQ(both, update_product(update_product(m, parse("q")), parse("p")));
    ASSERT_TRUE(both.worlds().is_subset_of(m.worlds()));
  }
}

TEST(Product, KnowledgeSetRelativized) {
  const ProductModel m = two_bits();
  const WorldSet p = m.value("p");
  EXPECT_EQ(knowledge_set(m, 2, p), p);
  EXPECT_TRUE(knowledge_set(m, 1, p).none());
  EXPECT_EQ(format_world(m, {1, 0}), "(1,0)");
}
