#include <gtest/gtest.h>

#include <random>

#include "gpal/dynamics.hpp"
#include "gpal/model_io.hpp"

using namespace gpal;
using nlohmann::json;

namespace {

const std::filesystem::path kData = GPAL_TEST_DATA;

std::string error_of(const std::string& text) {
  try {
    model_from_json(parse_json_text(text));
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ModelIo, LoadsExampleFiles) {
  const AnyModel sier = model_from_json(read_json_file(kData / "sier.topo.json"));
  EXPECT_TRUE(holds_at(sier, 0, parse("I p")));
  EXPECT_FALSE(holds_at(sier, 1, parse("I p")));
  const AnyModel lp = model_from_json(read_json_file(kData / "lp.ssl.json"));
  EXPECT_EQ(loci(lp).size(), 3u);
  const AnyModel muddy = model_from_json(read_json_file(kData / "muddy2.product.json"));
  EXPECT_EQ(model_size(muddy), 4u);
  EXPECT_EQ(model_kind(read_json_file(kData / "example.game.json")), "game");
}

TEST(ModelIo, RandomModelsRoundTrip) {
  std::mt19937_64 rng(101);
  for (Semantics s : {Semantics::Topo, Semantics::Ssl, Semantics::Product}) {
    for (int i = 0; i < 100; ++i) {
      AnyModel m = random_model(rng, s);
      if (i % 2) m = update_any(m, parse("p | q"));
      ASSERT_EQ(model_from_json(json::parse(model_to_json(m).dump())), m);
      ASSERT_EQ(model_from_json(parse_json_text(dump_model(m))), m);
    }
  }
}

TEST(ModelIo, LabelsAndCarrier) {
  const AnyModel m = model_from_json(read_json_file(kData / "lp.ssl.json"));
  const AnyModel u = update_any(m, parse("p"));
  const std::string text = dump_model(u);
  EXPECT_NE(text.find("\"carrier\": [\"t\"]"), std::string::npos) << text;
  EXPECT_EQ(model_from_json(parse_json_text(text)), u);
  EXPECT_EQ(dump_model(m).find("carrier"), std::string::npos);
}

TEST(ModelIo, ErrorsCarryLocations) {
  EXPECT_NE(error_of(R"({"kind":"topo","points":[0,1],"opens":[[],[0],[1]],"valuation":{}})").find("/opens"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"kind":"topo","points":[0,1],"opens":[[],[0,1]],"valuation":{"p":[2]}})")
                .find("/valuation/p/0"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"kind":"zzz"})").find("unknown model kind"), std::string::npos);
  EXPECT_NE(error_of(R"({"kind":"ssl","points":["s"],"sets":[[]],"valuation":{}})"), "");
  EXPECT_NE(error_of(R"({"kind":"topo","points":[0,0],"opens":[[],[0]],"valuation":{}})"), "");
  EXPECT_NE(error_of(R"({"kind":"topo","points":[0],"opens":[[],[0]],"valuation":{"P":[0]}})"), "");
  EXPECT_NE(error_of(R"({"kind":"product","factors":[{"points":[0,1],"opens":[[],[0,1]]}],"worlds":[[2]],"valuation":{}})"),
            "");
  EXPECT_NE(error_of(R"({"kind":"product","factors":[{"points":[0,1],"opens":[[0,1]]}],"worlds":"all","valuation":{}})"),
            "");
  try {
    parse_json_text("{\"kind\":\n  \"topo\",,}");
    FAIL();
  } catch (const ModelFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(read_json_file(kData / "missing.json"), ModelFormatError);
}

TEST(ModelIo, ExplicitProductWorlds) {
  const AnyModel m = model_from_json(parse_json_text(
      R"({"kind":"product","factors":[{"points":["x","y"],"opens":[[],["x","y"]]},{"points":[0,1],"opens":[[],[0],[0,1]]}],
          "worlds":[["x",0],["y",1]],"valuation":{"p":[["x",0]]}})"));
  EXPECT_EQ(model_size(m), 2u);
  EXPECT_TRUE(holds_at(m, parse_locus(m, "x,0"), parse("p & K1 p")));
  EXPECT_THROW(parse_locus(m, "x,1"), std::invalid_argument);
  EXPECT_THROW(parse_locus(m, "x"), std::invalid_argument);
}

TEST(ModelIo, Loci) {
  const AnyModel sier = model_from_json(read_json_file(kData / "sier.topo.json"));
  EXPECT_EQ(std::get<int>(parse_locus(sier, "1")), 1);
  EXPECT_THROW(parse_locus(sier, "2"), std::invalid_argument);
  const AnyModel lp = model_from_json(read_json_file(kData / "lp.ssl.json"));
  EXPECT_EQ(std::get<Situation>(parse_locus(lp, "s", "s,t")), (Situation{0, PointSet::of({0, 1})}));
  EXPECT_THROW(parse_locus(lp, "s"), std::invalid_argument);
  EXPECT_THROW(parse_locus(lp, "t", "s"), std::invalid_argument);
}

TEST(GameIo, RoundTripAndErrors) {
  const GameSpec g = game_from_json(read_json_file(kData / "example.game.json"));
  EXPECT_EQ(GameTree(g).size(), 5);
  const GameSpec back = game_from_json(json::parse(game_to_json(g).dump()));
  EXPECT_EQ(GameTree(back).spec().children.size(), 2u);
  EXPECT_EQ(game_to_json(back).dump(), game_to_json(g).dump());
  const GameSpec frac = game_from_json(parse_json_text(R"({"player":1,"children":[{"payoff":["1/2",0]},{"payoff":[1,0]}]})"));
  EXPECT_EQ(frac.children[0].payoff[0], Rational(1, 2));
  EXPECT_THROW(game_from_json(parse_json_text(R"({"player":1,"children":[{"payoff":["x",0]}]})")), std::invalid_argument);
  EXPECT_THROW(game_from_json(parse_json_text(R"({"children":[]})")), std::invalid_argument);
}
