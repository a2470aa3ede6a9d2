#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "gpal/cli.hpp"
#include "gpal/dynamics.hpp"
#include "gpal/model_io.hpp"

using namespace gpal;

namespace {

const std::string kData = GPAL_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Check) {
  const Result r = invoke({"check", "--model", kData + "/sier.topo.json", "--at", "0", "--formula", "I p"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "true\n");
  EXPECT_EQ(invoke({"check", "--model", kData + "/lp.ssl.json", "--at", "s", "--nbhd", "s,t", "--formula", "L p"}).out,
            "true\n");
  EXPECT_EQ(invoke({"check", "--model", kData + "/muddy2.product.json", "--at", "1,0", "--formula", "K2 m_a"}).out,
            "true\n");
}

TEST(Cli, Reduce) {
  EXPECT_EQ(invoke({"reduce", "--semantics", "topo", "--formula", "[!p] I q"}).out, "p -> I (p -> q)\n");
  const Result t = invoke({"reduce", "--semantics", "ssl", "--formula", "[!p] K q", "--trace"});
  EXPECT_NE(t.out.find("ssl/4: [!p] K q  =>  p -> K [!p] q"), std::string::npos) << t.out;
  EXPECT_EQ(invoke({"reduce", "--semantics", "topo", "--formula", "[!p] K q"}).code, kExitInput);
}

TEST(Cli, Muddy) {
  const Result r = invoke({"muddy", "--children", "3", "--muddy", "a,b"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "8 → 7 → 4; a knows m_a, b knows m_b after round 1");
  EXPECT_NE(r.out.find("partition oracle: agrees"), std::string::npos);
  EXPECT_EQ(invoke({"muddy", "--children", "3", "--muddy", "z"}).code, kExitInput);
  EXPECT_EQ(invoke({"muddy", "--children", "9", "--muddy", "a"}).code, kExitInput);
}

TEST(Cli, Persistence) {
  const Result lp = invoke({"persistent", "--model", kData + "/lp.ssl.json", "--formula", "L p"});
  EXPECT_EQ(lp.code, kExitViolation);
  EXPECT_NE(lp.out.find("not persistent"), std::string::npos);
  const Result ok = invoke({"persistent", "--model", kData + "/lp.ssl.json", "--formula", "p | q", "--announce", "K p"});
  EXPECT_EQ(ok.code, kExitOk) << ok.out;
}

TEST(Cli, AxiomsAreSeededAndDeterministic) {
  const std::vector<std::string> args{"axioms", "--semantics", "ssl", "--axiom", "5", "--samples", "40", "--seed", "3"};
  const Result a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(invoke({"axioms", "--semantics", "topo", "--axiom", "4", "--samples", "40"}).code, kExitInput);
  EXPECT_EQ(invoke({"axioms", "--semantics", "topo", "--axiom", "4", "--samples", "40", "--seed", "1"}).code, kExitOk);
  EXPECT_EQ(invoke({"axioms", "--semantics", "topo", "--axiom", "9", "--seed", "1"}).code, kExitInput);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(invoke({}).code, kExitInput);
  const Result unknown = invoke({"frob"});
  EXPECT_EQ(unknown.code, kExitInput);
  EXPECT_NE(unknown.err.find("unknown subcommand 'frob'"), std::string::npos);
  const Result parse = invoke({"check", "--model", kData + "/sier.topo.json", "--at", "0", "--formula", "I p &"});
  EXPECT_EQ(parse.code, kExitInput);
  EXPECT_NE(parse.err.find("column 6"), std::string::npos) << parse.err;
  EXPECT_EQ(invoke({"check", "--model", kData + "/nope.json", "--at", "0", "--formula", "p"}).code, kExitInput);
  EXPECT_EQ(invoke({"check", "--model", kData + "/sier.topo.json", "--at", "7", "--formula", "p"}).code, kExitInput);
  EXPECT_EQ(invoke({"check", "--model", kData + "/sier.topo.json", "--at", "0", "--formula", "K p"}).code, kExitInput);
  EXPECT_EQ(invoke({"ck", "--model", kData + "/sier.topo.json", "--formula", "p"}).code, kExitInput);
  EXPECT_EQ(invoke({"check", "--help"}).code, kExitOk);
}

TEST(Cli, EmittedModelsReload) {
  const auto dir = std::filesystem::temp_directory_path() / "gpal_cli_test";
  std::filesystem::create_directories(dir);
  struct Case {
    std::string file, formula;
  };
  for (const Case& c : {Case{"sier.topo.json", "p"}, Case{"lp.ssl.json", "p"}, Case{"muddy2.product.json", "m_a | m_b"}}) {
    const std::string out = (dir / ("out_" + c.file)).string();
    const Result r = invoke({"update", "--model", kData + "/" + c.file, "--formula", c.formula, "--emit", out});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const AnyModel original = model_from_json(read_json_file(kData + "/" + c.file));
    EXPECT_EQ(model_from_json(read_json_file(out)), update_any(original, parse(c.formula))) << c.file;
  }
  const std::string lim = (dir / "limit.json").string();
  ASSERT_EQ(invoke({"limit", "--model", kData + "/muddy2.product.json", "--formula", "m_a", "--emit", lim}).code, kExitOk);
  EXPECT_EQ(model_size(model_from_json(read_json_file(lim))), 2u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, OtherSubcommands) {
  const Result bi = invoke({"bi", "--game", kData + "/example.game.json"});
  EXPECT_EQ(bi.code, kExitOk);
  EXPECT_NE(bi.out.find("rationality rounds: 5 → 4 → 2"), std::string::npos);
  const Result iv = invoke({"example-intervals"});
  EXPECT_NE(iv.out.find("interior of infinite meet: {}"), std::string::npos);
  EXPECT_NE(iv.out.find("infinite meet of interiors: {0}"), std::string::npos);
  const Result ck = invoke({"ck", "--model", kData + "/muddy2.product.json", "--formula", "true"});
  EXPECT_NE(ck.out.find("common knowledge at 4 of 4 worlds"), std::string::npos);
  const Result lim = invoke({"limit", "--model", kData + "/sier.topo.json", "--formula", "p"});
  EXPECT_NE(lim.out.find("stages: 1"), std::string::npos);
}
