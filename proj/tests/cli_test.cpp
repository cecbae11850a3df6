#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <cli.hpp>
#include <pdsynth/validate.hpp>

#include "test_support.hpp"

using namespace pdsynth;
namespace fs = std::filesystem;

namespace
{
  struct Outcome
  {
    int code = 0;
    std::string out, err;
  };

  Outcome run(std::vector<std::string> args, const std::string& input = "")
  {
    args.insert(args.begin(), "pdsynth");
    std::vector<const char*> argv;
    for (const auto& a : args)
      argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run_command(static_cast<int>(argv.size()), argv.data(), in,
                              out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
  }

  class CliTest : public ::testing::Test
  {
  protected:
    void SetUp() override
    {
      unsetenv(cli::caps_env);
      dir = fs::temp_directory_path()
            / ("pdsynth-cli-" + std::to_string(::testing::UnitTest::GetInstance()
                                                  ->random_seed())
               + "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
      fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    fs::path dir;
    std::string blind_game = support::fixture_path("blind-counter.game");
    std::string visibly_game = support::fixture_path("visibly-counter.game");
  };
}

TEST_F(CliTest, SolveBlindCounter)
{
  Outcome o = run({"solve", blind_game});
  EXPECT_EQ(o.code, cli::ok) << o.err;
  EXPECT_NE(o.out.find("status: SolvedPlayer0"), std::string::npos) << o.out;
}

TEST_F(CliTest, BlindFormatIsUnknownAtCap)
{
  Outcome o = run({"solve", blind_game, "--format-strategy", "blind"});
  EXPECT_EQ(o.code, cli::unknown_at_cap) << o.out << o.err;
  EXPECT_NE(o.out.find("UnknownAtCap"), std::string::npos);
}

TEST_F(CliTest, ResultDocumentPointsToAValidStrategy)
{
  std::string result = (dir / "blind-counter.json").string();
  Outcome o = run({"solve", blind_game, "--result", result});
  ASSERT_EQ(o.code, cli::ok) << o.err;
  std::ifstream f(result);
  nlohmann::json doc = nlohmann::json::parse(f);
  EXPECT_EQ(doc["status"], "SolvedPlayer0");
  EXPECT_EQ(doc["winner"], "Player0");
  ASSERT_TRUE(doc["strategy_file"].is_string());
  std::string sp = doc["strategy_file"];
  EXPECT_EQ(sp, (dir / "blind-counter.strategy").string());
  StrategyPDA s = load_strategy(sp);
  EXPECT_TRUE(validate_strategy(s, load_game(blind_game)).clean);

  Outcome v = run({"verify", blind_game, "--strategy", sp});
  EXPECT_EQ(v.code, cli::ok) << v.out << v.err;
}

TEST_F(CliTest, JsonOutputParses)
{
  Outcome o = run({"solve", visibly_game, "--json"});
  ASSERT_EQ(o.code, cli::ok) << o.err;
  nlohmann::json doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(doc["winner"], "Player0");
  EXPECT_TRUE(doc.contains("caps"));
}

TEST_F(CliTest, SynthesizeThenVerifyWrongStrategy)
{
  std::string path = (dir / "always-a.strategy").string();
  save_text(path, print_strategy(support::blind_counter_always_a()));
  Outcome o = run({"verify", blind_game, "--strategy", path});
  EXPECT_EQ(o.code, cli::counterexample) << o.out << o.err;

  std::string out = (dir / "s.strategy").string();
  Outcome s = run({"synthesize", visibly_game, "-o", out});
  ASSERT_EQ(s.code, cli::ok) << s.err;
  EXPECT_EQ(run({"verify", visibly_game, "--strategy", out, "--depth", "40",
                 "--height", "14"})
              .code,
            cli::ok);
}

TEST_F(CliTest, RandomAdversaryIsReproducible)
{
  std::vector<std::string> args{"simulate", blind_game, "--adversary", "random:7"};
  Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.code, cli::ok) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST_F(CliTest, ScriptedSimulation)
{
  Outcome o = run({"simulate", blind_game, "--adversary", "scripted", "--script",
                   "a,b,c"});
  EXPECT_EQ(o.code, cli::ok) << o.err;
  EXPECT_NE(o.out.find("Player0"), std::string::npos) << o.out;
}

TEST_F(CliTest, InteractivePlayAbortsOnQuit)
{
  Outcome o = run({"play", blind_game, "--as", "player1"}, "q\n");
  EXPECT_NE(o.code, cli::usage) << o.err;
}

TEST_F(CliTest, CapsFromEnvironment)
{
  setenv(cli::caps_env, "1,1,1", 1);
  Outcome o = run({"solve", visibly_game});
  EXPECT_NE(o.out.find("max-classes 1, max-prefix 1, max-period 1"),
            std::string::npos)
    << o.out;
  setenv(cli::caps_env, "nonsense", 1);
  EXPECT_EQ(run({"solve", visibly_game}).code, cli::usage);
}

TEST_F(CliTest, OtherSubcommands)
{
  EXPECT_EQ(run({"check-format", blind_game}).code, cli::ok);
  EXPECT_EQ(run({"normalize", blind_game}).code, cli::ok);
  Outcome stair = run({"convert", "stair", blind_game});
  EXPECT_EQ(stair.code, cli::ok) << stair.err;
  EXPECT_NE(stair.out.find("condition stair"), std::string::npos);
  Outcome dot = run({"export-dot", blind_game});
  EXPECT_EQ(dot.code, cli::ok);
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  EXPECT_EQ(run({"verify", blind_game, "--oracle-cap", "10"}).code, cli::failure);
}

TEST_F(CliTest, UsageErrors)
{
  EXPECT_EQ(run({}).code, cli::usage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::usage);
  EXPECT_EQ(run({"solve"}).code, cli::usage);
  EXPECT_EQ(run({"simulate", blind_game, "--adversary", "psychic"}).code,
            cli::usage);
  EXPECT_EQ(run({"solve", (dir / "missing.game").string()}).code,
            cli::failure);
}
