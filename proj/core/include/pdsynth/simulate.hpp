// Plays of a game between two agents, with lasso detection.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <pdsynth/game.hpp>
#include <pdsynth/lasso.hpp>
#include <pdsynth/strategy.hpp>

namespace pdsynth
{
  /// Resolves the positions of one player.
  class Agent
  {
  public:
    virtual ~Agent() = default;
    /// Index into `moves` (non-empty), or nullopt to give up.
    virtual std::optional<std::size_t> choose(const GameSpec& g,
                                              const Configuration& c,
                                              std::span<const Move> moves)
      = 0;
    /// Called after every move of either player.
    virtual void observe(const GameSpec&, const Move&) {}
    /// Extra memory that must repeat, with the game configuration, for a
    /// lasso to be genuine.
    virtual std::optional<Configuration> memory() const { return std::nullopt; }
  };

  /// Plays the script's letters when legal, otherwise the last legal move
  /// in rule order.  Exhausted scripts fall back the same way.
  class ScriptedAgent : public Agent
  {
  public:
    explicit ScriptedAgent(std::vector<Letter> script)
      : script_(std::move(script))
    {
    }
    std::optional<std::size_t> choose(const GameSpec&, const Configuration&,
                                      std::span<const Move> moves) override;
    /// The script position; constant once the script is exhausted.
    std::optional<Configuration> memory() const override
    {
      return Configuration{static_cast<StateId>(next_), {bottom}};
    }

  private:
    std::vector<Letter> script_;
    std::size_t next_ = 0;
  };

  class RandomAgent : public Agent
  {
  public:
    explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}
    std::optional<std::size_t> choose(const GameSpec&, const Configuration&,
                                      std::span<const Move> moves) override;

  private:
    std::mt19937_64 rng_;
  };

  /// Line protocol: prints the configuration and numbered moves, reads an
  /// index.  `q` or end of input aborts.
  class InteractiveAgent : public Agent
  {
  public:
    InteractiveAgent(std::istream& in, std::ostream& out) : in_(in), out_(out)
    {
    }
    std::optional<std::size_t> choose(const GameSpec& g,
                                      const Configuration& c,
                                      std::span<const Move> moves) override;
    void observe(const GameSpec& g, const Move& m) override;

  private:
    std::istream& in_;
    std::ostream& out_;
  };

  /// Follows a pushdown strategy in lock step with the game.
  class StrategyAgent : public Agent
  {
  public:
    explicit StrategyAgent(const StrategyPDA& s) : runner_(s) {}
    std::optional<std::size_t> choose(const GameSpec&, const Configuration&,
                                      std::span<const Move> moves) override;
    void observe(const GameSpec&, const Move& m) override;
    std::optional<Configuration> memory() const override
    {
      return runner_.configuration();
    }
    const StrategyRunner& runner() const { return runner_; }

  private:
    StrategyRunner runner_;
    bool fired_ = false;
  };

  enum class PlayStatus { ongoing, lasso, dead, aborted };

  std::string to_string(PlayStatus s);

  struct PlayRecord
  {
    std::vector<Configuration> configs;
    std::vector<Letter> moves;
    std::vector<std::size_t> rules;
    PlayStatus status = PlayStatus::ongoing;
    /// Lasso: configs[lasso_start..] is the cycle.
    std::size_t lasso_start = 0;
    std::optional<LassoRun> lasso;
    /// Player stuck at a dead end (or whose agent gave up).
    std::optional<Player> stuck;
    std::optional<Player> winner;
  };

  struct SimulationBounds
  {
    std::size_t max_steps = 1000;
    std::size_t max_height = 1000;
  };

  PlayRecord simulate(const GameSpec& g, Agent& player0, Agent& player1,
                      SimulationBounds bounds = {});

  /// Re-applies the recorded rules from the initial configuration.
  bool replays(const GameSpec& g, const PlayRecord& r);

  std::string describe(const GameSpec& g, const PlayRecord& r);
}
