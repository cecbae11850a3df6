// Line-oriented text format for games and strategies.
//
//   name blind-counter
//   condition parity
//   format deterministic one-counter blind
//   visibly calls c ; returns r a ; internals
//   input a b c d
//   stack A
//   states q0 q1 q2 q3 q4
//   init q0
//   player0 q2 q3
//   player1 q0 q1 q4
//   priorities 3
//   color q0 2 q1 2 q2 0 q3 0 q4 1
//   rules
//   q0 a * -> q0 push A
//   q0 b A -> q1 pop
//
// `~` is ε, `_` is ⊥, `*` as a top expands to ⊥ and every stack symbol,
// `#` starts a comment.  Actions: `push γ…` (pushed word, top first),
// `pop`, `skip`, `rewrite γ…` (replacement word, top first).  A strategy
// file starts with `strategy Player0|Player1` and every rule ends with
// `out x`.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <pdsynth/game.hpp>
#include <pdsynth/strategy.hpp>

namespace pdsynth
{
  class ParseError : public std::runtime_error
  {
  public:
    ParseError(std::size_t line, const std::string& msg);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
  };

  GameSpec parse_game(std::string_view text);
  std::string print_game(const GameSpec& g);

  StrategyPDA parse_strategy(std::string_view text);
  std::string print_strategy(const StrategyPDA& s);

  GameSpec load_game(const std::string& path);
  StrategyPDA load_strategy(const std::string& path);
  void save_text(const std::string& path, const std::string& text);
}
