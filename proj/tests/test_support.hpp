// Shared helpers for the test binaries.
#pragma once

#include <string>

#include <pdsynth/strategy.hpp>
#include <pdsynth/text_format.hpp>

namespace pdsynth::support
{
  inline std::string fixture_path(const std::string& name)
  {
    return std::string(PDSYNTH_FIXTURE_DIR) + "/" + name;
  }

  /// Player0 strategy for the blind counter game that always answers a at q2.
  inline StrategyPDA blind_counter_always_a()
  {
    return parse_strategy(R"(strategy Player0
name always-a
input a b c d
stack A
states q0 q1 q2 q3 q4
init q0
rules
q0 a * -> q0 push A out ~
q0 b A -> q1 pop out ~
q1 b A -> q1 pop out ~
q1 c * -> q2 skip out ~
q2 ~ * -> q3 skip out a
q3 ~ _ -> q4 push A out c
q3 ~ A -> q3 skip out d
q4 c * -> q3 push A out ~
q4 d A -> q4 skip out ~
)");
  }

  /// Letters named by a comma-free string, one character per letter.
  inline std::vector<Letter> letters_of(const PushdownMachine& m,
                                        const std::string& word)
  {
    std::vector<Letter> out;
    for (char c : word)
      out.push_back(*m.find_letter(std::string(1, c)));
    return out;
  }
}
