#include <pdsynth/strategy.hpp>

#include <stdexcept>

namespace pdsynth
{
  void StrategyPDA::validate() const
  {
    machine.validate();
    if (output.size() != machine.rules.size())
      throw std::invalid_argument("strategy: one output per rule required");
    for (std::size_t i = 0; i < output.size(); ++i)
      {
        Letter o = output[i];
        if (o != epsilon
            && (o < 0 || static_cast<std::size_t>(o) >= machine.num_letters()))
          throw std::invalid_argument("strategy: undeclared output in rule "
                                      + rule_string(i));
        if (o != epsilon && machine.rules[i].letter != epsilon)
          throw std::invalid_argument(
            "strategy: rule both reads and writes a letter: " + rule_string(i));
      }
    if (!machine.is_deterministic())
      throw std::invalid_argument("strategy is not deterministic");
  }

  PushdownMachine StrategyPDA::game_facing() const
  {
    PushdownMachine g = machine;
    for (std::size_t i = 0; i < g.rules.size(); ++i)
      if (g.rules[i].letter == epsilon)
        g.rules[i].letter = output.at(i);
    return g;
  }

  std::string StrategyPDA::rule_string(std::size_t i) const
  {
    std::string s = machine.rule_string(machine.rules.at(i));
    if (i < output.size() && output[i] != epsilon)
      s += " out " + machine.letter_name(output[i]);
    return s;
  }

  FormatVerdict check_strategy_format(const StrategyPDA& s,
                                      const FormatDescriptor& fmt)
  {
    FormatVerdict v;
    if (fmt.deterministic)
      {
        if (!s.machine.is_deterministic())
          v.violations.push_back({"deterministic", std::nullopt,
                                  "transducer is not deterministic"});
      }
    FormatDescriptor rest = fmt;
    rest.deterministic = false;
    FormatVerdict g = check_format(s.game_facing(), rest);
    v.violations.insert(v.violations.end(), g.violations.begin(),
                        g.violations.end());
    return v;
  }

  StrategyRunner::StrategyRunner(const StrategyPDA& s)
    : StrategyRunner(std::make_shared<const StrategyPDA>(s))
  {
  }

  StrategyRunner::StrategyRunner(std::shared_ptr<const StrategyPDA> s)
    : s_(std::move(s)), config_(s_->machine.initial_configuration())
  {
  }

  std::optional<std::size_t> StrategyRunner::find(Letter a) const
  {
    for (std::size_t i : s_->machine.rules_for(config_.state, config_.top()))
      if (s_->machine.rules[i].letter == a)
        return i;
    return std::nullopt;
  }

  std::optional<Letter> StrategyRunner::respond()
  {
    if (failed_)
      return std::nullopt;
    auto i = find(epsilon);
    if (!i)
      {
        failed_ = true;
        return std::nullopt;
      }
    config_ = s_->machine.apply(config_, s_->machine.rules[*i]);
    return s_->output[*i];
  }

  bool StrategyRunner::feed(Letter a)
  {
    if (failed_)
      return false;
    auto i = find(a);
    if (!i)
      {
        failed_ = true;
        return false;
      }
    config_ = s_->machine.apply(config_, s_->machine.rules[*i]);
    return true;
  }
}
