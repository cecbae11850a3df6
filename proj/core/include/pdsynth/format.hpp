// Machine formats (deterministic, realtime, visibly, one-counter, blind)
// and the predicate that checks a machine against a requested format.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <pdsynth/machine.hpp>

namespace pdsynth
{
  /// Partition of the input alphabet into calls, returns and internals.
  struct VisiblyAlphabet
  {
    std::vector<Letter> calls;
    std::vector<Letter> returns;
    std::vector<Letter> internals;

    enum class Kind { call, ret, internal, none };
    Kind kind_of(Letter a) const;

    /// Pairwise disjoint and covering all `num_letters` letters.
    bool is_partition_of(std::size_t num_letters) const;
    bool operator==(const VisiblyAlphabet&) const = default;
  };

  struct FormatDescriptor
  {
    bool deterministic = false;
    bool realtime = false;
    bool one_counter = false;
    bool blind = false;
    std::optional<VisiblyAlphabet> visibly;

    /// blind => one-counter, visibly => realtime.
    FormatDescriptor closed() const;
    std::string describe() const;
    bool operator==(const FormatDescriptor&) const = default;
  };

  struct FormatViolation
  {
    std::string property;
    std::optional<std::size_t> rule;  // index into machine.rules
    std::string message;
  };

  struct FormatVerdict
  {
    std::vector<FormatViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }
  };

  /// True iff every flagged property holds.  Total: never throws on a
  /// well-formed machine.
  FormatVerdict check_format(const PushdownMachine& m,
                             const FormatDescriptor& fmt);

  /// Stack symbols that occur in some rule (top or written), bottom
  /// excluded.
  std::vector<Symbol> used_stack_symbols(const PushdownMachine& m);
}
