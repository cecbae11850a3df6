// Command-line front end, callable in-process for tests.
#pragma once

#include <iosfwd>

namespace pdsynth::cli
{
  enum ExitCode : int
  {
    ok = 0,
    failure = 1,
    usage = 2,
    unknown_at_cap = 10,
    counterexample = 11,
  };

  /// Environment variable holding default caps as
  /// "max-classes,max-prefix,max-period".
  inline constexpr const char* caps_env = "PDSYNTH_CAPS";

  int run_command(int argc, const char* const* argv, std::istream& in,
                  std::ostream& out, std::ostream& err);
}
