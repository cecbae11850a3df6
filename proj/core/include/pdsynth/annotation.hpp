// Least detour annotations of a regular strategy tree.
#pragma once

#include <pdsynth/candidate.hpp>

namespace pdsynth
{
  /// Least per-class annotation closed under the detour rules, computed as
  /// a monotone fixpoint.  Entries record detours that leave a node and
  /// come back to it; the priority excludes the start and includes the
  /// state reached on return.  Parity mode fills `h`; stair mode fills
  /// `h1`, `h2`, `h3`, where `h3` keeps only priorities at the node
  /// itself.
  std::vector<Annotation> least_annotation(const RegularCandidate& c,
                                           const TreeAutomaton& a);

  /// Same, writing into c.annotation.
  void annotate(RegularCandidate& c, const TreeAutomaton& a);
}
