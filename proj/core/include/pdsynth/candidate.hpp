// Regular strategy trees: a finite class automaton over Γ whose classes
// carry forced node labels, strategy entries and detour annotations.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <pdsynth/automaton.hpp>

namespace pdsynth
{
  struct StrategyEntry
  {
    int state = 0;
    Letter letter = epsilon;
    Direction dir;
    int target = 0;

    auto operator<=>(const StrategyEntry&) const = default;
  };

  /// (from, priority, to)
  struct Detour
  {
    int from = 0;
    int priority = 0;
    int to = 0;

    auto operator<=>(const Detour&) const = default;
  };

  struct Annotation
  {
    std::set<Detour> h;                       // parity mode
    std::set<std::pair<int, int>> h1, h2;     // stair mode
    std::set<Detour> h3;                      // stair mode

    /// The detour edges used by the trace check.
    const std::set<Detour>& summary(Condition kind) const
    {
      return kind == Condition::parity ? h : h3;
    }
    bool operator==(const Annotation&) const = default;
  };

  struct RegularCandidate
  {
    /// Node label of each class; class `root` is labelled ⊥.
    std::vector<Symbol> label;
    /// next[p][A-1]: class of the A-child, -1 when undefined.
    std::vector<std::vector<int>> next;
    std::vector<std::set<StrategyEntry>> strategy;
    std::vector<Annotation> annotation;
    /// (prefix length, period) when the stack alphabet is a singleton.
    std::optional<std::pair<std::size_t, std::size_t>> lasso;
    /// Classes added only to complete the automaton.
    std::vector<bool> inert;
    int root = 0;

    std::size_t num_classes() const { return label.size(); }
    /// Counts non-inert classes.
    std::size_t real_classes() const;
    int child(int p, Symbol a) const { return next.at(p).at(a - 1); }
    /// Adds a class with the given label and no successors.
    int add_class(Symbol label, std::size_t gamma);
    /// Classes reachable from the root.
    std::vector<bool> reachable() const;
    /// For each class, the reachable classes with an edge into it.
    std::vector<std::vector<int>> predecessors() const;
    /// Lasso shape of a unary automaton, as (prefix, period).
    std::optional<std::pair<std::size_t, std::size_t>> lasso_shape() const;
  };

  struct ConsistencyViolation
  {
    int condition = 0;  // 1, 2 or 3
    int cls = 0;
    std::string message;
  };

  struct ConsistencyVerdict
  {
    std::vector<ConsistencyViolation> violations;
    bool ok() const { return violations.empty(); }
  };

  ConsistencyVerdict check_consistency(const RegularCandidate& c,
                                       const TreeAutomaton& a);

  struct TraceVertex
  {
    int cls = 0;
    int state = 0;
    int priority = 0;

    auto operator<=>(const TraceVertex&) const = default;
  };

  struct TraceVerdict
  {
    bool ok = true;
    /// A reachable cycle whose minimal priority is odd (first vertex
    /// repeated at the end).
    std::vector<TraceVertex> cycle;
  };

  /// Universal check: every cycle of the trace graph reachable from
  /// (root, initial state, its priority) has an even minimal priority.
  TraceVerdict check_traces(const RegularCandidate& c, const TreeAutomaton& a);

  struct TraceGraph
  {
    std::vector<TraceVertex> vertices;
    std::vector<std::vector<int>> edges;
  };

  /// Reachable part of the trace graph.
  TraceGraph trace_graph(const RegularCandidate& c, const TreeAutomaton& a);

  std::string describe(const RegularCandidate& c, const TreeAutomaton& a,
                       const PushdownMachine& normalized);
}
