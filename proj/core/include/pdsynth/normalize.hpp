// Normal form: every rule is a single push (q',A'A), a skip (q',A) or a
// pop (q',ε).
//
// Two encodings are used.  When every rule keeps the symbol it reads
// (always the case for one-counter machines), longer pushes are expanded
// into ascending chains of single pushes through intermediate states.
// Otherwise the true top symbol is carried in the finite control and
// every stack cell stores the symbol one level below it, with an extra
// marker standing for the bottom; a rewrite of the top then becomes a
// skip.  Neither encoding ever lowers the stack height transiently, so
// heights of encoded runs are order-preserving images of the original
// heights and Steps positions are preserved.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <pdsynth/game.hpp>
#include <pdsynth/machine.hpp>

namespace pdsynth
{
  class Normalization
  {
  public:
    enum class Mode { chain, top_in_control };

    Mode mode = Mode::chain;
    PushdownMachine machine;
    PriorityFunction col;
    /// True when the input already was in normal form and nothing changed.
    bool identity = true;
    /// Number of original states/symbols.
    std::size_t original_states = 0;
    std::size_t original_symbols = 0;  // |Γ|
    /// Marker symbol standing for the bottom in top-in-control mode.
    Symbol bottom_marker = bottom;
    /// For each normalized state, the original state it simulates and the
    /// true top it carries; nullopt for chain intermediates.
    std::vector<std::optional<std::pair<StateId, Symbol>>> origin;
    /// For each normalized state, the real state its forced chain ends in
    /// (itself for real states).
    std::vector<StateId> chain_end;

    /// Normalized state simulating original state `q` with true top `top`.
    StateId encode_state(StateId q, Symbol top) const;
    /// Translation of an original configuration.
    Configuration encode(const Configuration& c) const;
    bool is_intermediate(StateId s) const { return !origin.at(s).has_value(); }

    /// The cells an original rule pushes in the encoded machine (bottom-up)
    /// when fired with true top `top`.  Empty for skips, rewrites and pops.
    std::vector<Symbol> pushed_cells(const Rule& original) const;
    /// True top symbol carried after an original non-pop rule.
    Symbol control_top_after(const Rule& original) const;
    /// The true top exposed after a pop, given the content of the encoded
    /// cell being popped.
    Symbol exposed_top(Symbol popped_cell) const;
  };

  /// Normal-form translation.  Intermediate states get the smallest even
  /// priority not below the maximal one.  Deterministic inputs give
  /// deterministic outputs.
  Normalization normalize(const PushdownMachine& m, const PriorityFunction& col);

  /// True iff every rule already is a single push, a skip or a pop.
  bool is_normal_form(const PushdownMachine& m);

  struct NormalizedGame
  {
    GameSpec game;
    Normalization map;
  };

  /// Normalizes a game; intermediate states belong to the owner of the
  /// state their chain ends in.
  NormalizedGame normalize_game(const GameSpec& g);
}
