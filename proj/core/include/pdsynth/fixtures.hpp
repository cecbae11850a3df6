// Reference games.
#pragma once

#include <pdsynth/game.hpp>

namespace pdsynth
{
  /// Blind one-counter game: Player1 builds a^n b^m c with m <= n, then
  /// Player0 must pick a when the counter is positive and b when it is
  /// zero.  Player0 wins.
  GameSpec blind_counter_game();

  /// Visibly one-counter game: Player1 plays c^n (n >= 2) and hands over
  /// with a; Player0 wins by answering r^(n-2) a r r and then a forever.
  /// Calls {c}, returns {r, a}.  Player1 stalling with c forever loses.
  GameSpec visibly_counter_game();

  /// A push/pop cycle whose odd priority sits only above the bottom: the
  /// parity winner is Player1, the stair winner Player0.
  GameSpec divergence_game(Condition kind);

  struct Fixtures
  {
    GameSpec blind_counter;
    GameSpec visibly_counter;
    GameSpec divergence;
  };

  Fixtures fixtures();
}
