#include <pdsynth/random_games.hpp>

#include <algorithm>
#include <stdexcept>

#include <pdsynth/oracle.hpp>

namespace pdsynth
{
  namespace
  {
    std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
    {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    }

    bool coin(Rng& rng, double p)
    {
      return std::bernoulli_distribution(p)(rng);
    }

    GameSpec skeleton(Rng& rng, std::size_t nq, std::size_t nl,
                      std::size_t ng, int k, const char* name)
    {
      GameSpec g;
      g.name = name;
      for (std::size_t q = 0; q < nq; ++q)
        {
          g.machine.add_state("q" + std::to_string(q));
          g.owner.push_back(coin(rng, 0.5) ? Player::zero : Player::one);
          g.col.priority.push_back(
            static_cast<int>(uniform(rng, 0, static_cast<std::size_t>(k - 1))));
        }
      g.col.k = k;
      for (std::size_t a = 0; a < nl; ++a)
        g.machine.add_letter(std::string(1, static_cast<char>('a' + a)));
      for (std::size_t s = 0; s < ng; ++s)
        g.machine.add_symbol(std::string(1, static_cast<char>('A' + s)));
      g.format.deterministic = true;
      return g;
    }

    StateId any_state(Rng& rng, const GameSpec& g)
    {
      return static_cast<StateId>(uniform(rng, 0, g.machine.num_states() - 1));
    }

    Symbol any_symbol(Rng& rng, const GameSpec& g)
    {
      return static_cast<Symbol>(
        uniform(rng, 1, g.machine.num_stack_symbols()));
    }

    // Normal-form write for `top`: 0 push, 1 skip, 2 pop.
    std::vector<Symbol> nf_write(Rng& rng, const GameSpec& g, Symbol top,
                                 const RandomGameParams& p)
    {
      std::discrete_distribution<int> kind(
        {p.push_weight, p.skip_weight, top == bottom ? 0.0 : p.pop_weight});
      switch (kind(rng))
        {
        case 0:
          return {any_symbol(rng, g), top};
        case 1:
          return {top};
        default:
          return {};
        }
    }
  }

  GameSpec random_normal_form_game(Rng& rng, const RandomGameParams& p)
  {
    std::size_t nq = uniform(rng, p.min_states, p.max_states);
    std::size_t ng = uniform(rng, p.min_symbols, p.max_symbols);
    GameSpec g = skeleton(rng, nq, p.letters, ng, p.k, "random");
    g.condition = p.condition;
    for (std::size_t q = 0; q < nq; ++q)
      for (std::size_t t = 0; t <= ng; ++t)
        {
          Symbol top = static_cast<Symbol>(t);
          if (coin(rng, p.epsilon_chance))
            {
              g.machine.add_rule({static_cast<StateId>(q), epsilon, top,
                                  any_state(rng, g),
                                  nf_write(rng, g, top, p)});
              continue;
            }
          for (std::size_t a = 0; a < p.letters; ++a)
            if (coin(rng, p.letter_chance))
              g.machine.add_rule({static_cast<StateId>(q),
                                  static_cast<Letter>(a), top,
                                  any_state(rng, g),
                                  nf_write(rng, g, top, p)});
        }
    return g;
  }

  std::optional<GameSpec> random_closed_game(Rng& rng,
                                             const RandomGameParams& p,
                                             std::size_t height_cap,
                                             std::size_t attempts,
                                             std::size_t min_vertices)
  {
    for (std::size_t i = 0; i < attempts; ++i)
      {
        GameSpec g = random_normal_form_game(rng, p);
        try
          {
            FiniteArena a = build_arena(g, height_cap);
            bool stacked = std::any_of(
              a.vertices.begin(), a.vertices.end(),
              [](const Configuration& c) { return c.height() > 1; });
            if (a.vertices.size() >= min_vertices
                && (min_vertices <= 1 || stacked))
              return g;
          }
        catch (const std::runtime_error&)
          {
          }
      }
    return std::nullopt;
  }

  GameSpec random_game_in_format(Rng& rng, RandomFormat f)
  {
    RandomGameParams p;
    p.max_states = 3;
    switch (f)
      {
      case RandomFormat::deterministic:
      case RandomFormat::realtime:
        {
          std::size_t nq = uniform(rng, 2, 3);
          std::size_t ng = uniform(rng, 1, 2);
          GameSpec g = skeleton(rng, nq, 2, ng, 3,
                                f == RandomFormat::realtime ? "random-realtime"
                                                            : "random-det");
          g.format.realtime = f == RandomFormat::realtime;
          for (std::size_t q = 0; q < nq; ++q)
            for (std::size_t t = 0; t <= ng; ++t)
              {
                Symbol top = static_cast<Symbol>(t);
                auto write = [&]() -> std::vector<Symbol> {
                  int kind = static_cast<int>(uniform(rng, 0, 5));
                  if (top == bottom && (kind == 2 || kind >= 4))
                    kind = 1;
                  switch (kind)
                    {
                    case 0:
                      return {any_symbol(rng, g), top};
                    case 1:
                      return {top};
                    case 2:
                      return {};
                    case 3:
                      return {any_symbol(rng, g), any_symbol(rng, g), top};
                    default:
                      return {any_symbol(rng, g)};
                    }
                };
                if (f == RandomFormat::deterministic && coin(rng, 0.15))
                  {
                    g.machine.add_rule({static_cast<StateId>(q), epsilon, top,
                                        any_state(rng, g), write()});
                    continue;
                  }
                for (Letter a = 0; a < 2; ++a)
                  if (coin(rng, 0.75))
                    g.machine.add_rule({static_cast<StateId>(q), a, top,
                                        any_state(rng, g), write()});
              }
          return g;
        }
      case RandomFormat::visibly:
        {
          // c call, r return, i internal.
          std::size_t nq = uniform(rng, 2, 3);
          std::size_t ng = uniform(rng, 1, 2);
          GameSpec g = skeleton(rng, nq, 0, ng, 3, "random-visibly");
          for (const char* l : {"c", "r", "i"})
            g.machine.add_letter(l);
          g.format.visibly = VisiblyAlphabet{{0}, {1}, {2}};
          g.format.realtime = true;
          for (std::size_t q = 0; q < nq; ++q)
            {
              auto from = static_cast<StateId>(q);
              if (coin(rng, 0.6))
                {
                  StateId to = any_state(rng, g);
                  Symbol push = any_symbol(rng, g);
                  for (std::size_t t = 0; t <= ng; ++t)
                    g.machine.add_rule({from, 0, static_cast<Symbol>(t), to,
                                        {push, static_cast<Symbol>(t)}});
                }
              for (std::size_t t = 0; t <= ng; ++t)
                if (coin(rng, 0.7))
                  {
                    Symbol top = static_cast<Symbol>(t);
                    g.machine.add_rule(
                      {from, 1, top, any_state(rng, g),
                       top == bottom ? std::vector<Symbol>{bottom}
                                     : std::vector<Symbol>{}});
                  }
              if (coin(rng, 0.6))
                {
                  StateId to = any_state(rng, g);
                  for (std::size_t t = 0; t <= ng; ++t)
                    g.machine.add_rule({from, 2, static_cast<Symbol>(t), to,
                                        {static_cast<Symbol>(t)}});
                }
            }
          return g;
        }
      case RandomFormat::one_counter:
        {
          p.min_symbols = p.max_symbols = 1;
          p.epsilon_chance = 0.1;
          GameSpec g = random_normal_form_game(rng, p);
          g.name = "random-one-counter";
          g.format.one_counter = true;
          return g;
        }
      }
    throw std::logic_error("unknown format");
  }

  GameSpec random_dpda(Rng& rng, std::size_t states, std::size_t letters,
                       std::size_t symbols, int k)
  {
    GameSpec g = skeleton(rng, states, letters, symbols, k, "random-dpda");
    for (auto& o : g.owner)
      o = Player::one;
    for (std::size_t q = 0; q < states; ++q)
      for (std::size_t t = 0; t <= symbols; ++t)
        {
          Symbol top = static_cast<Symbol>(t);
          auto write = [&]() -> std::vector<Symbol> {
            int kind = static_cast<int>(uniform(rng, 0, 3));
            if (top == bottom && kind == 2)
              kind = 1;
            switch (kind)
              {
              case 0:
                return {any_symbol(rng, g), top};
              case 1:
                return {top};
              case 2:
                return {};
              default:
                return {any_symbol(rng, g), any_symbol(rng, g), top};
              }
          };
          if (coin(rng, 0.1))
            {
              g.machine.add_rule({static_cast<StateId>(q), epsilon, top,
                                  any_state(rng, g), write()});
              continue;
            }
          for (std::size_t a = 0; a < letters; ++a)
            if (coin(rng, 0.85))
              g.machine.add_rule({static_cast<StateId>(q),
                                  static_cast<Letter>(a), top,
                                  any_state(rng, g), write()});
        }
    return g;
  }

  RegularCandidate random_candidate(Rng& rng, const TreeAutomaton& a,
                                    std::size_t max_classes)
  {
    RegularCandidate c;
    std::size_t n = uniform(rng, 1, max_classes);
    c.root = c.add_class(bottom, a.gamma);
    for (std::size_t i = 1; i < n; ++i)
      c.add_class(static_cast<Symbol>(uniform(rng, 1, a.gamma)), a.gamma);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t s = 1; s <= a.gamma; ++s)
        {
          std::vector<int> fit;
          for (std::size_t r = 0; r < n; ++r)
            if (static_cast<int>(r) != c.root
                && c.label[r] == static_cast<Symbol>(s))
              fit.push_back(static_cast<int>(r));
          if (!fit.empty() && coin(rng, 0.85))
            c.next[p][s - 1] = fit[uniform(rng, 0, fit.size() - 1)];
        }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < a.game_states; ++q)
        for (const Atom& at : a.at(static_cast<int>(q), c.label[p]).atoms)
          {
            if (a.is_verifier(at.target))
              continue;
            if (at.dir.kind == Direction::Kind::up
                && static_cast<int>(p) == c.root)
              continue;
            if (at.dir.kind == Direction::Kind::down
                && c.next[p][at.dir.symbol - 1] < 0)
              continue;
            if (coin(rng, 0.6))
              c.strategy[p].insert({static_cast<int>(q), at.letter, at.dir,
                                    at.target});
          }
    return c;
  }
}
