#include <pdsynth/dot.hpp>

#include <map>
#include <sstream>
#include <stdexcept>

namespace pdsynth
{
  namespace
  {
    std::string quote(const std::string& s)
    {
      std::string out = "\"";
      for (char c : s)
        {
          if (c == '"' || c == '\\')
            out += '\\';
          out += c;
        }
      return out + '"';
    }

    const char* shape(Player p)
    {
      return p == Player::one ? "shape=box" : "shape=box, style=rounded";
    }

    std::string graph_name(const std::string& n)
    {
      return quote(n.empty() ? "G" : n);
    }

    // Bottom-first stacks over symbols 1..n of height h (bottom included),
    // in lexicographic order.
    void stacks_of_height(std::size_t nsym, std::size_t h,
                          std::vector<std::vector<Symbol>>& out)
    {
      std::vector<Symbol> s(h, 1);
      s[0] = bottom;
      if (h > 1 && nsym == 0)
        return;
      while (true)
        {
          out.push_back(s);
          std::size_t i = h;
          while (i > 1 && s[i - 1] == static_cast<Symbol>(nsym))
            s[--i] = 1;
          if (i <= 1)
            return;
          ++s[i - 1];
        }
    }
  }

  std::string export_dot(const GameSpec& g, std::size_t height_cap)
  {
    if (height_cap == 0)
      throw std::invalid_argument("export_dot: height cap must be positive");
    const auto& m = g.machine;
    std::ostringstream os;
    os << "digraph " << graph_name(g.name) << " {\n";
    if (m.num_states() == 0)
      {
        os << "}\n";
        return os.str();
      }
    std::vector<std::vector<Symbol>> stacks;
    for (std::size_t h = 1; h <= height_cap; ++h)
      stacks_of_height(m.num_stack_symbols(), h, stacks);

    std::map<Configuration, std::size_t> id;
    std::vector<Configuration> nodes;
    for (std::size_t q = 0; q < m.num_states(); ++q)
      for (const auto& st : stacks)
        {
          Configuration c{static_cast<StateId>(q), st};
          id.emplace(c, nodes.size());
          nodes.push_back(c);
        }
    for (std::size_t i = 0; i < nodes.size(); ++i)
      {
        const auto& c = nodes[i];
        os << "  n" << i << " [label=" << quote(m.config_string(c)) << ", "
           << shape(g.owner_of(c.state)) << ", xlabel="
           << quote(std::to_string(g.col(c.state)));
        if (c == m.initial_configuration())
          os << ", penwidth=2";
        os << "];\n";
      }
    std::size_t overflow = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (const Move& mv : legal_moves(g, nodes[i]))
        {
          auto it = id.find(mv.target);
          if (it == id.end())
            {
              ++overflow;
              os << "  // overflow: " << m.config_string(nodes[i]) << " --"
                 << m.letter_name(mv.letter) << "--> "
                 << m.config_string(mv.target) << '\n';
              continue;
            }
          os << "  n" << i << " -> n" << it->second << " [label="
             << quote(m.letter_name(mv.letter)) << "];\n";
        }
    if (overflow)
      os << "  // " << overflow << " move(s) exceed height cap " << height_cap
         << '\n';
    os << "}\n";
    return os.str();
  }

  std::string export_dot(const StrategyPDA& s)
  {
    const auto& m = s.machine;
    std::ostringstream os;
    os << "digraph " << graph_name(s.name) << " {\n";
    for (std::size_t q = 0; q < m.num_states(); ++q)
      {
        os << "  s" << q << " [label=" << quote(m.states[q]) << ", "
           << shape(s.player);
        if (static_cast<StateId>(q) == m.initial)
          os << ", penwidth=2";
        os << "];\n";
      }
    for (std::size_t i = 0; i < m.rules.size(); ++i)
      {
        const Rule& r = m.rules[i];
        std::string w;
        for (Symbol x : r.write)
          w += (w.empty() ? "" : " ") + m.symbol_name(x);
        std::string label = m.letter_name(r.letter) + "/"
                            + m.letter_name(s.output.at(i)) + ", "
                            + m.symbol_name(r.top) + "/"
                            + (w.empty() ? "ε" : w);
        os << "  s" << r.from << " -> s" << r.to << " [label=" << quote(label)
           << "];\n";
      }
    os << "}\n";
    return os.str();
  }

  std::string export_dot(const RegularCandidate& c, const TreeAutomaton& a)
  {
    TraceGraph tg = trace_graph(c, a);
    std::ostringstream os;
    os << "digraph \"trace\" {\n";
    for (std::size_t i = 0; i < tg.vertices.size(); ++i)
      {
        const auto& v = tg.vertices[i];
        os << "  v" << i << " [label="
           << quote("p" + std::to_string(v.cls) + ", " + a.names.at(v.state)
                    + ", " + std::to_string(v.priority))
           << (v.priority % 2 ? ", shape=box" : ", shape=box, style=rounded")
           << "];\n";
      }
    for (std::size_t i = 0; i < tg.edges.size(); ++i)
      for (int j : tg.edges[i])
        os << "  v" << i << " -> v" << j << ";\n";
    os << "}\n";
    return os.str();
  }
}
