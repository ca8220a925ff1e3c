#ifndef HYPWORD_GRAMMAR_HPP_
#define HYPWORD_GRAMMAR_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "core.hpp"
#include "error.hpp"

namespace hypword {

  struct Production {
    Symbol lhs;
    Word   rhs;

    bool operator==(Production const&) const = default;
    auto operator<=>(Production const&) const = default;
  };

  // A context-free grammar (N, T, P, S). The constructor enforces that N and
  // T are disjoint, S is in N, and every production only uses N and T.
  // Exact duplicate productions are dropped, keeping the first occurrence.
  class Cfg {
   public:
    Cfg() = default;

    Cfg(Alphabet                nonterminals,
        Alphabet                terminals,
        std::vector<Production> productions,
        Symbol                  start)
        : _nonterminals(std::move(nonterminals)),
          _terminals(std::move(terminals)),
          _start(std::move(start)) {
      for (auto const& n : _nonterminals) {
        if (_terminals.contains(n)) {
          throw DomainError("symbol " + to_string(n)
                            + " is both a terminal and a nonterminal");
        }
      }
      if (!_nonterminals.contains(_start)) {
        throw DomainError("start symbol " + to_string(_start)
                          + " is not a nonterminal");
      }
      std::set<Production> seen;
      for (auto& p : productions) {
        if (!_nonterminals.contains(p.lhs)) {
          throw DomainError("production lhs " + to_string(p.lhs)
                            + " is not a nonterminal");
        }
        for (auto const& s : p.rhs) {
          if (!is_symbol(s)) {
            throw DomainError("production rhs letter " + to_string(s)
                              + " is not in the grammar");
          }
        }
        if (seen.insert(p).second) {
          _productions.push_back(std::move(p));
        }
      }
    }

    Alphabet const& nonterminals() const noexcept {
      return _nonterminals;
    }
    Alphabet const& terminals() const noexcept {
      return _terminals;
    }
    std::vector<Production> const& productions() const noexcept {
      return _productions;
    }
    Symbol const& start() const noexcept {
      return _start;
    }

    bool is_nonterminal(Symbol const& s) const {
      return _nonterminals.contains(s);
    }
    bool is_terminal(Symbol const& s) const {
      return _terminals.contains(s);
    }
    bool is_symbol(Symbol const& s) const {
      return is_nonterminal(s) || is_terminal(s);
    }

    bool has_empty_productions() const {
      return std::any_of(_productions.begin(),
                         _productions.end(),
                         [](Production const& p) { return p.rhs.empty(); });
    }

    bool operator==(Cfg const& that) const {
      return _nonterminals == that._nonterminals
             && _terminals == that._terminals && _start == that._start
             && std::set<Production>(_productions.begin(), _productions.end())
                    == std::set<Production>(that._productions.begin(),
                                            that._productions.end());
    }

   private:
    Alphabet                _nonterminals;
    Alphabet                _terminals;
    std::vector<Production> _productions;
    Symbol                  _start;
  };

  ////////////////////////////////////////////////////////////////////////
  // Transformations
  ////////////////////////////////////////////////////////////////////////

  // Nonterminals that derive the empty word.
  inline std::set<Symbol> nullable_nonterminals(Cfg const& g) {
    std::set<Symbol> nullable;
    bool             changed = true;
    while (changed) {
      changed = false;
      for (auto const& p : g.productions()) {
        if (nullable.count(p.lhs)) {
          continue;
        }
        if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol const& s) {
              return nullable.count(s) != 0;
            })) {
          nullable.insert(p.lhs);
          changed = true;
        }
      }
    }
    return nullable;
  }

  // Standard nullable-set construction: every production is replaced by all
  // variants that omit some subset of its nullable occurrences, and empty
  // right-hand sides are dropped. The language loses exactly the empty word.
  inline Cfg eliminate_epsilon_productions(Cfg const& g) {
    auto                    nullable = nullable_nonterminals(g);
    std::vector<Production> result;
    for (auto const& p : g.productions()) {
      std::vector<std::size_t> optional_positions;
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        if (nullable.count(p.rhs[i])) {
          optional_positions.push_back(i);
        }
      }
      if (optional_positions.size() >= 8 * sizeof(std::size_t) - 1) {
        throw ResourceError("production has too many nullable occurrences");
      }
      std::size_t const variants = std::size_t(1) << optional_positions.size();
      for (std::size_t mask = 0; mask < variants; ++mask) {
        Word        rhs;
        std::size_t k = 0;
        for (std::size_t i = 0; i < p.rhs.size(); ++i) {
          if (k < optional_positions.size() && optional_positions[k] == i) {
            bool const drop = (mask >> k) & 1;
            ++k;
            if (drop) {
              continue;
            }
          }
          rhs.push_back(p.rhs[i]);
        }
        if (!rhs.empty()) {
          result.push_back({p.lhs, std::move(rhs)});
        }
      }
    }
    return Cfg(g.nonterminals(), g.terminals(), std::move(result), g.start());
  }

  // Replaces terminal b by m(b) everywhere. m must be total and injective on
  // the terminals of g, and its image must avoid the nonterminals.
  inline Cfg relabel_terminals(Cfg const& g, std::map<Symbol, Symbol> const& m) {
    Alphabet terminals;
    for (auto const& t : g.terminals()) {
      auto it = m.find(t);
      if (it == m.end()) {
        throw DomainError("relabel_terminals: no image for terminal "
                          + to_string(t));
      }
      if (terminals.contains(it->second)) {
        throw DomainError("relabel_terminals: map is not injective at "
                          + to_string(it->second));
      }
      terminals.add(it->second);
    }
    std::vector<Production> productions;
    productions.reserve(g.productions().size());
    for (auto const& p : g.productions()) {
      Word rhs;
      rhs.reserve(p.rhs.size());
      for (auto const& s : p.rhs) {
        rhs.push_back(g.is_terminal(s) ? m.at(s) : s);
      }
      productions.push_back({p.lhs, std::move(rhs)});
    }
    return Cfg(g.nonterminals(), std::move(terminals), std::move(productions),
               g.start());
  }

  inline Cfg reverse_productions(Cfg const& g) {
    std::vector<Production> productions;
    productions.reserve(g.productions().size());
    for (auto const& p : g.productions()) {
      productions.push_back({p.lhs, reverse(p.rhs)});
    }
    return Cfg(g.nonterminals(), g.terminals(), std::move(productions),
               g.start());
  }

  // Renames nonterminals by the given map; unmapped nonterminals are kept.
  inline Cfg rename_nonterminals(Cfg const& g,
                                 std::map<Symbol, Symbol> const& m) {
    auto rename = [&m](Symbol const& s) {
      auto it = m.find(s);
      return it == m.end() ? s : it->second;
    };
    Alphabet nonterminals;
    for (auto const& n : g.nonterminals()) {
      nonterminals.add(rename(n));
    }
    std::vector<Production> productions;
    for (auto const& p : g.productions()) {
      Word rhs;
      for (auto const& s : p.rhs) {
        rhs.push_back(g.is_nonterminal(s) ? rename(s) : s);
      }
      productions.push_back({rename(p.lhs), std::move(rhs)});
    }
    return Cfg(std::move(nonterminals), g.terminals(), std::move(productions),
               rename(g.start()));
  }

  // Appends "#k" to every nonterminal name of the k-th grammar.
  inline std::vector<Cfg> disjoint_rename(std::vector<Cfg> const& gs) {
    std::vector<Cfg> result;
    result.reserve(gs.size());
    for (std::size_t k = 0; k < gs.size(); ++k) {
      std::map<Symbol, Symbol> m;
      for (auto const& n : gs[k].nonterminals()) {
        m.emplace(n, Symbol(n.name + "#" + std::to_string(k), n.flavor));
      }
      result.push_back(rename_nonterminals(gs[k], m));
    }
    return result;
  }

  // Length of a shortest word in L(g); nullopt when L(g) is empty.
  inline std::optional<std::size_t> min_word_length(Cfg const& g) {
    constexpr auto                       inf = std::numeric_limits<std::size_t>::max();
    std::unordered_map<Symbol, std::size_t, SymbolHash> best;
    for (auto const& n : g.nonterminals()) {
      best[n] = inf;
    }
    auto cost = [&](Symbol const& s) -> std::size_t {
      return g.is_terminal(s) ? 1 : best[s];
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto const& p : g.productions()) {
        std::size_t total = 0;
        for (auto const& s : p.rhs) {
          auto c = cost(s);
          if (c == inf) {
            total = inf;
            break;
          }
          total += c;
        }
        if (total < best[p.lhs]) {
          best[p.lhs] = total;
          changed     = true;
        }
      }
    }
    if (best[g.start()] == inf) {
      return std::nullopt;
    }
    return best[g.start()];
  }

  // Removes productions that mention unproductive or unreachable
  // nonterminals. The nonterminal alphabet is left unchanged.
  inline Cfg trim(Cfg const& g) {
    std::set<Symbol> productive;
    bool             changed = true;
    while (changed) {
      changed = false;
      for (auto const& p : g.productions()) {
        if (productive.count(p.lhs)) {
          continue;
        }
        if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol const& s) {
              return g.is_terminal(s) || productive.count(s);
            })) {
          productive.insert(p.lhs);
          changed = true;
        }
      }
    }
    auto useful = [&](Production const& p) {
      return productive.count(p.lhs)
             && std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol const& s) {
                  return g.is_terminal(s) || productive.count(s);
                });
    };
    std::set<Symbol>    reachable{g.start()};
    std::vector<Symbol> stack{g.start()};
    while (!stack.empty()) {
      Symbol n = stack.back();
      stack.pop_back();
      for (auto const& p : g.productions()) {
        if (p.lhs != n || !useful(p)) {
          continue;
        }
        for (auto const& s : p.rhs) {
          if (g.is_nonterminal(s) && reachable.insert(s).second) {
            stack.push_back(s);
          }
        }
      }
    }
    std::vector<Production> kept;
    for (auto const& p : g.productions()) {
      if (useful(p) && reachable.count(p.lhs)) {
        kept.push_back(p);
      }
    }
    return Cfg(g.nonterminals(), g.terminals(), std::move(kept), g.start());
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounded enumeration
  ////////////////////////////////////////////////////////////////////////

  // All words of L(g) of length at most maxlen, in shortlex order.
  //
  // Computed as the least fixpoint of the length-truncated language
  // equations L_A = union over A -> X1...Xk of L_X1 ... L_Xk; this terminates
  // for grammars with empty productions and derivation cycles alike.
  inline std::set<Word, ShortLex> enumerate_language(Cfg const& g,
                                                     std::size_t maxlen) {
    using Code = std::u32string;
    std::unordered_map<Symbol, char32_t, SymbolHash> term_code;
    for (std::size_t i = 0; i < g.terminals().size(); ++i) {
      term_code.emplace(g.terminals()[i], static_cast<char32_t>(i));
    }
    std::unordered_map<Symbol, std::size_t, SymbolHash> nt_index;
    for (std::size_t i = 0; i < g.nonterminals().size(); ++i) {
      nt_index.emplace(g.nonterminals()[i], i);
    }
    std::vector<std::unordered_set<Code>> lang(g.nonterminals().size());

    bool changed = true;
    while (changed) {
      changed = false;
      for (auto const& p : g.productions()) {
        std::unordered_set<Code> acc{Code{}};
        for (auto const& s : p.rhs) {
          std::unordered_set<Code> next;
          if (g.is_terminal(s)) {
            char32_t c = term_code.at(s);
            for (auto const& u : acc) {
              if (u.size() < maxlen) {
                next.insert(u + c);
              }
            }
          } else {
            auto const& ls = lang[nt_index.at(s)];
            for (auto const& u : acc) {
              for (auto const& v : ls) {
                if (u.size() + v.size() <= maxlen) {
                  next.insert(u + v);
                }
              }
            }
          }
          acc = std::move(next);
          if (acc.empty()) {
            break;
          }
        }
        auto& target = lang[nt_index.at(p.lhs)];
        for (auto& u : acc) {
          if (target.insert(u).second) {
            changed = true;
          }
        }
      }
    }
    std::set<Word, ShortLex> result;
    for (auto const& code : lang[nt_index.at(g.start())]) {
      Word w;
      w.reserve(code.size());
      for (char32_t c : code) {
        w.push_back(g.terminals()[c]);
      }
      result.insert(std::move(w));
    }
    return result;
  }

}  // namespace hypword

#endif  // HYPWORD_GRAMMAR_HPP_
