#ifndef HYPWORD_EARLEY_HPP_
#define HYPWORD_EARLEY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "grammar.hpp"

namespace hypword {

  // Chart-based (Earley) recognizer for an arbitrary context-free grammar.
  //
  // Empty productions are handled by predicting through nullable
  // nonterminals (Aycock and Horspool), so unit cycles, nullable cycles and
  // left recursion need no grammar preprocessing. The grammar is compiled
  // once; every query allocates its own chart, so one Recognizer may be
  // queried from several threads at once.
  class Recognizer {
   public:
    explicit Recognizer(Cfg const& g);

    Cfg const& grammar() const noexcept {
      return _grammar;
    }

    // start =>* w. Throws DomainError if w has a letter that is not a
    // terminal of the grammar.
    bool accepts(Word const& w) const;

    // form =>* w, for a sentential form over nonterminals and terminals.
    bool derives(Word const& form, Word const& w) const;

    // All n >= 0 such that w[0, n) is in L(g), ascending. Letters that are
    // not terminals simply never match.
    std::vector<std::size_t> accepted_prefixes(std::span<Symbol const> w) const;

   private:
    // Nonterminals are numbered 0..N-1, terminals N..N+T-1.
    struct CompiledProduction {
      int              lhs;
      std::vector<int> rhs;
    };

    struct Item {
      std::uint32_t prod;
      std::uint32_t dot;
      std::uint32_t origin;
    };

    static constexpr int no_token = -1;

    std::vector<int> encode_word(std::span<Symbol const> w, bool strict) const;
    std::vector<int> encode_form(Word const& form) const;

    // Runs the recognizer with a synthetic goal production goal -> form and
    // returns, for each position j, whether the goal is complete over
    // tokens[0, j).
    std::vector<bool> run(std::vector<int> const& goal,
                          std::vector<int> const& tokens) const;

    Cfg                                          _grammar;
    std::size_t                                  _num_nonterminals;
    std::unordered_map<Symbol, int, SymbolHash>  _ids;
    std::vector<CompiledProduction>              _productions;
    std::vector<std::vector<std::uint32_t>>      _by_lhs;
    std::vector<bool>                            _nullable;
    std::vector<std::uint32_t>                   _slot_offset;
    std::uint32_t                                _num_slots;
  };

  inline bool cfg_member(Cfg const& g, Word const& w) {
    return Recognizer(g).accepts(w);
  }

  // form =>* w, decided by adding a fresh start production S' -> form.
  inline bool derives(Cfg const& g, Word const& form, Word const& w) {
    return Recognizer(g).derives(form, w);
  }

  ////////////////////////////////////////////////////////////////////////
  // Implementation
  ////////////////////////////////////////////////////////////////////////

  inline Recognizer::Recognizer(Cfg const& g)
      : _grammar(g), _num_nonterminals(g.nonterminals().size()) {
    int next = 0;
    for (auto const& n : g.nonterminals()) {
      _ids.emplace(n, next++);
    }
    for (auto const& t : g.terminals()) {
      _ids.emplace(t, next++);
    }
    _by_lhs.resize(_num_nonterminals);
    _slot_offset.reserve(g.productions().size() + 1);
    std::uint32_t slots = 0;
    for (auto const& p : g.productions()) {
      CompiledProduction cp;
      cp.lhs = _ids.at(p.lhs);
      for (auto const& s : p.rhs) {
        cp.rhs.push_back(_ids.at(s));
      }
      _by_lhs[cp.lhs].push_back(static_cast<std::uint32_t>(_productions.size()));
      _slot_offset.push_back(slots);
      slots += static_cast<std::uint32_t>(cp.rhs.size() + 1);
      _productions.push_back(std::move(cp));
    }
    _num_slots = slots;

    _nullable.assign(_num_nonterminals, false);
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto const& p : _productions) {
        if (_nullable[p.lhs]) {
          continue;
        }
        bool all = true;
        for (int s : p.rhs) {
          if (s >= static_cast<int>(_num_nonterminals) || !_nullable[s]) {
            all = false;
            break;
          }
        }
        if (all) {
          _nullable[p.lhs] = true;
          changed          = true;
        }
      }
    }
  }

  inline std::vector<int> Recognizer::encode_word(std::span<Symbol const> w,
                                                  bool strict) const {
    std::vector<int> tokens;
    tokens.reserve(w.size());
    for (auto const& s : w) {
      auto it = _ids.find(s);
      if (it == _ids.end() || it->second < static_cast<int>(_num_nonterminals)) {
        if (strict) {
          throw DomainError("letter " + to_string(s)
                            + " is not a terminal of the grammar");
        }
        tokens.push_back(no_token);
      } else {
        tokens.push_back(it->second);
      }
    }
    return tokens;
  }

  inline std::vector<int> Recognizer::encode_form(Word const& form) const {
    std::vector<int> result;
    result.reserve(form.size());
    for (auto const& s : form) {
      auto it = _ids.find(s);
      if (it == _ids.end()) {
        throw DomainError("letter " + to_string(s)
                          + " is not a symbol of the grammar");
      }
      result.push_back(it->second);
    }
    return result;
  }

  inline bool Recognizer::accepts(Word const& w) const {
    std::vector<int> goal{_ids.at(_grammar.start())};
    return run(goal, encode_word(w, true)).back();
  }

  inline bool Recognizer::derives(Word const& form, Word const& w) const {
    return run(encode_form(form), encode_word(w, true)).back();
  }

  inline std::vector<std::size_t>
  Recognizer::accepted_prefixes(std::span<Symbol const> w) const {
    std::vector<int> goal{_ids.at(_grammar.start())};
    auto             done = run(goal, encode_word(w, false));
    std::vector<std::size_t> result;
    for (std::size_t j = 0; j < done.size(); ++j) {
      if (done[j]) {
        result.push_back(j);
      }
    }
    return result;
  }

  inline std::vector<bool> Recognizer::run(std::vector<int> const& goal,
                                           std::vector<int> const& tokens) const {
    auto const     n        = tokens.size();
    auto const     goal_id  = static_cast<std::uint32_t>(_productions.size());
    std::uint32_t  slots    = _num_slots + static_cast<std::uint32_t>(goal.size() + 1);
    int const      num_nts  = static_cast<int>(_num_nonterminals);

    auto rhs_of = [&](std::uint32_t prod) -> std::vector<int> const& {
      return prod == goal_id ? goal : _productions[prod].rhs;
    };
    auto slot_of = [&](std::uint32_t prod, std::uint32_t dot) {
      return (prod == goal_id ? _num_slots : _slot_offset[prod]) + dot;
    };

    std::vector<std::vector<Item>> sets(n + 1);
    // seen[i][origin * slots + slot]
    std::vector<std::vector<bool>> seen(n + 1);
    std::vector<bool>              done(n + 1, false);

    auto add = [&](std::size_t i, Item item) {
      auto& bits = seen[i];
      if (bits.empty()) {
        bits.assign((i + 1) * static_cast<std::size_t>(slots), false);
      }
      std::size_t key = static_cast<std::size_t>(item.origin) * slots
                        + slot_of(item.prod, item.dot);
      if (!bits[key]) {
        bits[key] = true;
        sets[i].push_back(item);
      }
    };

    add(0, Item{goal_id, 0, 0});
    for (std::size_t i = 0; i <= n; ++i) {
      auto& set = sets[i];
      for (std::size_t k = 0; k < set.size(); ++k) {
        Item const  item = set[k];
        auto const& rhs  = rhs_of(item.prod);
        if (item.dot < rhs.size()) {
          int const next = rhs[item.dot];
          if (next < num_nts) {
            for (auto p : _by_lhs[next]) {
              add(i, Item{p, 0, static_cast<std::uint32_t>(i)});
            }
            if (_nullable[next]) {
              add(i, Item{item.prod, item.dot + 1, item.origin});
            }
          } else if (i < n && tokens[i] == next) {
            add(i + 1, Item{item.prod, item.dot + 1, item.origin});
          }
          continue;
        }
        // Completed item.
        if (item.prod == goal_id) {
          done[i] = true;
          continue;
        }
        int const lhs = _productions[item.prod].lhs;
        // Iterating by index: for origin == i the set may grow meanwhile.
        auto& origin_set = sets[item.origin];
        for (std::size_t m = 0; m < origin_set.size(); ++m) {
          Item const  waiting = origin_set[m];
          auto const& wrhs    = rhs_of(waiting.prod);
          if (waiting.dot < wrhs.size() && wrhs[waiting.dot] == lhs) {
            add(i, Item{waiting.prod, waiting.dot + 1, waiting.origin});
          }
        }
      }
      if (i < n && sets[i + 1].empty()) {
        // Nothing survives beyond position i.
        break;
      }
    }
    return done;
  }

}  // namespace hypword

#endif  // HYPWORD_EARLEY_HPP_
