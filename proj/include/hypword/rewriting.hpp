#ifndef HYPWORD_REWRITING_HPP_
#define HYPWORD_REWRITING_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "earley.hpp"
#include "error.hpp"
#include "grammar.hpp"

namespace hypword {

  // Right-hand side of a monadic rule: a letter, or nullopt for the empty
  // word.
  using RuleTarget = std::optional<Symbol>;

  inline std::string family_name(RuleTarget const& a) {
    return a ? to_string(*a) : std::string(epsilon_name);
  }

  // A context-free monadic rewriting system: for each right-hand side a, the
  // left-hand sides of the rules ell -> a form L(family(a)). Families are
  // stored in alphabet order with the empty-word family last; absent
  // families have no rules.
  class MonadicCfSystem {
   public:
    MonadicCfSystem() = default;

    MonadicCfSystem(Alphabet alphabet, std::map<RuleTarget, Cfg> families)
        : _alphabet(std::move(alphabet)) {
      for (auto const& s : _alphabet) {
        if (s.flavor != Flavor::plain) {
          throw DomainError("system alphabet letters must be plain, got "
                            + to_string(s));
        }
        if (s.name == epsilon_name) {
          throw DomainError("'eps' is reserved for the empty word");
        }
      }
      for (auto const& [target, g] : families) {
        if (target && !_alphabet.contains(*target)) {
          throw DomainError("rule family for " + to_string(*target)
                            + " is not over the system alphabet");
        }
        for (auto const& t : g.terminals()) {
          if (!_alphabet.contains(t)) {
            throw DomainError("family " + family_name(target)
                              + " uses letter " + to_string(t)
                              + " outside the alphabet");
          }
        }
      }
      for (auto const& a : _alphabet) {
        auto it = families.find(a);
        if (it != families.end()) {
          _families.emplace_back(a, it->second);
        }
      }
      if (auto it = families.find(std::nullopt); it != families.end()) {
        _families.emplace_back(std::nullopt, it->second);
      }
    }

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::vector<std::pair<RuleTarget, Cfg>> const& families() const noexcept {
      return _families;
    }

    Cfg const* family(RuleTarget const& a) const {
      for (auto const& [t, g] : _families) {
        if (t == a) {
          return &g;
        }
      }
      return nullptr;
    }

    // The family for a, or a grammar with no productions over the alphabet.
    Cfg family_or_empty(RuleTarget const& a) const {
      if (auto const* g = family(a)) {
        return *g;
      }
      return Cfg(Alphabet{Symbol("S")}, _alphabet, {}, Symbol("S"));
    }

    bool operator==(MonadicCfSystem const&) const = default;

   private:
    Alphabet                                _alphabet;
    std::vector<std::pair<RuleTarget, Cfg>> _families;
  };

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  struct Violation {
    std::string                family;
    std::optional<std::size_t> min_length;
    std::string                reason;
  };

  struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept {
      return violations.empty();
    }
  };

  // Passes iff every rule is length-reducing: families for letters only
  // contain words of length >= 2, the empty-word family words of length >= 1.
  inline ValidationReport validate_system(MonadicCfSystem const& s) {
    ValidationReport report;
    for (auto const& [target, g] : s.families()) {
      auto const        shortest = min_word_length(g);
      std::size_t const needed   = target ? 2 : 1;
      if (!shortest || *shortest >= needed) {
        continue;
      }
      std::string reason
          = *shortest == 0
                ? "left-hand side language contains the empty word"
                : "not length-reducing: shortest left-hand side has length "
                      + std::to_string(*shortest) + ", needs at least "
                      + std::to_string(needed);
      report.violations.push_back({family_name(target), shortest, reason});
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reduction
  ////////////////////////////////////////////////////////////////////////

  // Replace w[position, position + length) by rhs.
  struct RuleApplication {
    std::size_t position;
    std::size_t length;
    RuleTarget  rhs;

    bool operator==(RuleApplication const&) const = default;
  };

  enum class RedexStrategy { leftmost_shortest, rightmost_shortest, random };

  struct ConfluenceReport {
    bool                     pass = true;
    std::size_t              words_checked = 0;
    std::optional<Word>      witness;
    std::set<Word, ShortLex> witness_normal_forms;
  };

  // Reduction engine for a validated system. Holds one compiled recognizer
  // per rule family; all queries are const and allocate their own state.
  class Rewriter {
   public:
    // Throws ValidationError if validate_system fails.
    explicit Rewriter(MonadicCfSystem s) : _system(std::move(s)) {
      auto report = validate_system(_system);
      if (!report.ok()) {
        auto const& v = report.violations.front();
        throw ValidationError(v.family, v.reason);
      }
      for (auto const& [target, g] : _system.families()) {
        _targets.push_back(target);
        _recognizers.emplace_back(g);
      }
    }

    MonadicCfSystem const& system() const noexcept {
      return _system;
    }

    // Every rule occurrence in w, ordered by position, then length, then
    // family order.
    std::vector<RuleApplication> all_redexes(Word const& w) const {
      check(w);
      std::vector<RuleApplication> result;
      for (std::size_t i = 0; i < w.size(); ++i) {
        auto const before = result.size();
        for (std::size_t f = 0; f < _recognizers.size(); ++f) {
          auto lens = _recognizers[f].accepted_prefixes(
              std::span<Symbol const>(w).subspan(i));
          for (auto len : lens) {
            if (len > 0) {
              result.push_back({i, len, _targets[f]});
            }
          }
        }
        std::stable_sort(result.begin() + before, result.end(),
                         [](RuleApplication const& x, RuleApplication const& y) {
                           return x.length < y.length;
                         });
      }
      return result;
    }

    // Leftmost, then shortest, occurrence; ties between families go by
    // alphabet order with the empty-word family last.
    std::optional<RuleApplication> find_redex(Word const& w) const {
      check(w);
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (auto r = shortest_at(w, i)) {
          return r;
        }
      }
      return std::nullopt;
    }

    std::optional<RuleApplication> find_rightmost_redex(Word const& w) const {
      check(w);
      for (std::size_t i = w.size(); i-- > 0;) {
        if (auto r = shortest_at(w, i)) {
          return r;
        }
      }
      return std::nullopt;
    }

    static Word apply(Word const& w, RuleApplication const& r) {
      Word result(w.begin(), w.begin() + r.position);
      if (r.rhs) {
        result.push_back(*r.rhs);
      }
      result.insert(result.end(), w.begin() + r.position + r.length, w.end());
      return result;
    }

    std::optional<Word> reduce_once(Word const& w) const {
      if (auto r = find_redex(w)) {
        return apply(w, *r);
      }
      return std::nullopt;
    }

    Word normal_form(Word w) const {
      while (auto r = find_redex(w)) {
        w = apply(w, *r);
      }
      return w;
    }

    Word normal_form(Word w, RedexStrategy strategy,
                     std::uint64_t seed = 0) const {
      std::mt19937_64 rng(seed);
      while (true) {
        std::optional<RuleApplication> r;
        switch (strategy) {
          case RedexStrategy::leftmost_shortest:
            r = find_redex(w);
            break;
          case RedexStrategy::rightmost_shortest:
            r = find_rightmost_redex(w);
            break;
          case RedexStrategy::random: {
            auto all = all_redexes(w);
            if (!all.empty()) {
              std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
              r = all[pick(rng)];
            }
            break;
          }
        }
        if (!r) {
          return w;
        }
        w = apply(w, *r);
      }
    }

    bool equal(Word const& u, Word const& v) const {
      return normal_form(u) == normal_form(v);
    }

    // Every word reachable from w by zero or more one-step reductions,
    // following all redexes. Throws ResourceError once more than cap words
    // have been explored.
    std::set<Word, ShortLex> descendants(Word const& w, std::size_t cap) const {
      return explore(w, cap, false);
    }

    // The irreducible words among descendants(w, cap).
    std::set<Word, ShortLex> irreducible_descendants(Word const& w,
                                                     std::size_t cap) const {
      return explore(w, cap, true);
    }

    // Checks every word of length <= maxlen has exactly one irreducible
    // descendant. Words are visited in shortlex order and every one-step
    // reduct is shorter, so the descendant sets are assembled from those of
    // already visited words. The first witness (in shortlex order) is
    // reported. Throws ResourceError if a descendant set exceeds cap.
    ConfluenceReport check_confluence(std::size_t maxlen,
                                      std::size_t cap) const {
      ConfluenceReport                             report;
      std::map<Word, std::set<Word, ShortLex>>     memo;
      for (auto const& w : all_words(_system.alphabet(), maxlen)) {
        std::set<Word, ShortLex> nfs;
        auto                     redexes = all_redexes(w);
        if (redexes.empty()) {
          nfs.insert(w);
        }
        for (auto const& r : redexes) {
          auto const& sub = memo.at(apply(w, r));
          nfs.insert(sub.begin(), sub.end());
          if (nfs.size() > cap) {
            throw ResourceError("descendant set of " + to_string(w)
                                + " exceeds the cap");
          }
        }
        ++report.words_checked;
        if (nfs.size() != 1) {
          report.pass                 = false;
          report.witness              = w;
          report.witness_normal_forms = nfs;
          return report;
        }
        memo.emplace(w, std::move(nfs));
      }
      return report;
    }

   private:
    void check(Word const& w) const {
      check_word(_system.alphabet(), w, "rewriting");
    }

    std::optional<RuleApplication> shortest_at(Word const& w,
                                               std::size_t i) const {
      std::optional<RuleApplication> best;
      for (std::size_t f = 0; f < _recognizers.size(); ++f) {
        auto lens = _recognizers[f].accepted_prefixes(
            std::span<Symbol const>(w).subspan(i));
        for (auto len : lens) {
          if (len == 0) {
            continue;
          }
          if (!best || len < best->length) {
            best = RuleApplication{i, len, _targets[f]};
          }
          break;
        }
      }
      return best;
    }

    std::set<Word, ShortLex> explore(Word const& w, std::size_t cap,
                                     bool irreducible_only) const {
      std::set<Word, ShortLex> seen{w};
      std::set<Word, ShortLex> result;
      std::deque<Word>         queue{w};
      while (!queue.empty()) {
        Word current = std::move(queue.front());
        queue.pop_front();
        auto redexes = all_redexes(current);
        if (redexes.empty() || !irreducible_only) {
          result.insert(current);
        }
        for (auto const& r : redexes) {
          Word next = apply(current, r);
          if (seen.insert(next).second) {
            if (seen.size() > cap) {
              throw ResourceError("exploration from " + to_string(w)
                                  + " exceeds the cap of "
                                  + std::to_string(cap) + " words");
            }
            queue.push_back(std::move(next));
          }
        }
      }
      return result;
    }

    MonadicCfSystem         _system;
    std::vector<RuleTarget> _targets;
    std::vector<Recognizer> _recognizers;
  };

  inline constexpr std::size_t default_exploration_cap = 1'000'000;

  inline std::optional<RuleApplication> find_redex(MonadicCfSystem const& s,
                                                   Word const&            w) {
    return Rewriter(s).find_redex(w);
  }

  inline std::optional<Word> reduce_once(MonadicCfSystem const& s,
                                         Word const&            w) {
    return Rewriter(s).reduce_once(w);
  }

  inline Word normal_form(MonadicCfSystem const& s, Word const& w) {
    return Rewriter(s).normal_form(w);
  }

  inline bool equal_in_monoid(MonadicCfSystem const& s, Word const& u,
                              Word const& v) {
    return Rewriter(s).equal(u, v);
  }

  inline std::set<Word, ShortLex> irreducible_descendants(
      MonadicCfSystem const& s,
      Word const&            w,
      std::size_t            cap = default_exploration_cap) {
    return Rewriter(s).irreducible_descendants(w, cap);
  }

  inline ConfluenceReport check_confluence_bounded(
      MonadicCfSystem const& s,
      std::size_t            maxlen,
      std::size_t            cap = default_exploration_cap) {
    return Rewriter(s).check_confluence(maxlen, cap);
  }

}  // namespace hypword

#endif  // HYPWORD_REWRITING_HPP_
