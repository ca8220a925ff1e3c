#ifndef HYPWORD_STRUCTURES_HPP_
#define HYPWORD_STRUCTURES_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "automata.hpp"
#include "core.hpp"
#include "error.hpp"
#include "grammar.hpp"
#include "rewriting.hpp"

namespace hypword {

  using EqualityDecision = std::function<bool(Word const&, Word const&)>;

  // A regular language of representatives together with a decision
  // procedure for equality of the elements they represent. The
  // multiplication table M(L) is only exposed through ml_member.
  struct WordHypStructure {
    Alphabet               alphabet;
    Nfa                    reps;
    EqualityDecision       equality;
    std::map<Symbol, Word> interpretation;  // letter -> word over a base system
  };

  // The structure (A*, M(A*)) of a validated system: every word is a
  // representative and equality is decided by normal forms.
  inline WordHypStructure free_structure(MonadicCfSystem const& s) {
    auto rewriter = std::make_shared<Rewriter const>(s);
    std::map<Symbol, Word> interpretation;
    for (auto const& a : s.alphabet()) {
      interpretation.emplace(a, Word{a});
    }
    return {s.alphabet(),
            nfa_universal(s.alphabet()),
            [rewriter](Word const& u, Word const& v) {
              return rewriter->equal(u, v);
            },
            std::move(interpretation)};
  }

  // u #1 v #2 rev(w) in M(L): u, v, w are representatives and uv = w.
  inline bool ml_member(WordHypStructure const& s, Word const& u, Word const& v,
                        Word const& w) {
    check_word(s.alphabet, u, "ml_member");
    check_word(s.alphabet, v, "ml_member");
    check_word(s.alphabet, w, "ml_member");
    return nfa_member(s.reps, u) && nfa_member(s.reps, v)
           && nfa_member(s.reps, w) && s.equality(concat(u, v), w);
  }

  ////////////////////////////////////////////////////////////////////////
  // Change of generators
  ////////////////////////////////////////////////////////////////////////

  // b -> u_b, where u_b represents the same element as b.
  class GeneratorMap {
   public:
    GeneratorMap() = default;

    // Throws DomainError if the map is not total on source, an image leaves
    // target, or (for a semigroup generating set) an image is empty.
    GeneratorMap(Alphabet               source,
                 Alphabet               target,
                 std::map<Symbol, Word> images,
                 bool                   semigroup_generating = false)
        : _source(std::move(source)),
          _target(std::move(target)),
          _images(std::move(images)),
          _semigroup(semigroup_generating) {
      for (auto const& b : _source) {
        auto it = _images.find(b);
        if (it == _images.end()) {
          throw DomainError("generator map has no image for " + to_string(b));
        }
        check_word(_target, it->second, "generator map image");
        if (_semigroup && it->second.empty()) {
          throw DomainError("semigroup generating map needs a nonempty image for "
                            + to_string(b));
        }
      }
      for (auto const& [b, u] : _images) {
        if (!_source.contains(b)) {
          throw DomainError("generator map image for " + to_string(b)
                            + " outside the source alphabet");
        }
      }
    }

    Alphabet const& source() const noexcept {
      return _source;
    }
    Alphabet const& target() const noexcept {
      return _target;
    }
    std::map<Symbol, Word> const& images() const noexcept {
      return _images;
    }
    bool semigroup_generating() const noexcept {
      return _semigroup;
    }
    Word const& image(Symbol const& b) const {
      return _images.at(b);
    }

   private:
    Alphabet               _source;
    Alphabet               _target;
    std::map<Symbol, Word> _images;
    bool                   _semigroup = false;
  };

  // P = ({(b, u_b) : b in B})*.
  inline Transducer build_p_relation(GeneratorMap const& m) {
    std::vector<std::pair<std::optional<Symbol>, Word>> pairs;
    for (auto const& b : m.source()) {
      pairs.emplace_back(b, m.image(b));
    }
    return transducer_star(transducer_from_pairs(m.source(), m.target(), pairs));
  }

  // Q = P (#1, #1) P (#2, #2) rev(P).
  inline Transducer build_q_relation(GeneratorMap const& m) {
    auto     p = build_p_relation(m);
    Alphabet input  = m.source();
    Alphabet output = m.target();
    for (auto const& x : {Symbol::marker1(), Symbol::marker2()}) {
      input.add(x);
      output.add(x);
    }
    auto marker = [](Symbol const& x) {
      return transducer_from_pairs(Alphabet{x}, Alphabet{x}, {{x, Word{x}}});
    };
    return transducer_concat({p, marker(Symbol::marker1()), p,
                               marker(Symbol::marker2()), transducer_reverse(p)},
                              input,
                              output);
  }

  // The structure over the target alphabet with representatives
  // L = image of s.reps under P, and equality decided by eq_target.
  inline WordHypStructure change_generators(WordHypStructure const& s,
                                            GeneratorMap const&     m,
                                            EqualityDecision        eq_target) {
    if (!(s.alphabet == m.source())) {
      throw DomainError("change_generators: map source differs from the "
                        "structure's alphabet");
    }
    std::map<Symbol, Word> interpretation;
    for (auto const& a : m.target()) {
      interpretation.emplace(a, Word{a});
    }
    return {m.target(),
            relation_image(build_p_relation(m), s.reps),
            std::move(eq_target),
            std::move(interpretation)};
  }

  // (L(reps) - {empty word}) + {e}. Throws DomainError if e is empty or not
  // over the automaton's alphabet.
  inline Nfa adjust_identity_rep(Nfa const& reps, Word const& e) {
    if (e.empty()) {
      throw DomainError("adjust_identity_rep: identity representative must "
                        "be nonempty");
    }
    check_word(reps.alphabet(), e, "adjust_identity_rep");
    auto const                 d     = dfa_from_nfa(reps);
    State const                fresh = d.num_states();
    std::vector<NfaTransition> ts;
    for (auto const& [key, to] : d.delta()) {
      ts.push_back({key.first, key.second, to});
      if (key.first == d.initial()) {
        ts.push_back({fresh, key.second, to});
      }
    }
    Nfa nonempty(fresh + 1, reps.alphabet(), std::move(ts), {fresh},
                 d.accepting());
    return nfa_union(nonempty, nfa_literal(reps.alphabet(), e));
  }

  ////////////////////////////////////////////////////////////////////////
  // The counterexample monoid
  ////////////////////////////////////////////////////////////////////////

  // <a, b, c, d | a b^k c^k d = 1 (k >= alpha_min)>, with the left-hand
  // sides given by S -> a T d, T -> b T c | b c (plus S -> a d when
  // alpha_min is 0).
  inline MonadicCfSystem example_monoid(unsigned alpha_min = 1) {
    if (alpha_min > 1) {
      throw DomainError("alpha_min must be 0 or 1");
    }
    Alphabet const A{"a", "b", "c", "d"};
    Symbol const   S("S"), T("T");
    std::vector<Production> ps{{S, {"a", T, "d"}},
                               {T, {"b", T, "c"}},
                               {T, {"b", "c"}}};
    if (alpha_min == 0) {
      ps.push_back({S, {"a", "d"}});
    }
    Cfg g(Alphabet{S, T}, A, std::move(ps), S);
    return MonadicCfSystem(A, {{std::nullopt, std::move(g)}});
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounded cross-section validation
  ////////////////////////////////////////////////////////////////////////

  // Accepted words of length <= maxlen grouped by normal form.
  inline std::map<Word, std::vector<Word>, ShortLex> group_by_normal_form(
      Nfa const& reps, Rewriter const& rewriter, std::size_t maxlen) {
    std::map<Word, std::vector<Word>, ShortLex> groups;
    for (auto const& w : nfa_enumerate(reps, maxlen)) {
      groups[rewriter.normal_form(w)].push_back(w);
    }
    return groups;
  }

  struct Collision {
    Word first;
    Word second;
    Word normal_form;

    bool operator==(Collision const&) const = default;
  };

  enum class ReportStatus { pass, fail, inconclusive };

  inline std::string to_string(ReportStatus s) {
    switch (s) {
      case ReportStatus::pass:
        return "pass";
      case ReportStatus::fail:
        return "fail";
      case ReportStatus::inconclusive:
      default:
        return "inconclusive";
    }
  }

  struct CrossSectionReport {
    std::size_t            max_len            = 0;
    std::size_t            normal_form_bound  = 0;
    std::size_t            words_enumerated   = 0;
    std::vector<Collision> collisions;   // by (second, first) in shortlex
    std::vector<Word>      unwitnessed;  // shortlex

    ReportStatus status() const noexcept {
      if (!collisions.empty()) {
        return ReportStatus::fail;
      }
      return unwitnessed.empty() ? ReportStatus::pass
                                 : ReportStatus::inconclusive;
    }
  };

  // Normal forms up to this many letters shorter than maxlen must have a
  // representative among the enumerated candidate words.
  inline constexpr std::size_t unwitnessed_slack = 4;

  inline std::size_t normal_form_bound(std::size_t maxlen) {
    return maxlen > unwitnessed_slack ? maxlen - unwitnessed_slack
                                      : std::min<std::size_t>(maxlen, 1);
  }

  // Enumerates L(candidate) to maxlen and groups the words by normal form.
  // Collisions are pairs of distinct candidate words naming one element (the
  // shortlex-least word of each group paired with each other member);
  // unwitnessed lists irreducible words of length <= normal_form_bound(maxlen)
  // with no candidate representative. Neither outcome is a proof about
  // longer words.
  inline CrossSectionReport validate_cross_section(Dfa const&             candidate,
                                                   MonadicCfSystem const& s,
                                                   std::size_t            maxlen) {
    for (auto const& x : candidate.alphabet()) {
      if (!s.alphabet().contains(x)) {
        throw DomainError("candidate letter " + to_string(x)
                          + " is not in the system alphabet");
      }
    }
    Rewriter           rewriter(s);
    CrossSectionReport report;
    report.max_len           = maxlen;
    report.normal_form_bound = normal_form_bound(maxlen);

    auto groups = group_by_normal_form(candidate.to_nfa(), rewriter, maxlen);
    for (auto const& [nf, words] : groups) {
      report.words_enumerated += words.size();
      for (std::size_t j = 1; j < words.size(); ++j) {
        report.collisions.push_back({words[0], words[j], nf});
      }
    }
    std::sort(report.collisions.begin(), report.collisions.end(),
              [](Collision const& x, Collision const& y) {
                if (x.second != y.second) {
                  return shortlex_less(x.second, y.second);
                }
                return shortlex_less(x.first, y.first);
              });
    for (auto const& w : all_words(s.alphabet(), report.normal_form_bound)) {
      if (!rewriter.find_redex(w) && groups.count(w) == 0) {
        report.unwitnessed.push_back(w);
      }
    }
    std::sort(report.unwitnessed.begin(), report.unwitnessed.end(), ShortLex{});
    return report;
  }

}  // namespace hypword

#endif  // HYPWORD_STRUCTURES_HPP_
