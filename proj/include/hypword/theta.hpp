#ifndef HYPWORD_THETA_HPP_
#define HYPWORD_THETA_HPP_

// Compilation of a confluent context-free monadic rewriting system (A, R)
// into a grammar Theta over A + {#2} with
//
//   L(Theta) = { u #2 rev(v) : u, v in A*, u = v in the presented monoid },
//
// and the membership decisions for that language and for the multiplication
// table { u #1 v #2 rev(w) : uv = w } built on it.
//
// Theta is the union of
//   * a grammar Delta for { $p #2 ~rev(p) } (p empty gives $eps #2 ~eps),
//   * for each a in A + {eps}, copies G'_a and G''_a of the left-hand side
//     grammar G_a with terminals b replaced by $b, resp. with reversed
//     right-hand sides and terminals b replaced by ~b,
//   * insertion productions $a -> $a $eps | $eps $a, ~a -> ~a ~eps | ~eps ~a,
//   * start productions $a -> O'_a, ~a -> O''_a,
//   * end productions $a -> a, ~a -> a (empty right-hand side for a = eps),
// where the annotated letters $a, ~a are now nonterminals.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "core.hpp"
#include "earley.hpp"
#include "error.hpp"
#include "grammar.hpp"
#include "grammar_io.hpp"
#include "rewriting.hpp"

namespace hypword {

  enum class ProductionKind : unsigned char {
    delta,
    gamma_prime,
    gamma_tilde,
    insertion,
    start,
    end
  };

  // Which part of the construction a production of Theta comes from. Every
  // kind except delta is indexed by a letter or eps.
  struct ProductionFamily {
    ProductionKind kind;
    RuleTarget     letter;

    bool operator==(ProductionFamily const&) const = default;
  };

  std::string to_string(ProductionFamily const& f);
  ProductionFamily parse_production_family(std::string_view tag);

  struct ThetaGrammar {
    Alphabet                      base;  // A
    Cfg                           grammar;
    std::vector<ProductionFamily> provenance;  // parallel to productions

    std::vector<Production> productions_of(ProductionKind kind) const {
      std::vector<Production> result;
      for (std::size_t i = 0; i < provenance.size(); ++i) {
        if (provenance[i].kind == kind) {
          result.push_back(grammar.productions()[i]);
        }
      }
      return result;
    }
  };

  // G'_a: terminals b replaced by $b. G must have no empty productions.
  inline Cfg build_gamma_prime(Cfg const& g) {
    if (g.has_empty_productions()) {
      throw PreconditionError(
          "build_gamma_prime: grammar has an empty production");
    }
    std::map<Symbol, Symbol> m;
    for (auto const& t : g.terminals()) {
      m.emplace(t, annotated(t, Flavor::dollar));
    }
    return relabel_terminals(g, m);
  }

  // G''_a: right-hand sides reversed and terminals b replaced by ~b.
  inline Cfg build_gamma_tilde(Cfg const& g) {
    if (g.has_empty_productions()) {
      throw PreconditionError(
          "build_gamma_tilde: grammar has an empty production");
    }
    std::map<Symbol, Symbol> m;
    for (auto const& t : g.terminals()) {
      m.emplace(t, annotated(t, Flavor::tilde));
    }
    return relabel_terminals(reverse_productions(g), m);
  }

  // Delta, with productions
  //   O -> $a I ~a, I -> $a I ~a (a in A), I -> #2, O -> $eps #2 ~eps.
  inline Cfg build_delta(Alphabet const& a) {
    Symbol const start("O");
    Symbol const inner("I");
    Alphabet     terminals;
    for (auto const& x : a) {
      terminals.add(annotated(x, Flavor::dollar));
    }
    for (auto const& x : a) {
      terminals.add(annotated(x, Flavor::tilde));
    }
    terminals.add(annotated_epsilon(Flavor::dollar));
    terminals.add(annotated_epsilon(Flavor::tilde));
    terminals.add(Symbol::marker2());

    std::vector<Production> productions;
    for (auto const& x : a) {
      productions.push_back(
          {start,
           {annotated(x, Flavor::dollar), inner, annotated(x, Flavor::tilde)}});
    }
    for (auto const& x : a) {
      productions.push_back(
          {inner,
           {annotated(x, Flavor::dollar), inner, annotated(x, Flavor::tilde)}});
    }
    productions.push_back({inner, {Symbol::marker2()}});
    productions.push_back({start,
                           {annotated_epsilon(Flavor::dollar),
                            Symbol::marker2(),
                            annotated_epsilon(Flavor::tilde)}});
    return Cfg(Alphabet{start, inner}, std::move(terminals),
               std::move(productions), start);
  }

  namespace detail {
    inline Symbol annotate_target(RuleTarget const& a, Flavor f) {
      return a ? annotated(*a, f) : annotated_epsilon(f);
    }

    inline std::vector<RuleTarget> targets_of(Alphabet const& a) {
      std::vector<RuleTarget> result(a.begin(), a.end());
      result.push_back(std::nullopt);
      return result;
    }
  }  // namespace detail

  // Throws ValidationError if s fails validate_system.
  inline ThetaGrammar build_theta(MonadicCfSystem const& s) {
    auto report = validate_system(s);
    if (!report.ok()) {
      auto const& v = report.violations.front();
      throw ValidationError(v.family, v.reason);
    }
    auto const targets = detail::targets_of(s.alphabet());

    // Combination order: Delta, then G'_a, G''_a for each target.
    std::vector<Cfg> parts{build_delta(s.alphabet())};
    for (auto const& a : targets) {
      auto g = eliminate_epsilon_productions(s.family_or_empty(a));
      parts.push_back(build_gamma_prime(g));
      parts.push_back(build_gamma_tilde(g));
    }
    parts = disjoint_rename(parts);

    Alphabet nonterminals;
    for (auto const& n : parts[0].nonterminals()) {
      nonterminals.add(n);
    }
    for (auto f : {Flavor::dollar, Flavor::tilde}) {
      for (auto const& a : targets) {
        nonterminals.add(detail::annotate_target(a, f));
      }
    }
    for (std::size_t k = 1; k < parts.size(); ++k) {
      for (auto const& n : parts[k].nonterminals()) {
        nonterminals.add(n);
      }
    }
    Alphabet terminals = s.alphabet();
    terminals.add(Symbol::marker2());

    std::vector<Production>       productions;
    std::vector<ProductionFamily> provenance;
    auto add = [&](Production p, ProductionKind kind, RuleTarget letter) {
      productions.push_back(std::move(p));
      provenance.push_back({kind, std::move(letter)});
    };

    for (auto const& p : parts[0].productions()) {
      add(p, ProductionKind::delta, std::nullopt);
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
      for (auto const& p : parts[1 + 2 * i].productions()) {
        add(p, ProductionKind::gamma_prime, targets[i]);
      }
      for (auto const& p : parts[2 + 2 * i].productions()) {
        add(p, ProductionKind::gamma_tilde, targets[i]);
      }
    }
    for (auto const& a : targets) {
      for (auto f : {Flavor::dollar, Flavor::tilde}) {
        Symbol const x   = detail::annotate_target(a, f);
        Symbol const eps = annotated_epsilon(f);
        add({x, {x, eps}}, ProductionKind::insertion, a);
        add({x, {eps, x}}, ProductionKind::insertion, a);
      }
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
      add({detail::annotate_target(targets[i], Flavor::dollar),
           {parts[1 + 2 * i].start()}},
          ProductionKind::start,
          targets[i]);
      add({detail::annotate_target(targets[i], Flavor::tilde),
           {parts[2 + 2 * i].start()}},
          ProductionKind::start,
          targets[i]);
    }
    for (auto const& a : targets) {
      Word rhs;
      if (a) {
        rhs.push_back(*a);
      }
      add({detail::annotate_target(a, Flavor::dollar), rhs},
          ProductionKind::end, a);
      add({detail::annotate_target(a, Flavor::tilde), rhs},
          ProductionKind::end, a);
    }

    // For a = eps the two insertion productions of each flavor coincide;
    // the grammar keeps one copy, tagged by its first occurrence.
    std::vector<Production>       unique;
    std::vector<ProductionFamily> unique_provenance;
    std::set<Production>          seen;
    for (std::size_t i = 0; i < productions.size(); ++i) {
      if (seen.insert(productions[i]).second) {
        unique.push_back(productions[i]);
        unique_provenance.push_back(provenance[i]);
      }
    }
    return ThetaGrammar{
        s.alphabet(),
        Cfg(std::move(nonterminals), std::move(terminals), std::move(unique),
            parts[0].start()),
        std::move(unique_provenance)};
  }

  // Membership in L(Theta), and hence equality in the monoid, for a fixed
  // compiled Theta.
  class ThetaDecider {
   public:
    explicit ThetaDecider(ThetaGrammar t)
        : _theta(std::move(t)),
          _recognizer(_theta.grammar),
          _phi(erase_marker1(_theta.base)) {}

    ThetaGrammar const& theta() const noexcept {
      return _theta;
    }

    Recognizer const& recognizer() const noexcept {
      return _recognizer;
    }

    // u #2 rev(v) in L(Theta).
    bool k_member(Word const& u, Word const& v) const {
      check_word(_theta.base, u, "k_member");
      check_word(_theta.base, v, "k_member");
      Word w = u;
      w.push_back(Symbol::marker2());
      w.insert(w.end(), v.rbegin(), v.rend());
      return _recognizer.accepts(w);
    }

    // u #1 v #2 rev(w) in M(A*), decided as membership of its image under
    // #1 -> empty in L(Theta).
    bool mtable_member(Word const& u, Word const& v, Word const& w) const {
      check_word(_theta.base, u, "mtable_member");
      check_word(_theta.base, v, "mtable_member");
      check_word(_theta.base, w, "mtable_member");
      Word x = u;
      x.push_back(Symbol::marker1());
      x.insert(x.end(), v.begin(), v.end());
      x.push_back(Symbol::marker2());
      x.insert(x.end(), w.rbegin(), w.rend());
      return _recognizer.accepts(_phi(x));
    }

    // form =>* w in Theta.
    bool derives(Word const& form, Word const& w) const {
      return _recognizer.derives(form, w);
    }

   private:
    ThetaGrammar _theta;
    Recognizer   _recognizer;
    Homomorphism _phi;
  };

  inline bool k_member(ThetaGrammar const& t, Word const& u, Word const& v) {
    return ThetaDecider(t).k_member(u, v);
  }

  inline bool mtable_member(ThetaGrammar const& t, Word const& u, Word const& v,
                            Word const& w) {
    return ThetaDecider(t).mtable_member(u, v, w);
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form
  ////////////////////////////////////////////////////////////////////////

  inline std::string to_string(ProductionFamily const& f) {
    std::string kind;
    switch (f.kind) {
      case ProductionKind::delta:
        return "delta";
      case ProductionKind::gamma_prime:
        kind = "gamma-prime";
        break;
      case ProductionKind::gamma_tilde:
        kind = "gamma-tilde";
        break;
      case ProductionKind::insertion:
        kind = "insertion";
        break;
      case ProductionKind::start:
        kind = "start";
        break;
      case ProductionKind::end:
        kind = "end";
        break;
    }
    return kind + " " + family_name(f.letter);
  }

  inline ProductionFamily parse_production_family(std::string_view tag) {
    auto tokens = detail::tokenize(tag);
    if (tokens.size() == 1 && tokens[0] == "delta") {
      return {ProductionKind::delta, std::nullopt};
    }
    if (tokens.size() != 2) {
      throw DomainError("malformed production tag '" + std::string(tag) + "'");
    }
    static std::map<std::string, ProductionKind, std::less<>> const kinds{
        {"gamma-prime", ProductionKind::gamma_prime},
        {"gamma-tilde", ProductionKind::gamma_tilde},
        {"insertion", ProductionKind::insertion},
        {"start", ProductionKind::start},
        {"end", ProductionKind::end}};
    auto it = kinds.find(tokens[0]);
    if (it == kinds.end()) {
      throw DomainError("unknown production family '" + tokens[0] + "'");
    }
    RuleTarget letter;
    if (tokens[1] != epsilon_name) {
      letter = parse_symbol(tokens[1]);
    }
    return {it->second, letter};
  }

  // Deterministic rendering: productions sorted by family kind, then by
  // their text; each line carries its family as a trailing comment.
  inline std::string emit_theta(ThetaGrammar const& t) {
    auto const& g = t.grammar;
    std::vector<std::tuple<int, std::string, std::size_t>> order;
    for (std::size_t i = 0; i < g.productions().size(); ++i) {
      auto const& p    = g.productions()[i];
      std::string line = detail::render_grammar_symbol(g, p.lhs) + " ->";
      for (auto const& s : p.rhs) {
        line += " " + detail::render_grammar_symbol(g, s);
      }
      order.emplace_back(static_cast<int>(t.provenance[i].kind), line, i);
    }
    std::sort(order.begin(), order.end());
    std::vector<Production>  productions;
    std::vector<std::string> tags;
    for (auto const& [kind, line, i] : order) {
      productions.push_back(g.productions()[i]);
      tags.push_back(to_string(t.provenance[i]));
    }
    Cfg sorted(g.nonterminals(), g.terminals(), std::move(productions),
               g.start());
    return emit_grammar(sorted, &tags);
  }

  // Reads a grammar written by emit_theta. Throws SyntaxError on malformed
  // text or a production without a family tag.
  inline ThetaGrammar parse_theta(std::string_view text) {
    auto [g, tags] = parse_tagged_grammar(text);
    std::vector<ProductionFamily> provenance;
    for (std::size_t i = 0; i < tags.size(); ++i) {
      try {
        provenance.push_back(parse_production_family(tags[i]));
      } catch (DomainError const& e) {
        throw SyntaxError(1, 1, "production " + std::to_string(i + 1) + ": "
                                    + e.what());
      }
    }
    if (!g.terminals().contains(Symbol::marker2())) {
      throw SyntaxError(1, 1, "grammar has no #2 terminal");
    }
    Alphabet base;
    for (auto const& s : g.terminals()) {
      if (s != Symbol::marker2()) {
        base.add(s);
      }
    }
    return ThetaGrammar{std::move(base), std::move(g), std::move(provenance)};
  }

}  // namespace hypword

#endif  // HYPWORD_THETA_HPP_
