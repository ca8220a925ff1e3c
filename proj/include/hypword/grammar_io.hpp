#ifndef HYPWORD_GRAMMAR_IO_HPP_
#define HYPWORD_GRAMMAR_IO_HPP_

// Grammar text format:
//
//   ; comment
//   start: S
//   nonterminals: S T        (optional)
//   terminals: a b c d       (optional)
//   S -> a T d
//   T -> b T c | b c         ; trailing comments are kept as tags
//   E -> _                   ; '_' is the empty right-hand side
//
// Undeclared tokens are classified by shape: a token that occurs on the
// left of some production, or starts with an uppercase letter, is a
// nonterminal; every other token is a terminal.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "grammar.hpp"
#include "text.hpp"

namespace hypword {

  struct TaggedGrammar {
    Cfg                      grammar;
    std::vector<std::string> tags;  // one per production, may be empty
  };

  namespace detail {

    inline std::string render_grammar_symbol(Cfg const& g, Symbol const& s) {
      if (g.is_nonterminal(s) && s.flavor == Flavor::plain && !s.name.empty()
          && std::isupper(static_cast<unsigned char>(s.name.front()))) {
        bool bare = true;
        for (char c : s.name) {
          if (is_space(c) || c == '"' || c == '|' || c == ';') {
            bare = false;
          }
        }
        if (bare) {
          return s.name;
        }
      }
      return to_string(s);
    }

    inline TaggedGrammar parse_grammar_lines(std::vector<Line> const& lines,
                                             Alphabet const* default_terminals) {
      std::optional<Symbol> start;
      std::size_t           start_line = 1;
      std::optional<std::vector<Symbol>> declared_nts;
      std::optional<std::vector<Symbol>> declared_ts;

      struct RawProduction {
        Line const*              line;
        std::string              lhs;
        std::vector<std::string> rhs;
      };
      std::vector<RawProduction> raw;

      for (auto const& line : lines) {
        if (line.body.empty()) {
          continue;
        }
        std::string rest;
        if (strip_key(line.body, "start", rest)) {
          auto toks = tokens_at(line, rest);
          if (toks.size() != 1) {
            throw SyntaxError(line.number, 1,
                              "'start:' expects exactly one symbol");
          }
          start      = symbol_at(line, toks[0]);
          start_line = line.number;
          continue;
        }
        if (strip_key(line.body, "nonterminals", rest)
            || strip_key(line.body, "terminals", rest)) {
          bool const nts  = line.body.front() == 'n';
          auto&      decl = nts ? declared_nts : declared_ts;
          decl.emplace();
          for (auto const& t : tokens_at(line, rest)) {
            decl->push_back(symbol_at(line, t));
          }
          continue;
        }
        auto arrow = line.body.find("->");
        if (arrow == std::string::npos) {
          throw SyntaxError(line.number, 1, "expected 'NT -> ...'");
        }
        auto lhs_toks = tokens_at(line, line.body.substr(0, arrow));
        if (lhs_toks.size() != 1) {
          throw SyntaxError(line.number, 1,
                            "a production needs exactly one left-hand symbol");
        }
        auto        rhs_text = line.body.substr(arrow + 2);
        std::size_t pos      = 0;
        while (true) {
          // '|' inside quotes is part of a token.
          auto   bar    = std::string::npos;
          bool   quoted = false;
          for (std::size_t i = pos; i < rhs_text.size(); ++i) {
            if (rhs_text[i] == '"') {
              quoted = !quoted;
            } else if (rhs_text[i] == '|' && !quoted) {
              bar = i;
              break;
            }
          }
          auto alt  = rhs_text.substr(pos, bar == std::string::npos
                                               ? std::string::npos
                                               : bar - pos);
          auto toks = tokens_at(line, alt);
          if (toks.empty()) {
            throw SyntaxError(line.number,
                              arrow + 3 + pos,
                              "empty alternative (write '_' for an empty "
                              "right-hand side)");
          }
          if (toks.size() == 1 && toks[0] == "_") {
            toks.clear();
          } else {
            for (auto const& t : toks) {
              if (t == "_") {
                throw SyntaxError(line.number, column_of(line.body, alt),
                                  "'_' must stand alone");
              }
            }
          }
          raw.push_back({&line, lhs_toks[0], std::move(toks)});
          if (bar == std::string::npos) {
            break;
          }
          pos = bar + 1;
        }
      }
      if (!start) {
        throw SyntaxError(lines.empty() ? 1 : lines.front().number, 1,
                          "missing 'start:' line");
      }

      std::set<Symbol> lhs_set;
      for (auto const& r : raw) {
        lhs_set.insert(symbol_at(*r.line, r.lhs));
      }
      std::set<Symbol> decl_nt_set, decl_t_set;
      if (declared_nts) {
        decl_nt_set.insert(declared_nts->begin(), declared_nts->end());
      }
      if (declared_ts) {
        decl_t_set.insert(declared_ts->begin(), declared_ts->end());
      }
      auto is_nt = [&](std::string const& token, Symbol const& s) {
        if (decl_nt_set.count(s) || lhs_set.count(s) || s == *start) {
          return true;
        }
        if (decl_t_set.count(s)) {
          return false;
        }
        return token.front() != '"'
               && std::isupper(static_cast<unsigned char>(token.front()));
      };

      Alphabet nonterminals, terminals;
      if (declared_nts) {
        for (auto const& s : *declared_nts) {
          nonterminals.insert(s);
        }
      }
      nonterminals.insert(*start);
      if (declared_ts) {
        for (auto const& s : *declared_ts) {
          terminals.insert(s);
        }
      } else if (default_terminals != nullptr) {
        for (auto const& s : *default_terminals) {
          terminals.insert(s);
        }
      }

      std::vector<Production>  productions;
      std::vector<std::string> tags;
      std::set<Production>     seen;
      for (auto const& r : raw) {
        Production p{symbol_at(*r.line, r.lhs), {}};
        nonterminals.insert(p.lhs);
        for (auto const& t : r.rhs) {
          auto s = symbol_at(*r.line, t);
          if (is_nt(t, s)) {
            nonterminals.insert(s);
          } else {
            terminals.insert(s);
          }
          p.rhs.push_back(std::move(s));
        }
        if (seen.insert(p).second) {
          productions.push_back(std::move(p));
          tags.push_back(r.line->comment);
        }
      }
      try {
        return {Cfg(std::move(nonterminals), std::move(terminals),
                    std::move(productions), *start),
                std::move(tags)};
      } catch (DomainError const& e) {
        throw SyntaxError(start_line, 1, e.what());
      }
    }

  }  // namespace detail

  inline TaggedGrammar parse_tagged_grammar(std::string_view text) {
    return detail::parse_grammar_lines(detail::split_lines(text), nullptr);
  }

  // With trim_grammar set, unproductive and unreachable productions are
  // dropped after parsing.
  inline Cfg parse_grammar(std::string_view text, bool trim_grammar = false) {
    auto g = parse_tagged_grammar(text).grammar;
    return trim_grammar ? trim(g) : g;
  }

  // Renders g with explicit nonterminal and terminal declarations, one
  // production per line in stored order, so that parse_grammar(emit(g)) == g.
  // tags, when given, must be parallel to g.productions().
  inline std::string emit_grammar(Cfg const&                      g,
                                  std::vector<std::string> const* tags = nullptr) {
    auto        sym = [&g](Symbol const& s) {
      return detail::render_grammar_symbol(g, s);
    };
    std::string out = "start: " + sym(g.start()) + "\n";
    out += "nonterminals:";
    for (auto const& n : g.nonterminals()) {
      out += " " + sym(n);
    }
    out += "\nterminals:";
    for (auto const& t : g.terminals()) {
      out += " " + sym(t);
    }
    out += "\n";
    for (std::size_t i = 0; i < g.productions().size(); ++i) {
      auto const& p = g.productions()[i];
      out += sym(p.lhs) + " ->";
      if (p.rhs.empty()) {
        out += " _";
      }
      for (auto const& s : p.rhs) {
        out += " " + sym(s);
      }
      if (tags != nullptr && !(*tags)[i].empty()) {
        out += " ; " + (*tags)[i];
      }
      out += "\n";
    }
    return out;
  }

}  // namespace hypword

#endif  // HYPWORD_GRAMMAR_IO_HPP_
