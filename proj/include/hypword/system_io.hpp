#ifndef HYPWORD_SYSTEM_IO_HPP_
#define HYPWORD_SYSTEM_IO_HPP_

// Rewriting-system text format:
//
//   alphabet: a b c d
//   rhs eps:
//   start: S
//   S -> a T d
//   T -> b T c | b c
//   rhs a:
//   ...
//
// Each "rhs X:" line opens the rule family with right-hand side X (a letter
// or eps); the lines up to the next header are that family's grammar, whose
// terminals default to the system alphabet.

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "grammar_io.hpp"
#include "rewriting.hpp"
#include "text.hpp"

namespace hypword {

  // Parses without validating the length conditions.
  inline MonadicCfSystem parse_system_unchecked(std::string_view text) {
    auto lines = detail::split_lines(text);

    std::size_t k = 0;
    while (k < lines.size() && lines[k].body.empty()) {
      ++k;
    }
    std::string rest;
    if (k == lines.size() || !detail::strip_key(lines[k].body, "alphabet", rest)) {
      throw SyntaxError(k == lines.size() ? 1 : lines[k].number, 1,
                        "expected 'alphabet:' as the first line");
    }
    Alphabet alphabet;
    for (auto const& t : detail::tokens_at(lines[k], rest)) {
      auto s = detail::symbol_at(lines[k], t);
      if (s.flavor != Flavor::plain || s.name == epsilon_name) {
        throw SyntaxError(lines[k].number, detail::column_of(lines[k].body, t),
                          "alphabet letters must be plain and not 'eps'");
      }
      if (alphabet.contains(s)) {
        throw SyntaxError(lines[k].number, detail::column_of(lines[k].body, t, true),
                          "duplicate letter " + t);
      }
      alphabet.add(s);
    }
    ++k;

    std::map<RuleTarget, Cfg> families;
    while (k < lines.size()) {
      if (lines[k].body.empty()) {
        ++k;
        continue;
      }
      auto const& header = lines[k];
      auto const& body   = header.body;
      if (body.rfind("rhs ", 0) != 0 || body.back() != ':') {
        throw SyntaxError(header.number, 1, "expected 'rhs <letter>:' or 'rhs eps:'");
      }
      auto       name = detail::trim(body.substr(4, body.size() - 5));
      RuleTarget target;
      if (name != epsilon_name) {
        auto s = detail::symbol_at(header, name);
        if (!alphabet.contains(s)) {
          throw SyntaxError(header.number, 5,
                            "right-hand side " + name + " is not in the alphabet");
        }
        target = s;
      }
      if (families.count(target)) {
        throw SyntaxError(header.number, 1,
                          "duplicate family for " + name);
      }
      std::size_t end = k + 1;
      while (end < lines.size() && lines[end].body.rfind("rhs ", 0) != 0) {
        ++end;
      }
      std::vector<detail::Line> block(lines.begin() + k + 1, lines.begin() + end);
      if (std::all_of(block.begin(), block.end(),
                      [](detail::Line const& l) { return l.body.empty(); })) {
        throw SyntaxError(header.number, 1, "family " + name + " has no grammar");
      }
      auto g = detail::parse_grammar_lines(block, &alphabet).grammar;
      for (auto const& t : g.terminals()) {
        if (!alphabet.contains(t)) {
          throw SyntaxError(header.number, 1,
                            "family " + name + " uses letter " + to_string(t)
                                + " outside the alphabet");
        }
      }
      families.emplace(target, std::move(g));
      k = end;
    }
    return MonadicCfSystem(std::move(alphabet), std::move(families));
  }

  // Parses and validates; throws SyntaxError or ValidationError.
  inline MonadicCfSystem parse_system(std::string_view text) {
    auto s      = parse_system_unchecked(text);
    auto report = validate_system(s);
    if (!report.ok()) {
      auto const& v = report.violations.front();
      throw ValidationError(v.family, v.reason);
    }
    return s;
  }

  inline std::string emit_system(MonadicCfSystem const& s) {
    std::string out = "alphabet:";
    for (auto const& a : s.alphabet()) {
      out += " " + to_string(a);
    }
    out += "\n";
    for (auto const& [target, g] : s.families()) {
      out += "rhs " + family_name(target) + ":\n";
      out += emit_grammar(g);
    }
    return out;
  }

}  // namespace hypword

#endif  // HYPWORD_SYSTEM_IO_HPP_
