#ifndef HYPWORD_AUTOMATA_IO_HPP_
#define HYPWORD_AUTOMATA_IO_HPP_

// Automaton text format:
//
//   states: q0 q1
//   alphabet: a b
//   initial: q0
//   accepting: q1
//   trans: q0 a q1
//   trans: q1 _ q0          ; '_' is an epsilon move
//
// Transducers declare "input:" and "output:" alphabets instead of
// "alphabet:", and label transitions in/out, where either side may be '_'
// and the output is a comma-separated word:
//
//   trans: q0 b/x,y q0
//
// Generator maps:
//
//   source: b
//   target: x y
//   semigroup: yes          (optional; images must then be nonempty)
//   b -> x y
//
// Lines may appear in any order, except that states, alphabets and
// "source:"/"target:" must precede their use.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "automata.hpp"
#include "core.hpp"
#include "error.hpp"
#include "structures.hpp"
#include "text.hpp"

namespace hypword {

  namespace detail {

    struct AutomatonHeader {
      std::map<std::string, State> states;
      std::size_t                  num_states = 0;
      StateSet                     initial;
      StateSet                     accepting;
    };

    inline State state_at(AutomatonHeader const& h, Line const& line,
                          std::string const& name) {
      auto it = h.states.find(name);
      if (it == h.states.end()) {
        throw SyntaxError(line.number, column_of(line.body, name),
                          "undeclared state '" + name + "'");
      }
      return it->second;
    }

    inline Alphabet alphabet_at(Line const& line, std::string const& rest) {
      Alphabet a;
      for (auto const& t : tokens_at(line, rest)) {
        auto s = symbol_at(line, t);
        if (a.contains(s)) {
          throw SyntaxError(line.number, column_of(line.body, t, true),
                            "duplicate symbol " + t);
        }
        a.add(s);
      }
      return a;
    }

    // Handles states/initial/accepting lines; false for any other line.
    inline bool header_line(AutomatonHeader& h, Line const& line) {
      std::string rest;
      if (strip_key(line.body, "states", rest)) {
        for (auto const& t : tokens_at(line, rest)) {
          if (!h.states.emplace(t, h.num_states).second) {
            throw SyntaxError(line.number, column_of(line.body, t, true),
                              "duplicate state '" + t + "'");
          }
          ++h.num_states;
        }
        return true;
      }
      if (strip_key(line.body, "initial", rest)) {
        for (auto const& t : tokens_at(line, rest)) {
          h.initial.insert(state_at(h, line, t));
        }
        return true;
      }
      if (strip_key(line.body, "accepting", rest)) {
        for (auto const& t : tokens_at(line, rest)) {
          h.accepting.insert(state_at(h, line, t));
        }
        return true;
      }
      return false;
    }

    inline std::string emit_states(std::size_t num_states) {
      std::string out = "states:";
      for (std::size_t i = 0; i < num_states; ++i) {
        out += " q" + std::to_string(i);
      }
      return out + "\n";
    }

    inline std::string state_list(StateSet const& s) {
      std::string out;
      for (auto x : s) {
        out += " q" + std::to_string(x);
      }
      return out;
    }

    inline std::string alphabet_list(Alphabet const& a) {
      std::string out;
      for (auto const& s : a) {
        out += " " + to_string(s);
      }
      return out;
    }

    inline std::optional<Symbol> label_at(Line const& line,
                                          std::string const& token) {
      if (token == "_") {
        return std::nullopt;
      }
      return symbol_at(line, token);
    }

    // Splits on sep outside double quotes.
    inline std::vector<std::string> split_unquoted(std::string const& s,
                                                   char               sep) {
      std::vector<std::string> parts{""};
      bool                     quoted = false;
      for (char c : s) {
        if (c == '"') {
          quoted = !quoted;
        }
        if (c == sep && !quoted) {
          parts.emplace_back();
        } else {
          parts.back() += c;
        }
      }
      return parts;
    }

  }  // namespace detail

  inline Nfa parse_nfa(std::string_view text) {
    detail::AutomatonHeader h;
    std::optional<Alphabet> alphabet;
    std::vector<NfaTransition> ts;
    for (auto const& line : detail::split_lines(text)) {
      if (line.body.empty() || detail::header_line(h, line)) {
        continue;
      }
      std::string rest;
      if (detail::strip_key(line.body, "alphabet", rest)) {
        alphabet = detail::alphabet_at(line, rest);
        continue;
      }
      if (detail::strip_key(line.body, "trans", rest)) {
        auto toks = detail::tokens_at(line, rest);
        if (toks.size() != 3) {
          throw SyntaxError(line.number, 1, "expected 'trans: q a q''");
        }
        if (!alphabet) {
          throw SyntaxError(line.number, 1, "'alphabet:' must precede transitions");
        }
        auto label = detail::label_at(line, toks[1]);
        if (label && !alphabet->contains(*label)) {
          throw SyntaxError(line.number, detail::column_of(line.body, toks[1]),
                            "label " + toks[1] + " is not in the alphabet");
        }
        ts.push_back({detail::state_at(h, line, toks[0]), label,
                      detail::state_at(h, line, toks[2])});
        continue;
      }
      throw SyntaxError(line.number, 1, "unrecognised line");
    }
    if (h.num_states == 0) {
      throw SyntaxError(1, 1, "missing 'states:' line");
    }
    if (!alphabet) {
      throw SyntaxError(1, 1, "missing 'alphabet:' line");
    }
    return Nfa(h.num_states, std::move(*alphabet), std::move(ts),
               std::move(h.initial), std::move(h.accepting));
  }

  inline std::string emit_nfa(Nfa const& a) {
    std::string out = detail::emit_states(a.num_states());
    out += "alphabet:" + detail::alphabet_list(a.alphabet()) + "\n";
    out += "initial:" + detail::state_list(a.initial()) + "\n";
    out += "accepting:" + detail::state_list(a.accepting()) + "\n";
    std::set<NfaTransition> sorted(a.transitions().begin(),
                                   a.transitions().end());
    for (auto const& t : sorted) {
      out += "trans: q" + std::to_string(t.from) + " "
             + (t.label ? to_string(*t.label) : std::string("_")) + " q"
             + std::to_string(t.to) + "\n";
    }
    return out;
  }

  inline Transducer parse_transducer(std::string_view text) {
    detail::AutomatonHeader           h;
    std::optional<Alphabet>           input, output;
    std::vector<TransducerTransition> ts;
    for (auto const& line : detail::split_lines(text)) {
      if (line.body.empty() || detail::header_line(h, line)) {
        continue;
      }
      std::string rest;
      if (detail::strip_key(line.body, "input", rest)) {
        input = detail::alphabet_at(line, rest);
        continue;
      }
      if (detail::strip_key(line.body, "output", rest)) {
        output = detail::alphabet_at(line, rest);
        continue;
      }
      if (detail::strip_key(line.body, "trans", rest)) {
        auto toks = detail::tokens_at(line, rest);
        if (toks.size() != 3) {
          throw SyntaxError(line.number, 1, "expected 'trans: q in/out q''");
        }
        if (!input || !output) {
          throw SyntaxError(line.number, 1,
                            "'input:' and 'output:' must precede transitions");
        }
        auto io = detail::split_unquoted(toks[1], '/');
        if (io.size() != 2 || io[0].empty() || io[1].empty()) {
          throw SyntaxError(line.number, detail::column_of(line.body, toks[1]),
                            "expected in/out label");
        }
        auto in = detail::label_at(line, io[0]);
        if (in && !input->contains(*in)) {
          throw SyntaxError(line.number, detail::column_of(line.body, toks[1]),
                            "input " + io[0] + " is not in the input alphabet");
        }
        Word out;
        if (io[1] != "_") {
          for (auto const& part : detail::split_unquoted(io[1], ',')) {
            auto s = detail::symbol_at(line, part);
            if (!output->contains(s)) {
              throw SyntaxError(line.number,
                                detail::column_of(line.body, toks[1]),
                                "output " + part
                                    + " is not in the output alphabet");
            }
            out.push_back(std::move(s));
          }
        }
        ts.push_back({detail::state_at(h, line, toks[0]), in, std::move(out),
                      detail::state_at(h, line, toks[2])});
        continue;
      }
      throw SyntaxError(line.number, 1, "unrecognised line");
    }
    if (h.num_states == 0) {
      throw SyntaxError(1, 1, "missing 'states:' line");
    }
    if (!input || !output) {
      throw SyntaxError(1, 1, "missing 'input:' or 'output:' line");
    }
    return Transducer(h.num_states, std::move(*input), std::move(*output),
                      std::move(ts), std::move(h.initial),
                      std::move(h.accepting));
  }

  inline std::string emit_transducer(Transducer const& t) {
    std::string out = detail::emit_states(t.num_states());
    out += "input:" + detail::alphabet_list(t.input_alphabet()) + "\n";
    out += "output:" + detail::alphabet_list(t.output_alphabet()) + "\n";
    out += "initial:" + detail::state_list(t.initial()) + "\n";
    out += "accepting:" + detail::state_list(t.accepting()) + "\n";
    std::set<TransducerTransition> sorted(t.transitions().begin(),
                                          t.transitions().end());
    for (auto const& tr : sorted) {
      std::string label = tr.input ? to_string(*tr.input) : std::string("_");
      label += "/";
      if (tr.output.empty()) {
        label += "_";
      }
      for (std::size_t i = 0; i < tr.output.size(); ++i) {
        label += (i ? "," : "") + to_string(tr.output[i]);
      }
      out += "trans: q" + std::to_string(tr.from) + " " + label + " q"
             + std::to_string(tr.to) + "\n";
    }
    return out;
  }

  inline GeneratorMap parse_generator_map(std::string_view text) {
    std::optional<Alphabet> source, target;
    bool                    semigroup = false;
    std::map<Symbol, Word>  images;
    for (auto const& line : detail::split_lines(text)) {
      if (line.body.empty()) {
        continue;
      }
      std::string rest;
      if (detail::strip_key(line.body, "source", rest)) {
        source = detail::alphabet_at(line, rest);
        continue;
      }
      if (detail::strip_key(line.body, "target", rest)) {
        target = detail::alphabet_at(line, rest);
        continue;
      }
      if (detail::strip_key(line.body, "semigroup", rest)) {
        if (rest != "yes" && rest != "no") {
          throw SyntaxError(line.number, 1, "expected 'semigroup: yes|no'");
        }
        semigroup = rest == "yes";
        continue;
      }
      auto arrow = line.body.find("->");
      if (arrow == std::string::npos) {
        throw SyntaxError(line.number, 1, "expected 'b -> word'");
      }
      auto lhs = detail::tokens_at(line, line.body.substr(0, arrow));
      if (lhs.size() != 1) {
        throw SyntaxError(line.number, 1, "expected one source letter");
      }
      auto b = detail::symbol_at(line, lhs[0]);
      Word image;
      try {
        image = parse_word(line.body.substr(arrow + 2));
      } catch (DomainError const& e) {
        throw SyntaxError(line.number, arrow + 3, e.what());
      }
      if (!images.emplace(b, std::move(image)).second) {
        throw SyntaxError(line.number, 1, "duplicate image for " + lhs[0]);
      }
    }
    if (!source || !target) {
      throw SyntaxError(1, 1, "missing 'source:' or 'target:' line");
    }
    return GeneratorMap(std::move(*source), std::move(*target),
                        std::move(images), semigroup);
  }

  inline std::string emit_generator_map(GeneratorMap const& m) {
    std::string out = "source:" + detail::alphabet_list(m.source()) + "\n";
    out += "target:" + detail::alphabet_list(m.target()) + "\n";
    if (m.semigroup_generating()) {
      out += "semigroup: yes\n";
    }
    for (auto const& b : m.source()) {
      out += to_string(b) + " -> " + to_string(m.image(b)) + "\n";
    }
    return out;
  }

}  // namespace hypword

#endif  // HYPWORD_AUTOMATA_IO_HPP_
