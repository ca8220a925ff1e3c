#ifndef HYPWORD_CLI_HPP_
#define HYPWORD_CLI_HPP_

// Command-line front end. run() takes the arguments without the program
// name and returns the process exit code:
//
//   0  success, or "true" for boolean verbs
//   1  "false" for boolean verbs
//   2  usage, syntax, validation or resource errors
//   3  cross-section collision found
//
// A system argument may be a file path or "@example42" for the built-in
// system (see --alpha-min).

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "automata.hpp"
#include "automata_io.hpp"
#include "core.hpp"
#include "error.hpp"
#include "grammar.hpp"
#include "grammar_io.hpp"
#include "rewriting.hpp"
#include "structures.hpp"
#include "system_io.hpp"
#include "theta.hpp"

namespace hypword::cli {

  inline constexpr int exit_true      = 0;
  inline constexpr int exit_false     = 1;
  inline constexpr int exit_error     = 2;
  inline constexpr int exit_collision = 3;

  inline constexpr std::string_view builtin_example = "@example42";

  // Collisions and unwitnessed words beyond this many are summarised.
  inline constexpr std::size_t report_limit = 10;

  namespace detail {

    inline std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw Error("cannot read " + path);
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }

    inline void write_file(std::string const& path, std::string const& text) {
      std::ofstream out(path, std::ios::binary);
      if (!out || !(out << text)) {
        throw Error("cannot write " + path);
      }
    }

    // The first line that is not blank or a comment.
    inline std::string first_line(std::string_view text) {
      for (auto const& line : hypword::detail::split_lines(text)) {
        if (!line.body.empty()) {
          return line.body;
        }
      }
      return "";
    }

    inline bool starts_with_key(std::string_view text, std::string_view key) {
      std::string rest;
      return hypword::detail::strip_key(first_line(text), key, rest);
    }

    inline MonadicCfSystem trimmed(MonadicCfSystem const& s) {
      std::map<RuleTarget, Cfg> families;
      for (auto const& [target, g] : s.families()) {
        families.emplace(target, trim(g));
      }
      return MonadicCfSystem(s.alphabet(), std::move(families));
    }

    struct Options {
      unsigned    alpha_min = 1;
      bool        trim      = false;
    };

    inline MonadicCfSystem load_system(std::string const& path,
                                       Options const&     opts) {
      if (path == builtin_example) {
        return example_monoid(opts.alpha_min);
      }
      auto text = read_file(path);
      if (!opts.trim) {
        return parse_system(text);
      }
      auto s      = trimmed(parse_system_unchecked(text));
      auto report = validate_system(s);
      if (!report.ok()) {
        auto const& v = report.violations.front();
        throw ValidationError(v.family, v.reason);
      }
      return s;
    }

    // A rewriting system is compiled on the fly; anything else is read as
    // a grammar written by "compile".
    inline ThetaGrammar load_theta(std::string const& path, Options const& opts) {
      if (path == builtin_example) {
        return build_theta(example_monoid(opts.alpha_min));
      }
      auto text = read_file(path);
      if (starts_with_key(text, "alphabet")) {
        return build_theta(load_system(path, opts));
      }
      return parse_theta(text);
    }

    inline Word word_arg(std::string const& s) {
      return parse_word(s);
    }

    inline int boolean(std::ostream& out, bool b) {
      out << (b ? "true" : "false") << "\n";
      return b ? exit_true : exit_false;
    }

    inline void add_max_len(CLI::App* sub, std::size_t& max_len) {
      sub->add_option("--max-len", max_len, "Length bound")
          ->capture_default_str();
    }

    inline void add_system_flags(CLI::App* sub, Options& opts) {
      sub->add_option("--alpha-min", opts.alpha_min,
                      "Least exponent in the built-in system (0 or 1)")
          ->check(CLI::IsMember({0u, 1u}))
          ->capture_default_str();
      sub->add_flag("--trim", opts.trim,
                    "Drop unproductive and unreachable grammar symbols");
    }

    inline void print_cross_section(std::ostream&             out,
                                    CrossSectionReport const& r) {
      out << "status: " << to_string(r.status()) << "\n";
      out << "max-len: " << r.max_len << "\n";
      out << "words enumerated: " << r.words_enumerated << "\n";
      out << "collisions: " << r.collisions.size() << "\n";
      for (std::size_t i = 0; i < r.collisions.size() && i < report_limit; ++i) {
        auto const& c = r.collisions[i];
        out << "collision: " << to_string(c.first) << " | "
            << to_string(c.second) << " | normal form "
            << to_string(c.normal_form) << "\n";
      }
      if (r.collisions.size() > report_limit) {
        out << "(" << r.collisions.size() - report_limit
            << " further collisions omitted)\n";
      }
      out << "unwitnessed up to length " << r.normal_form_bound << ": "
          << r.unwitnessed.size() << "\n";
      for (std::size_t i = 0; i < r.unwitnessed.size() && i < report_limit;
           ++i) {
        out << "unwitnessed: " << to_string(r.unwitnessed[i]) << "\n";
      }
      if (r.unwitnessed.size() > report_limit) {
        out << "(" << r.unwitnessed.size() - report_limit
            << " further unwitnessed words omitted)\n";
      }
    }

  }  // namespace detail

  inline int run(std::vector<std::string> const& args,
                 std::ostream&                   out,
                 std::ostream&                   err) {
    CLI::App app("Word problems and word-hyperbolic structures for monadic "
                 "context-free rewriting systems",
                 "hypword");
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Help for every verb");

    detail::Options          opts;
    std::vector<std::string> pos;
    std::string              output_path, identity;
    std::size_t              cap = default_exploration_cap;
    std::size_t              confluence_len = 8, cross_len = 8, enumerate_len = 6;
    int                      code = exit_true;

    auto* reduce = app.add_subcommand("reduce", "Print the normal form of a word");
    reduce->add_option("args", pos, "System file, word")->required()->expected(2);
    detail::add_system_flags(reduce, opts);
    reduce->callback([&] {
      auto s = detail::load_system(pos[0], opts);
      out << to_string(normal_form(s, detail::word_arg(pos[1]))) << "\n";
    });

    auto* equal = app.add_subcommand("equal", "Decide u = v in the monoid");
    equal->add_option("args", pos, "System file, u, v")->required()->expected(3);
    detail::add_system_flags(equal, opts);
    equal->callback([&] {
      auto s = detail::load_system(pos[0], opts);
      code   = detail::boolean(out, equal_in_monoid(s, detail::word_arg(pos[1]),
                                                    detail::word_arg(pos[2])));
    });

    auto* compile = app.add_subcommand("compile", "Write the grammar for K");
    compile->add_option("system", pos, "System file")->required()->expected(1);
    compile->add_option("-o,--output", output_path, "Output grammar file");
    detail::add_system_flags(compile, opts);
    compile->callback([&] {
      auto text = emit_theta(build_theta(detail::load_system(pos[0], opts)));
      if (output_path.empty()) {
        out << text;
      } else {
        detail::write_file(output_path, text);
      }
    });

    auto* member_k = app.add_subcommand("member-k", "Decide u #2 rev(v) in K");
    member_k->add_option("args", pos, "System or grammar file, u, v")
        ->required()
        ->expected(3);
    detail::add_system_flags(member_k, opts);
    member_k->callback([&] {
      ThetaDecider d(detail::load_theta(pos[0], opts));
      code = detail::boolean(
          out, d.k_member(detail::word_arg(pos[1]), detail::word_arg(pos[2])));
    });

    auto* member_mul
        = app.add_subcommand("member-mul", "Decide u #1 v #2 rev(w) in M(A*)");
    member_mul->add_option("args", pos, "System or grammar file, u, v, w")
        ->required()
        ->expected(4);
    detail::add_system_flags(member_mul, opts);
    member_mul->callback([&] {
      ThetaDecider d(detail::load_theta(pos[0], opts));
      code = detail::boolean(out, d.mtable_member(detail::word_arg(pos[1]),
                                                  detail::word_arg(pos[2]),
                                                  detail::word_arg(pos[3])));
    });

    auto* confluence = app.add_subcommand(
        "check-confluence", "Check unique normal forms up to a length bound");
    confluence->add_option("system", pos, "System file")->required()->expected(1);
    confluence->add_option("--cap", cap, "Words explored per input word")
        ->capture_default_str();
    detail::add_max_len(confluence, confluence_len);
    detail::add_system_flags(confluence, opts);
    confluence->callback([&] {
      auto s = detail::load_system(pos[0], opts);
      auto r = check_confluence_bounded(s, confluence_len, cap);
      if (r.pass) {
        out << "pass up to length " << confluence_len << " (" << r.words_checked
            << " words)\n";
        return;
      }
      out << "fail\nwitness: " << to_string(*r.witness) << "\n";
      for (auto const& w : r.witness_normal_forms) {
        out << "normal form: " << to_string(w) << "\n";
      }
      code = exit_false;
    });

    auto* cross = app.add_subcommand(
        "cross-section", "Search a candidate cross-section for collisions");
    cross->add_option("args", pos, "System file, automaton file")
        ->required()
        ->expected(2);
    detail::add_max_len(cross, cross_len);
    detail::add_system_flags(cross, opts);
    cross->callback([&] {
      auto s = detail::load_system(pos[0], opts);
      auto a = parse_nfa(detail::read_file(pos[1]));
      auto r = validate_cross_section(dfa_from_nfa(a), s, cross_len);
      detail::print_cross_section(out, r);
      code = r.collisions.empty() ? exit_true : exit_collision;
    });

    auto* change = app.add_subcommand(
        "change-gens", "Image of a representative language under a generator map");
    change->add_option("args", pos, "Automaton file, generator map file")
        ->required()
        ->expected(2);
    change->add_option("--identity", identity,
                       "Nonempty word replacing the empty representative");
    change->callback([&] {
      auto reps = parse_nfa(detail::read_file(pos[0]));
      auto m    = parse_generator_map(detail::read_file(pos[1]));
      if (!(reps.alphabet() == m.source())) {
        throw DomainError("automaton alphabet differs from the map's source");
      }
      auto image = relation_image(build_p_relation(m), reps);
      if (!identity.empty()) {
        image = adjust_identity_rep(image, detail::word_arg(identity));
      }
      out << emit_nfa(image);
    });

    auto* example = app.add_subcommand("example42", "Print the built-in system");
    example->add_option("--alpha-min", opts.alpha_min,
                        "Least exponent (0 or 1)")
        ->check(CLI::IsMember({0u, 1u}))
        ->capture_default_str();
    example->callback([&] { out << emit_system(example_monoid(opts.alpha_min)); });

    auto* enumerate = app.add_subcommand(
        "enumerate", "List the words of a grammar or automaton up to a length");
    enumerate->add_option("file", pos, "Grammar or automaton file")
        ->required()
        ->expected(1);
    detail::add_max_len(enumerate, enumerate_len);
    enumerate->add_flag("--trim", opts.trim,
                        "Drop unproductive and unreachable grammar symbols");
    enumerate->callback([&] {
      auto                     text = detail::read_file(pos[0]);
      std::set<Word, ShortLex> words;
      if (detail::starts_with_key(text, "states")) {
        words = nfa_enumerate(parse_nfa(text), enumerate_len);
      } else {
        words = enumerate_language(parse_grammar(text, opts.trim), enumerate_len);
      }
      for (auto const& w : words) {
        out << to_string(w) << "\n";
      }
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      int const rc = app.exit(e, out, err);
      return rc == 0 ? exit_true : exit_error;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return exit_error;
    }
    return code;
  }

}  // namespace hypword::cli

#endif  // HYPWORD_CLI_HPP_
