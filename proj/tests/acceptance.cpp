// Acceptance suite: one PASS/FAIL line per criterion on stdout, timings on
// stderr. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hypword.hpp"
#include "oracles.hpp"

using namespace hypword;

namespace {

  using WordSet = std::set<Word, ShortLex>;

  struct Outcome {
    bool        pass = true;
    std::string detail;
  };

  std::string slurp(std::string const& name) {
    std::ifstream      in(std::string(HYPWORD_DATA_DIR) + "/" + name,
                          std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  Word w(char const* text) {
    return parse_word(text);
  }

  // Single-character spelling used by the string oracle; 'A' is abar.
  Word unspell(std::string const& s) {
    Word x;
    for (char c : s) {
      x.emplace_back(c == 'A' ? std::string("abar") : std::string(1, c));
    }
    return x;
  }

  MonadicCfSystem const free_group
      = parse_system("alphabet: a abar\nrhs eps:\nstart: S\nS -> a abar | abar a");

  // Sweeps every ordered pair of words over letters up to maxlen, comparing
  // k_member, equal_in_monoid and the oracle's normal forms.
  std::size_t pair_sweep(MonadicCfSystem const&              s,
                         std::vector<oracle::Rule> const&    rules,
                         std::string const&                  letters,
                         std::size_t                         maxlen,
                         std::size_t&                        pairs) {
    ThetaDecider const       d(build_theta(s));
    Rewriter const           r(s);
    auto const               strings = oracle::strings(letters, maxlen);
    std::vector<Word>        words;
    std::vector<std::string> nfs;
    for (auto const& u : strings) {
      words.push_back(unspell(u));
      nfs.push_back(oracle::normal_form(rules, u));
    }
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        bool const k  = d.k_member(words[i], words[j]);
        bool const eq = r.equal(words[i], words[j]);
        if (k != eq || eq != (nfs[i] == nfs[j])) {
          ++mismatches;
        }
        ++pairs;
      }
    }
    return mismatches;
  }

  Outcome theta_correctness() {
    auto const  ex    = example_monoid();
    std::size_t pairs = 0;
    auto const  start = std::chrono::steady_clock::now();
    std::size_t bad   = pair_sweep(ex, oracle::example_rules(), "abcd", 4, pairs);
    auto const  secs  = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();

    ThetaDecider const d(build_theta(ex));
    Rewriter const     r(ex);
    std::mt19937_64    rng(20241018);
    std::uniform_int_distribution<std::size_t> length(0, 7), letter(0, 3);
    auto random_word = [&] {
      std::string s(length(rng), 'a');
      for (auto& c : s) {
        c = static_cast<char>('a' + letter(rng));
      }
      return s;
    };
    std::size_t random_bad = 0;
    for (int i = 0; i < 500; ++i) {
      auto const u = random_word(), v = random_word();
      bool const k = d.k_member(oracle::word(u), oracle::word(v));
      if (k != r.equal(oracle::word(u), oracle::word(v))
          || k != (oracle::normal_form(oracle::example_rules(), u)
                   == oracle::normal_form(oracle::example_rules(), v))) {
        ++random_bad;
      }
    }
    std::cerr << "criterion 1: exhaustive sweep " << secs << " s\n";
    return {pairs == 116281 && bad == 0 && random_bad == 0 && secs <= 300.0,
            std::to_string(pairs) + " pairs, " + std::to_string(bad)
                + " mismatches; 500 random pairs, " + std::to_string(random_bad)
                + " mismatches"};
  }

  Outcome second_system() {
    std::size_t pairs = 0;
    auto const  start = std::chrono::steady_clock::now();
    std::size_t bad = pair_sweep(free_group, oracle::free_group_rules(), "aA", 5, pairs);
    auto const  secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    std::cerr << "criterion 2: free group sweep " << secs << " s\n";
    return {bad == 0 && secs <= 120.0,
            std::to_string(pairs) + " pairs, " + std::to_string(bad) + " mismatches"};
  }

  Outcome derivability() {
    auto const         ex = example_monoid();
    ThetaDecider const d(build_theta(ex));
    std::size_t        checks = 0, bad = 0;
    auto const         rules = oracle::example_rules();
    for (auto const& x : oracle::strings("abcd", 5)) {
      auto const desc = oracle::descendants(rules, x);
      auto const xw   = oracle::word(x);
      auto const xr   = reverse(xw);
      for (auto const& u : oracle::strings("abcd", x.size())) {
        bool const reachable = desc.count(u) == 1;
        auto const uw        = oracle::word(u);
        if (d.derives(annotate(uw, Flavor::dollar), xw) != reachable) {
          ++bad;
        }
        if (d.derives(annotate(reverse(uw), Flavor::tilde), xr) != reachable) {
          ++bad;
        }
        checks += 2;
      }
    }
    return {bad == 0,
            std::to_string(checks) + " derivations, " + std::to_string(bad)
                + " mismatches"};
  }

  Outcome grammar_transformations() {
    std::size_t families = 0, checks = 0, bad = 0;
    for (auto const* file : {"example42.sys", "example42_alpha0.sys",
                             "free_group.sys", "letter_family.sys",
                             "nonconfluent.sys", "x_squared.sys"}) {
      auto const s = parse_system(slurp(file));
      for (auto const& [target, g] : s.families()) {
        ++families;
        auto const       e = eliminate_epsilon_productions(g);
        Recognizer const base(g), prime(build_gamma_prime(e)),
            tilde(build_gamma_tilde(e));
        for (auto const& u : all_words(s.alphabet(), 8)) {
          if (u.empty()) {
            bad += base.accepts(u);
            continue;
          }
          bool const in = base.accepts(u);
          bad += prime.accepts(annotate(u, Flavor::dollar)) != in;
          bad += tilde.accepts(annotate(reverse(u), Flavor::tilde)) != in;
          checks += 2;
        }
      }
    }
    std::size_t grammars = 0;
    for (auto const* text :
         {"start: S\nS -> a S b | _", "start: P\nP -> a P a | b P b | a | b | _",
          "start: S\nS -> A B A\nA -> a | _\nB -> B b | A | _"}) {
      auto const       g = parse_grammar(text);
      auto const       e = eliminate_epsilon_productions(g);
      Recognizer const a(g), b(e);
      bad += b.accepts(Word{});
      for (auto const& u : all_words(g.terminals(), 8)) {
        if (!u.empty()) {
          bad += a.accepts(u) != b.accepts(u);
          ++checks;
        }
      }
      ++grammars;
    }
    return {bad == 0 && families >= 6,
            std::to_string(families) + " families, " + std::to_string(grammars)
                + " epsilon-eliminated grammars, " + std::to_string(checks)
                + " checks, " + std::to_string(bad) + " mismatches"};
  }

  Outcome confluence() {
    auto const ex = example_monoid();
    bool       ok = check_confluence_bounded(ex, 8).pass
              && check_confluence_bounded(free_group, 8).pass;
    auto const bad = check_confluence_bounded(
        parse_system("alphabet: a\nrhs eps:\nstart: S\nS -> a a | a a a"), 8);
    bool const witness = !bad.pass && bad.witness && bad.witness->size() == 3;

    std::size_t words = 0, differ = 0;
    for (auto const* s : {&ex, &free_group}) {
      Rewriter const r(*s);
      std::uint64_t  seed = 0;
      for (auto const& x : all_words(s->alphabet(), 8)) {
        auto const nf = r.normal_form(x, RedexStrategy::leftmost_shortest);
        differ += r.normal_form(x, RedexStrategy::rightmost_shortest) != nf;
        differ += r.normal_form(x, RedexStrategy::random, ++seed) != nf;
        ++words;
      }
    }
    return {ok && witness && differ == 0,
            std::string(ok ? "both systems confluent to 8" : "confluence check failed")
                + "; witness " + (bad.witness ? to_string(*bad.witness) : "none")
                + "; " + std::to_string(words) + " words under 3 strategies, "
                + std::to_string(differ) + " differences"};
  }

  WordHypStructure with_reps(MonadicCfSystem const& s, Nfa reps) {
    auto structure = free_structure(s);
    structure.reps = std::move(reps);
    return structure;
  }

  Word substitute(GeneratorMap const& m, Word const& u) {
    Word image;
    for (auto const& l : u) {
      auto const& x = m.image(l);
      image.insert(image.end(), x.begin(), x.end());
    }
    return image;
  }

  Outcome change_of_generators() {
    Alphabet const b{"b"}, x{"x"}, xy{"x", "y"};
    auto const     x_squared = parse_system(slurp("x_squared.sys"));
    auto const     y_squared
        = parse_system("alphabet: y\nrhs eps:\nstart: S\nS -> y y");
    MonadicCfSystem const free_x(x, {}), free_xy(xy, {});

    MonadicCfSystem const free_b(b, {});

    struct Scenario {
      MonadicCfSystem const* base;
      WordHypStructure       source;
      GeneratorMap           map;
      MonadicCfSystem const* target;
    };
    std::vector<Scenario> scenarios{
        {&free_b, with_reps(free_b, parse_nfa(slurp("b_star.aut"))),
         parse_generator_map(slurp("b_to_x.map")), &free_x},
        {&free_b, with_reps(free_b, parse_nfa(slurp("b_star.aut"))),
         parse_generator_map(slurp("b_to_xy.map")), &free_xy},
        {&y_squared, with_reps(y_squared, parse_nfa(slurp("y_reps.aut"))),
         parse_generator_map(slurp("y_to_xxx.map")), &x_squared},
    };

    std::size_t groups = 0, oversized = 0, image_bad = 0;
    for (auto const& sc : scenarios) {
      for (auto const& [nf, members] :
           group_by_normal_form(sc.source.reps, Rewriter(*sc.base), 8)) {
        oversized += members.size() != 1;
      }
      auto const target = free_structure(*sc.target);
      auto const s      = change_generators(sc.source, sc.map, target.equality);
      for (auto const& [nf, members] :
           group_by_normal_form(s.reps, Rewriter(*sc.target), 8)) {
        ++groups;
        oversized += members.size() != 1;
      }

      // Pair search: v is in the image iff some representative u relates to it.
      auto const p      = build_p_relation(sc.map);
      auto const inputs = nfa_enumerate(sc.source.reps, 6);
      WordSet    brute, substituted;
      for (auto const& v : all_words(sc.map.target(), 6)) {
        for (auto const& u : inputs) {
          if (relation_member(p, u, v)) {
            brute.insert(v);
            break;
          }
        }
      }
      for (auto const& u : inputs) {
        auto const v = substitute(sc.map, u);
        if (v.size() <= 6) {
          substituted.insert(v);
        }
      }
      auto const image = nfa_enumerate(relation_image(p, sc.source.reps), 6);
      image_bad += image != brute || image != substituted;
    }
    return {oversized == 0 && image_bad == 0 && groups > 0,
            std::to_string(scenarios.size()) + " maps, " + std::to_string(groups)
                + " groups to length 8, " + std::to_string(oversized)
                + " non-singleton groups, " + std::to_string(image_bad)
                + " image mismatches to length 6"};
  }

  Outcome refutation() {
    auto const ex    = example_monoid();
    auto const a_all = validate_cross_section(
        dfa_from_nfa(nfa_universal(ex.alphabet())), ex, 4);
    bool const expected_pair
        = a_all.collisions.size() == 1
          && a_all.collisions.front() == Collision{Word{}, w("a b c d"), Word{}};
    std::size_t collided = 0;
    std::string firsts;
    for (auto const* file : {"all_words.aut", "abcd_or_short.aut", "parity.aut",
                             "length_mod4.aut"}) {
      auto const r = validate_cross_section(dfa_from_nfa(parse_nfa(slurp(file))), ex, 8);
      if (!r.collisions.empty()) {
        ++collided;
        auto const& c = r.collisions.front();
        firsts += std::string(firsts.empty() ? "" : ", ") + to_string(c.first)
                  + " ~ " + to_string(c.second);
      }
    }
    return {expected_pair && collided == 4,
            "A* at 4: " + std::string(expected_pair ? "_ ~ a b c d" : "unexpected")
                + "; adversarial at 8: " + std::to_string(collided) + "/4 ("
                + firsts + ")"};
  }

  std::string report() {
    std::ostringstream out;
    auto const         ex = example_monoid();
    auto const         r  = validate_cross_section(
        dfa_from_nfa(parse_nfa(slurp("parity.aut"))), ex, 6);
    out << to_string(r.status()) << " " << r.words_enumerated << "\n";
    for (auto const& c : r.collisions) {
      out << to_string(c.first) << " | " << to_string(c.second) << "\n";
    }
    for (auto const& u : r.unwitnessed) {
      out << to_string(u) << "\n";
    }
    out << emit_theta(build_theta(ex));
    return out.str();
  }

  Outcome determinism() {
    bool const golden
        = emit_theta(build_theta(example_monoid())) == slurp("golden/example42.theta")
          && emit_theta(build_theta(free_group)) == slurp("golden/free_group.theta");
    bool const same = report() == report();
    return {golden && same, std::string("golden theta files ")
                                + (golden ? "match" : "differ") + "; reports "
                                + (same ? "identical" : "differ")};
  }

}  // namespace

int main() {
  struct Criterion {
    char const*              name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {"theta-correctness", theta_correctness},
      {"second-system", second_system},
      {"derivability", derivability},
      {"grammar-transformations", grammar_transformations},
      {"confluence", confluence},
      {"change-of-generators", change_of_generators},
      {"cross-section-refutation", refutation},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto const start = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = criteria[i].run();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    auto const secs
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].name
              << ": " << o.detail << std::endl;
    std::cerr << "criterion " << i + 1 << ": " << secs << " s\n";
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
