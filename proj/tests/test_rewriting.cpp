#include <map>
#include <set>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "hypword/rewriting.hpp"
#include "hypword/structures.hpp"
#include "hypword/system_io.hpp"
#include "oracles.hpp"

using namespace hypword;

namespace {

  using WordSet = std::set<Word, ShortLex>;

  Word w(char const* text) {
    return parse_word(text);
  }

  MonadicCfSystem sys(char const* text) {
    return parse_system(text);
  }

  MonadicCfSystem const example = example_monoid();

  MonadicCfSystem const free_group
      = sys("alphabet: a abar\nrhs eps:\nstart: S\nS -> a abar | abar a");

  MonadicCfSystem const non_confluent
      = sys("alphabet: a\nrhs eps:\nstart: S\nS -> a a | a a a");

  // The oracle spells abar as the single character 'A'.
  std::string spell(Word const& x) {
    std::string s;
    for (auto const& c : x) {
      s += c.name == "abar" ? "A" : c.name;
    }
    return s;
  }

  Word unspell(std::string const& s) {
    Word x;
    for (char c : s) {
      x.emplace_back(c == 'A' ? std::string("abar") : std::string(1, c));
    }
    return x;
  }

}  // namespace

TEST_CASE("system construction is validated", "[rewriting]") {
  Cfg const g = parse_grammar("start: S\nS -> a a");
  CHECK_THROWS_AS(MonadicCfSystem(Alphabet{"a", "eps"}, {}), DomainError);
  CHECK_THROWS_AS(MonadicCfSystem(Alphabet{Symbol("a", Flavor::dollar)}, {}),
                  DomainError);
  CHECK_THROWS_AS(MonadicCfSystem(Alphabet{"a"}, {{Symbol("b"), g}}), DomainError);
  CHECK_THROWS_AS(MonadicCfSystem(Alphabet{"b"}, {{std::nullopt, g}}), DomainError);
  CHECK(MonadicCfSystem(Alphabet{"a"}, {}).families().empty());
}

TEST_CASE("validate_system", "[rewriting]") {
  SECTION("example system passes") {
    CHECK(validate_system(example).ok());
    CHECK(min_word_length(*example.family(std::nullopt)) == 4);
  }
  SECTION("a letter family containing a single letter fails") {
    auto const s = parse_system_unchecked(
        "alphabet: a b\nrhs a:\nstart: S\nS -> a | a b");
    auto const r = validate_system(s);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].family == "a");
    CHECK(r.violations[0].min_length == 1);
    CHECK_THROWS_AS(Rewriter(s), ValidationError);
  }
  SECTION("an empty-word family accepting the empty word fails") {
    auto const s = parse_system_unchecked(
        "alphabet: a b\nrhs eps:\nstart: S\nS -> a b | _");
    auto const r = validate_system(s);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].family == "eps");
    CHECK(r.violations[0].min_length == 0);
  }
  SECTION("every violating family is listed") {
    auto const s = parse_system_unchecked(
        "alphabet: a b\nrhs a:\nstart: S\nS -> b\nrhs b:\nstart: S\nS -> a b\n"
        "rhs eps:\nstart: S\nS -> _");
    auto const r = validate_system(s);
    REQUIRE(r.violations.size() == 2);
    CHECK(r.violations[0].family == "a");
    CHECK(r.violations[1].family == "eps");
  }
  SECTION("an empty left-hand side language is harmless") {
    auto const s = parse_system_unchecked("alphabet: a\nrhs a:\nstart: S\nS -> a S");
    CHECK(validate_system(s).ok());
  }
}

TEST_CASE("find_redex", "[rewriting]") {
  CHECK(find_redex(example, w("a a b c d d")) == RuleApplication{1, 4, std::nullopt});
  CHECK_FALSE(find_redex(example, w("a b")).has_value());
  CHECK(find_redex(example, w("a b c d a b c d")) == RuleApplication{0, 4, std::nullopt});
  CHECK_THROWS_AS(find_redex(example, w("a e")), DomainError);
}

TEST_CASE("redex selection prefers leftmost, then shortest, then alphabet order",
          "[rewriting]") {
  auto const s = sys("alphabet: a b\n"
                     "rhs b:\nstart: S\nS -> b b\n"
                     "rhs a:\nstart: S\nS -> b b | a b b\n"
                     "rhs eps:\nstart: S\nS -> b b | a b");
  Rewriter const r(s);
  CHECK(r.find_redex(w("b b")) == RuleApplication{0, 2, Symbol("a")});
  CHECK(r.find_redex(w("a b b")) == RuleApplication{0, 2, std::nullopt});
  CHECK(r.find_rightmost_redex(w("a b b")) == RuleApplication{1, 2, Symbol("a")});
  CHECK(r.all_redexes(w("a b b")).size() == 5);
}

TEST_CASE("reduce_once", "[rewriting]") {
  CHECK(reduce_once(example, w("a a b c d d")) == w("a d"));
  CHECK(reduce_once(example, w("a b c d")) == Word{});
  CHECK_FALSE(reduce_once(example, w("a d")).has_value());
}

TEST_CASE("normal_form", "[rewriting]") {
  CHECK(normal_form(example, w("a b c a b c d d")).empty());
  CHECK(normal_form(example, w("a b")) == w("a b"));
  CHECK(normal_form(example, w("a b b c c d")).empty());
  CHECK(normal_form(free_group, w("a abar a")) == w("a"));
  CHECK(normal_form(example_monoid(0), w("a a d d")).empty());
  CHECK(normal_form(example_monoid(1), w("a a d d")) == w("a a d d"));
}

TEST_CASE("equal_in_monoid", "[rewriting]") {
  CHECK(equal_in_monoid(example, w("a b c d"), Word{}));
  CHECK_FALSE(equal_in_monoid(example, w("a b"), w("a b c d")));
  CHECK(equal_in_monoid(example, w("a b"), w("a b c d a b")));
  for (auto const& x : all_words(example.alphabet(), 3)) {
    CHECK(equal_in_monoid(example, x, x));
  }
}

TEST_CASE("irreducible_descendants", "[rewriting]") {
  CHECK(irreducible_descendants(example, w("a b c a b c d d")) == WordSet{Word{}});
  CHECK(irreducible_descendants(non_confluent, w("a a a")) == WordSet{Word{}, w("a")});
  CHECK(irreducible_descendants(example, w("d c b a")) == WordSet{w("d c b a")});
  CHECK_THROWS_AS(irreducible_descendants(example, w("a b c a b c d d"), 1),
                  ResourceError);
  Rewriter const r(example);
  CHECK(r.descendants(w("a b c a b c d d"), 10)
        == WordSet{w("a b c a b c d d"), w("a b c d"), Word{}});
}

TEST_CASE("check_confluence_bounded", "[rewriting]") {
  auto const ok = check_confluence_bounded(example, 8);
  CHECK(ok.pass);
  CHECK(ok.words_checked == 87381);

  auto const bad = check_confluence_bounded(non_confluent, 3);
  CHECK_FALSE(bad.pass);
  CHECK(bad.witness == w("a a a"));
  CHECK(bad.witness_normal_forms == WordSet{Word{}, w("a")});

  auto const single = sys("alphabet: a b\nrhs eps:\nstart: S\nS -> a b");
  CHECK(check_confluence_bounded(single, 6).pass);

  auto const letter = sys("alphabet: a b\nrhs a:\nstart: S\nS -> a T\nT -> b T | b");
  CHECK(check_confluence_bounded(letter, 8).pass);
  CHECK(check_confluence_bounded(free_group, 8).pass);
}

TEST_CASE("normal forms agree with string rewriting by predicate rules",
          "[rewriting][property]") {
  Rewriter const ex(example), fg(free_group);
  for (auto const& s : oracle::strings("abcd", 7)) {
    REQUIRE(oracle::str(ex.normal_form(oracle::word(s)))
            == oracle::normal_form(oracle::example_rules(), s));
  }
  for (auto const& s : oracle::strings("aA", 10)) {
    REQUIRE(spell(fg.normal_form(unspell(s)))
            == oracle::normal_form(oracle::free_group_rules(), s));
  }
  Rewriter const ex0(example_monoid(0));
  for (auto const& s : oracle::strings("abcd", 6)) {
    REQUIRE(oracle::str(ex0.normal_form(oracle::word(s)))
            == oracle::normal_form(oracle::example_rules(0), s));
  }
}

TEST_CASE("descendant sets agree with string rewriting by predicate rules",
          "[rewriting][property]") {
  Rewriter const r(example);
  for (auto const& s : oracle::strings("abcd", 6)) {
    std::set<std::string> mine;
    for (auto const& x : r.descendants(oracle::word(s), default_exploration_cap)) {
      mine.insert(oracle::str(x));
    }
    REQUIRE(mine == oracle::descendants(oracle::example_rules(), s));
  }
}

TEST_CASE("normal forms do not depend on the reduction strategy",
          "[rewriting][property]") {
  for (auto const* s : {&example, &free_group}) {
    Rewriter const r(*s);
    std::uint64_t  seed = 1;
    for (auto const& x : all_words(s->alphabet(), 8)) {
      auto const nf = r.normal_form(x, RedexStrategy::leftmost_shortest);
      REQUIRE(r.normal_form(x, RedexStrategy::rightmost_shortest) == nf);
      REQUIRE(r.normal_form(x, RedexStrategy::random, ++seed) == nf);
    }
  }
}

TEST_CASE("every reduction step shortens the word", "[rewriting][property]") {
  auto const letter = sys("alphabet: a b\nrhs a:\nstart: S\nS -> a T\nT -> b T | b");
  for (auto const* s : {&example, &free_group, &non_confluent, &letter}) {
    Rewriter const r(*s);
    for (auto const& x : all_words(s->alphabet(), 6)) {
      for (auto const& app : r.all_redexes(x)) {
        REQUIRE(r.apply(x, app).size() < x.size());
      }
    }
  }
}

TEST_CASE("equality is a congruence", "[rewriting][property]") {
  Rewriter const r(example);
  auto const     words = all_words(example.alphabet(), 4);
  auto const     groups = group_by_normal_form(nfa_universal(example.alphabet()), r, 4);
  std::size_t    pairs  = 0;
  for (auto const& [nf, members] : groups) {
    for (auto const& u : members) {
      for (auto const& v : members) {
        ++pairs;
        for (auto const& x : words) {
          REQUIRE(r.equal(concat(x, u), concat(x, v)));
          REQUIRE(r.equal(concat(u, x), concat(v, x)));
        }
      }
    }
  }
  CHECK(pairs > words.size());
}

TEST_CASE("equality agrees with irreducible descendant sets", "[rewriting][property]") {
  Rewriter const r(example);
  auto const     words = all_words(example.alphabet(), 5);
  std::vector<Word>    nfs;
  std::vector<WordSet> irr;
  for (auto const& x : words) {
    nfs.push_back(r.normal_form(x));
    irr.push_back(r.irreducible_descendants(x, default_exploration_cap));
    REQUIRE(irr.back().size() == 1);
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      REQUIRE((nfs[i] == nfs[j]) == (irr[i] == irr[j]));
    }
  }
}
