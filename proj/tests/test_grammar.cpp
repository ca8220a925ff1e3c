#include <set>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "hypword/earley.hpp"
#include "hypword/grammar.hpp"
#include "hypword/grammar_io.hpp"
#include "oracles.hpp"

using namespace hypword;

namespace {

  using WordSet = std::set<Word, ShortLex>;

  Word w(char const* text) {
    return parse_word(text);
  }

  Cfg g(char const* text) {
    return parse_grammar(text);
  }

  WordSet words(std::initializer_list<char const*> texts) {
    WordSet out;
    for (auto t : texts) {
      out.insert(parse_word(t));
    }
    return out;
  }

  WordSet without_empty(WordSet s) {
    s.erase(Word{});
    return s;
  }

  Cfg const anbn       = g("start: S\nS -> a S b | _");
  Cfg const anbn_plus  = g("start: S\nS -> a S b | a b");
  Cfg const palindrome = g("start: P\nP -> a P a | b P b | a | b | _");
  Cfg const example    = g("start: S\nS -> a T d\nT -> b T c | b c");
  Cfg const dyck       = g("start: D\nD -> D D | l D r | _");
  Cfg const left_rec   = g("start: E\nE -> E p t | t");
  Cfg const unit_cycle = g("start: A\nA -> B | a\nB -> A | b B");
  Cfg const nullable_chain
      = g("start: S\nS -> A B A\nA -> a | _\nB -> B b | A | _");

  std::vector<Cfg> corpus() {
    return {anbn, anbn_plus, palindrome, example, dyck, left_rec, unit_cycle,
            nullable_chain};
  }

  std::size_t corpus_maxlen(Cfg const& x) {
    return x.terminals().size() > 3 ? 7 : 8;
  }

}  // namespace

TEST_CASE("grammar construction is validated", "[grammar]") {
  Symbol const S("S");
  CHECK_THROWS_AS(Cfg(Alphabet{S}, Alphabet{S}, {}, S), DomainError);
  CHECK_THROWS_AS(Cfg(Alphabet{S}, Alphabet{"a"}, {}, Symbol("T")), DomainError);
  CHECK_THROWS_AS(Cfg(Alphabet{S}, Alphabet{"a"}, {{Symbol("a"), w("a")}}, S),
                  DomainError);
  CHECK_THROWS_AS(Cfg(Alphabet{S}, Alphabet{"a"}, {{S, w("b")}}, S), DomainError);
  Cfg const dup(Alphabet{S}, Alphabet{"a"}, {{S, w("a")}, {S, w("a")}}, S);
  CHECK(dup.productions().size() == 1);
}

TEST_CASE("eliminate_epsilon_productions", "[grammar]") {
  SECTION("a^n b^n loses only the empty word") {
    auto const r = eliminate_epsilon_productions(anbn);
    CHECK_FALSE(r.has_empty_productions());
    WordSet expected;
    for (std::size_t n = 1; 2 * n <= 8; ++n) {
      expected.insert(concat(Word(n, Symbol("a")), Word(n, Symbol("b"))));
    }
    CHECK(enumerate_language(r, 8) == expected);
    CHECK(without_empty(oracle::enumerate(anbn, 8)) == expected);
  }
  SECTION("no empty productions: unchanged language") {
    auto const r = eliminate_epsilon_productions(example);
    CHECK(enumerate_language(r, 8) == enumerate_language(example, 8));
    CHECK(r == example);
  }
  SECTION("S -> _ gives the empty language") {
    auto const r = eliminate_epsilon_productions(g("start: S\nS -> _"));
    CHECK(r.productions().empty());
    CHECK(enumerate_language(r, 8).empty());
    CHECK_FALSE(min_word_length(r).has_value());
  }
}

TEST_CASE("epsilon elimination preserves nonempty words", "[grammar][property]") {
  for (auto const& x : {anbn, palindrome, dyck, nullable_chain, unit_cycle}) {
    auto const r = eliminate_epsilon_productions(x);
    REQUIRE_FALSE(cfg_member(r, Word{}));
    Recognizer const a(x), b(r);
    for (auto const& u : all_words(x.terminals(), 8)) {
      if (!u.empty()) {
        REQUIRE(a.accepts(u) == b.accepts(u));
      }
    }
  }
}

TEST_CASE("relabel_terminals", "[grammar]") {
  auto const ab = g("start: S\nS -> a b");
  auto const r  = relabel_terminals(
      ab, {{"a", Symbol("a", Flavor::dollar)}, {"b", Symbol("b", Flavor::dollar)}});
  CHECK(enumerate_language(r, 4) == words({"$a $b"}));

  CHECK(relabel_terminals(example, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}})
        == example);

  std::map<Symbol, Symbol> dollar;
  for (auto const& t : example.terminals()) {
    dollar.emplace(t, Symbol(t.name, Flavor::dollar));
  }
  CHECK(cfg_member(relabel_terminals(example, dollar), w("$a $b $c $d")));

  CHECK_THROWS_AS(relabel_terminals(ab, {{"a", "x"}}), DomainError);
  CHECK_THROWS_AS(relabel_terminals(ab, {{"a", "x"}, {"b", "x"}}), DomainError);
}

TEST_CASE("relabel then inverse relabel is the identity", "[grammar][property]") {
  for (auto const& x : corpus()) {
    std::map<Symbol, Symbol> there, back;
    for (auto const& t : x.terminals()) {
      there.emplace(t, Symbol(t.name, Flavor::tilde));
      back.emplace(Symbol(t.name, Flavor::tilde), t);
    }
    auto const y = relabel_terminals(relabel_terminals(x, there), back);
    REQUIRE(enumerate_language(y, corpus_maxlen(x))
            == enumerate_language(x, corpus_maxlen(x)));
  }
}

TEST_CASE("reverse_productions", "[grammar]") {
  CHECK(enumerate_language(reverse_productions(g("start: S\nS -> a b")), 4)
        == words({"b a"}));

  WordSet expected;
  for (auto const& u : oracle::enumerate(anbn_plus, 8)) {
    expected.insert(reverse(u));
  }
  auto const r = enumerate_language(reverse_productions(anbn_plus), 8);
  CHECK(r == expected);
  CHECK(r.count(w("b b a a")) == 1);

  CHECK(enumerate_language(reverse_productions(palindrome), 7)
        == enumerate_language(palindrome, 7));
}

TEST_CASE("reverse_productions is an involution on languages", "[grammar][property]") {
  for (auto const& x : corpus()) {
    auto const n = corpus_maxlen(x);
    REQUIRE(enumerate_language(reverse_productions(reverse_productions(x)), n)
            == enumerate_language(x, n));
    WordSet mirrored;
    for (auto const& u : enumerate_language(x, n)) {
      mirrored.insert(reverse(u));
    }
    REQUIRE(enumerate_language(reverse_productions(x), n) == mirrored);
  }
}

TEST_CASE("disjoint_rename", "[grammar]") {
  SECTION("two copies of S -> a") {
    auto const a = g("start: S\nS -> a");
    auto const r = disjoint_rename({a, a});
    REQUIRE(r.size() == 2);
    CHECK(r[0].nonterminals() == Alphabet{"S#0"});
    CHECK(r[1].nonterminals() == Alphabet{"S#1"});
    CHECK(enumerate_language(r[0], 3) == words({"a"}));
    CHECK(enumerate_language(r[1], 3) == words({"a"}));
  }
  SECTION("singleton list") {
    auto const r = disjoint_rename({example});
    CHECK(enumerate_language(r[0], 8) == enumerate_language(example, 8));
  }
  SECTION("three grammars sharing T") {
    std::vector<Cfg> gs{g("start: S\nS -> a T\nT -> b | b T"),
                        g("start: T\nT -> a T a | c"),
                        g("start: U\nU -> T T\nT -> a | b")};
    auto const r = disjoint_rename(gs);
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = i + 1; j < r.size(); ++j) {
        for (auto const& n : r[i].nonterminals()) {
          CHECK_FALSE(r[j].nonterminals().contains(n));
        }
      }
      CHECK(enumerate_language(r[i], 6) == oracle::enumerate(gs[i], 6));
    }
  }
}

TEST_CASE("min_word_length", "[grammar]") {
  CHECK(min_word_length(g("start: S\nS -> a b")) == 2);
  CHECK(min_word_length(example) == 4);
  CHECK_FALSE(min_word_length(g("start: S\nS -> a S")).has_value());
  CHECK(min_word_length(anbn) == 0);
}

TEST_CASE("min_word_length matches the shortest enumerated word", "[grammar][property]") {
  for (auto const& x : corpus()) {
    auto const ws = enumerate_language(x, 10);
    REQUIRE_FALSE(ws.empty());
    REQUIRE(min_word_length(x) == ws.begin()->size());
  }
}

TEST_CASE("cfg_member", "[grammar]") {
  CHECK(cfg_member(example, w("a b b c c d")));
  CHECK(cfg_member(example, w("a b c d")));
  CHECK_FALSE(cfg_member(example, w("a b c c d")));
  CHECK_FALSE(cfg_member(example, Word{}));
  CHECK_THROWS_AS(cfg_member(example, w("a x")), DomainError);

  // "a b c c d" has no derivation: every word of length 5 the grammar
  // could produce is enumerated and checked.
  CHECK(oracle::enumerate(example, 5) == words({"a b c d"}));
}

TEST_CASE("recognizer handles left recursion, unit cycles and nullables", "[grammar]") {
  CHECK(cfg_member(left_rec, w("t p t p t")));
  CHECK_FALSE(cfg_member(left_rec, w("t p")));
  CHECK(cfg_member(unit_cycle, w("b b a")));
  CHECK_FALSE(cfg_member(unit_cycle, w("a b")));
  CHECK(cfg_member(dyck, Word{}));
  CHECK(cfg_member(dyck, w("l l r r l r")));
  CHECK_FALSE(cfg_member(dyck, w("l r r l")));
  CHECK(cfg_member(nullable_chain, Word{}));
  CHECK(cfg_member(nullable_chain, w("a b b a")));
  CHECK_FALSE(cfg_member(nullable_chain, w("b a b")));
}

TEST_CASE("enumerate_language agrees with the recognizer", "[grammar][property]") {
  for (auto const& x : corpus()) {
    auto const       n    = corpus_maxlen(x);
    auto const       lang = enumerate_language(x, n);
    Recognizer const r(x);
    for (auto const& u : all_words(x.terminals(), n)) {
      REQUIRE(r.accepts(u) == (lang.count(u) == 1));
    }
  }
}

TEST_CASE("enumerate_language agrees with brute-force derivation", "[grammar][property]") {
  // The Dyck grammar is left out: D -> D D makes the brute-force search
  // blow up on nullable forms.
  for (auto const& x : corpus()) {
    if (x == dyck) {
      continue;
    }
    auto const n = corpus_maxlen(x);
    REQUIRE(enumerate_language(x, n) == oracle::enumerate(x, n, 40));
  }
}

TEST_CASE("enumerate_language", "[grammar]") {
  CHECK(enumerate_language(g("start: S\nS -> a b"), 5) == words({"a b"}));
  CHECK(enumerate_language(example, 6) == words({"a b c d", "a b b c c d"}));
  CHECK(enumerate_language(anbn, 0) == words({"_"}));
  CHECK(enumerate_language(example, 0).empty());
}

TEST_CASE("derives", "[grammar]") {
  for (auto const& x : {example, palindrome, unit_cycle}) {
    Recognizer const r(x);
    for (auto const& u : all_words(x.terminals(), x.terminals().size() > 3 ? 5 : 6)) {
      REQUIRE(r.derives(Word{x.start()}, u) == r.accepts(u));
    }
  }
  CHECK(derives(example, w("a T d"), w("a b b c c d")));
  CHECK_FALSE(derives(example, w("a T d"), w("a d")));
  CHECK(derives(example, w("b T"), w("b b c")));
  CHECK(derives(example, w("a d"), w("a d")));
  CHECK_THROWS_AS(derives(example, w("a Q"), w("a")), DomainError);
}

TEST_CASE("trim drops useless productions", "[grammar]") {
  auto const x = g("start: S\nS -> a | U\nU -> U b\nV -> c");
  auto const t = trim(x);
  CHECK(t.productions().size() == 1);
  CHECK(enumerate_language(t, 4) == enumerate_language(x, 4));
}
