#ifndef HYPWORD_CORE_HPP_
#define HYPWORD_CORE_HPP_

#include <algorithm>    // for reverse, lexicographical_compare
#include <compare>      // for strong_ordering
#include <cstddef>      // for size_t
#include <functional>   // for hash
#include <map>          // for map
#include <sstream>      // for istringstream
#include <string>       // for string
#include <string_view>  // for string_view
#include <unordered_map>
#include <utility>  // for move
#include <vector>   // for vector

#include "error.hpp"

namespace hypword {

  // Which of the alphabets a symbol belongs to. Two symbols with the same
  // name but different flavors are different symbols, so a letter a and its
  // annotated copies $a, ~a never collide.
  enum class Flavor : unsigned char { plain, dollar, tilde, marker };

  // Name used for the empty-word annotation $eps / ~eps.
  inline constexpr std::string_view epsilon_name = "eps";

  struct Symbol {
    std::string name;
    Flavor      flavor = Flavor::plain;

    Symbol() = default;
    Symbol(std::string n, Flavor f = Flavor::plain)
        : name(std::move(n)), flavor(f) {}
    Symbol(char const* n, Flavor f = Flavor::plain) : name(n), flavor(f) {}

    static Symbol marker1() {
      return Symbol("1", Flavor::marker);
    }
    static Symbol marker2() {
      return Symbol("2", Flavor::marker);
    }

    bool operator==(Symbol const&) const = default;
    std::strong_ordering operator<=>(Symbol const& that) const {
      if (auto c = flavor <=> that.flavor; c != 0) {
        return c;
      }
      return name <=> that.name;
    }
  };

  struct SymbolHash {
    std::size_t operator()(Symbol const& s) const noexcept {
      return std::hash<std::string>{}(s.name) * 4
             + static_cast<std::size_t>(s.flavor);
    }
  };

  using Word = std::vector<Symbol>;

  // Shortlex order on words: shorter first, then lexicographic.
  inline bool shortlex_less(Word const& u, Word const& v) {
    if (u.size() != v.size()) {
      return u.size() < v.size();
    }
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
  }

  struct ShortLex {
    bool operator()(Word const& u, Word const& v) const {
      return shortlex_less(u, v);
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  // A finite ordered set of symbols; insertion order is the canonical order.
  class Alphabet {
   public:
    Alphabet() = default;

    Alphabet(std::initializer_list<Symbol> symbols) {
      for (auto const& s : symbols) {
        add(s);
      }
    }

    explicit Alphabet(std::vector<Symbol> const& symbols) {
      for (auto const& s : symbols) {
        add(s);
      }
    }

    // Throws DomainError on duplicates.
    Alphabet& add(Symbol const& s) {
      if (contains(s)) {
        throw DomainError("duplicate symbol in alphabet");
      }
      _index.emplace(s, _symbols.size());
      _symbols.push_back(s);
      return *this;
    }

    // Adds s unless already present.
    Alphabet& insert(Symbol const& s) {
      if (!contains(s)) {
        add(s);
      }
      return *this;
    }

    bool contains(Symbol const& s) const {
      return _index.count(s) != 0;
    }

    std::size_t index_of(Symbol const& s) const {
      auto it = _index.find(s);
      if (it == _index.end()) {
        throw DomainError("symbol not in alphabet");
      }
      return it->second;
    }

    bool contains_word(Word const& w) const {
      return std::all_of(
          w.begin(), w.end(), [this](Symbol const& s) { return contains(s); });
    }

    std::size_t size() const noexcept {
      return _symbols.size();
    }
    bool empty() const noexcept {
      return _symbols.empty();
    }
    Symbol const& operator[](std::size_t i) const {
      return _symbols[i];
    }
    auto begin() const noexcept {
      return _symbols.cbegin();
    }
    auto end() const noexcept {
      return _symbols.cend();
    }
    std::vector<Symbol> const& symbols() const noexcept {
      return _symbols;
    }

    bool operator==(Alphabet const& that) const {
      return _symbols == that._symbols;
    }

   private:
    std::vector<Symbol>                                 _symbols;
    std::unordered_map<Symbol, std::size_t, SymbolHash> _index;
  };

  // Every letter of w must belong to a; otherwise throws DomainError naming
  // the context.
  void check_word(Alphabet const& a, Word const& w, std::string_view context);

  ////////////////////////////////////////////////////////////////////////
  // Text rendering
  ////////////////////////////////////////////////////////////////////////

  // Plain symbols print as their name (quoted when the bare name would be
  // read back as something else), $name, ~name, #1, #2.
  std::string to_string(Symbol const& s);

  // Whitespace-separated tokens; the empty word renders as "_".
  std::string to_string(Word const& w);

  // Inverse of to_string(Symbol).
  Symbol parse_symbol(std::string_view token);

  // Inverse of to_string(Word).
  Word parse_word(std::string_view text);

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  inline Word reverse(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
  }

  inline Word concat(Word u, Word const& v) {
    u.insert(u.end(), v.begin(), v.end());
    return u;
  }

  // A map from the symbols of a domain alphabet to words.
  class Homomorphism {
   public:
    Homomorphism() = default;

    // Throws DomainError if images does not assign exactly one word to every
    // symbol of domain.
    Homomorphism(Alphabet domain, std::map<Symbol, Word> images)
        : _domain(std::move(domain)), _images(std::move(images)) {
      if (_images.size() != _domain.size()) {
        throw DomainError("homomorphism must have one image per domain symbol");
      }
      for (auto const& s : _domain) {
        if (_images.count(s) == 0) {
          throw DomainError("homomorphism has no image for " + to_string(s));
        }
      }
    }

    Alphabet const& domain() const noexcept {
      return _domain;
    }

    Word const& image(Symbol const& s) const {
      auto it = _images.find(s);
      if (it == _images.end()) {
        throw DomainError("letter " + to_string(s)
                          + " is outside the homomorphism's domain");
      }
      return it->second;
    }

    Word operator()(Word const& w) const {
      Word result;
      for (auto const& s : w) {
        auto const& img = image(s);
        result.insert(result.end(), img.begin(), img.end());
      }
      return result;
    }

   private:
    Alphabet               _domain;
    std::map<Symbol, Word> _images;
  };

  inline Word apply_homomorphism(Homomorphism const& h, Word const& w) {
    return h(w);
  }

  // The homomorphism #1 -> empty, #2 -> #2, a -> a for a in base.
  Homomorphism erase_marker1(Alphabet const& base);

  // $w / ~w: the letterwise annotated copy of w, or the single letter
  // $eps / ~eps when w is empty. Throws DomainError on non-plain input.
  Word annotate(Word const& w, Flavor flavor);

  inline Symbol annotated(Symbol const& a, Flavor flavor) {
    return Symbol(a.name, flavor);
  }

  inline Symbol annotated_epsilon(Flavor flavor) {
    return Symbol(std::string(epsilon_name), flavor);
  }

  // All words over a of length at most maxlen, by length and then
  // lexicographically with respect to the order of a.
  std::vector<Word> all_words(Alphabet const& a, std::size_t maxlen);

  ////////////////////////////////////////////////////////////////////////
  // Implementation
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline bool is_bare_plain_name(std::string_view name) {
      if (name.empty() || name == "_") {
        return false;
      }
      char c = name.front();
      if (!(c >= 'a' && c <= 'z') && !(c >= '0' && c <= '9')) {
        return false;
      }
      for (char x : name) {
        if (x <= ' ' || x == '"' || x == '|' || x == ';' || x == '/'
            || x == ',') {
          return false;
        }
      }
      return true;
    }

    inline bool is_space(char c) {
      return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'
             || c == '\v';
    }

    // Splits on whitespace, keeping quoted tokens intact.
    inline std::vector<std::string> tokenize(std::string_view text) {
      std::vector<std::string> result;
      std::size_t              i = 0;
      while (i < text.size()) {
        if (is_space(text[i])) {
          ++i;
          continue;
        }
        std::size_t start = i;
        if (text[i] == '"') {
          ++i;
          while (i < text.size() && text[i] != '"') {
            ++i;
          }
          if (i == text.size()) {
            throw DomainError("unterminated quoted token");
          }
          ++i;
        } else {
          while (i < text.size() && !is_space(text[i])) {
            ++i;
          }
        }
        result.emplace_back(text.substr(start, i - start));
      }
      return result;
    }
  }  // namespace detail

  inline void check_word(Alphabet const& a, Word const& w,
                         std::string_view context) {
    for (auto const& s : w) {
      if (!a.contains(s)) {
        throw DomainError(std::string(context) + ": letter " + to_string(s)
                          + " is not in the alphabet");
      }
    }
  }

  inline std::string to_string(Symbol const& s) {
    switch (s.flavor) {
      case Flavor::dollar:
        return "$" + s.name;
      case Flavor::tilde:
        return "~" + s.name;
      case Flavor::marker:
        return "#" + s.name;
      case Flavor::plain:
      default:
        break;
    }
    if (detail::is_bare_plain_name(s.name)) {
      return s.name;
    }
    return "\"" + s.name + "\"";
  }

  inline std::string to_string(Word const& w) {
    if (w.empty()) {
      return "_";
    }
    std::string result;
    for (auto const& s : w) {
      if (!result.empty()) {
        result += ' ';
      }
      result += to_string(s);
    }
    return result;
  }

  inline Symbol parse_symbol(std::string_view token) {
    if (token.empty() || token == "_") {
      throw DomainError("empty symbol token");
    }
    switch (token.front()) {
      case '$':
      case '~': {
        auto name = token.substr(1);
        if (name.empty()) {
          throw DomainError("annotated symbol without a name");
        }
        return Symbol(std::string(name),
                      token.front() == '$' ? Flavor::dollar : Flavor::tilde);
      }
      case '#':
        if (token == "#1" || token == "#2") {
          return Symbol(std::string(token.substr(1)), Flavor::marker);
        }
        throw DomainError("unknown marker " + std::string(token));
      case '"':
        if (token.size() < 3 || token.back() != '"') {
          throw DomainError("malformed quoted token " + std::string(token));
        }
        return Symbol(std::string(token.substr(1, token.size() - 2)));
      default:
        return Symbol(std::string(token));
    }
  }

  inline Word parse_word(std::string_view text) {
    auto tokens = detail::tokenize(text);
    if (tokens.size() == 1 && tokens[0] == "_") {
      return {};
    }
    Word w;
    w.reserve(tokens.size());
    for (auto const& t : tokens) {
      if (t == "_") {
        throw DomainError("'_' denotes the empty word and cannot be mixed "
                          "with other letters");
      }
      w.push_back(parse_symbol(t));
    }
    return w;
  }

  inline Homomorphism erase_marker1(Alphabet const& base) {
    Alphabet               domain = base;
    std::map<Symbol, Word> images;
    for (auto const& a : base) {
      images.emplace(a, Word{a});
    }
    domain.add(Symbol::marker1());
    domain.add(Symbol::marker2());
    images.emplace(Symbol::marker1(), Word{});
    images.emplace(Symbol::marker2(), Word{Symbol::marker2()});
    return Homomorphism(std::move(domain), std::move(images));
  }

  inline Word annotate(Word const& w, Flavor flavor) {
    if (flavor != Flavor::dollar && flavor != Flavor::tilde) {
      throw DomainError("annotate: flavor must be dollar or tilde");
    }
    if (w.empty()) {
      return {annotated_epsilon(flavor)};
    }
    Word result;
    result.reserve(w.size());
    for (auto const& s : w) {
      if (s.flavor != Flavor::plain) {
        throw DomainError("annotate: letter " + to_string(s)
                          + " is already annotated");
      }
      result.push_back(annotated(s, flavor));
    }
    return result;
  }

  inline std::vector<Word> all_words(Alphabet const& a, std::size_t maxlen) {
    std::vector<Word> result{Word{}};
    std::size_t       level_begin = 0;
    for (std::size_t len = 1; len <= maxlen; ++len) {
      std::size_t level_end = result.size();
      for (std::size_t i = level_begin; i < level_end; ++i) {
        for (auto const& s : a) {
          Word w = result[i];
          w.push_back(s);
          result.push_back(std::move(w));
        }
      }
      level_begin = level_end;
    }
    return result;
  }

}  // namespace hypword

#endif  // HYPWORD_CORE_HPP_
