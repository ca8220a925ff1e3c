#ifndef HYPWORD_AUTOMATA_HPP_
#define HYPWORD_AUTOMATA_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "core.hpp"
#include "error.hpp"

namespace hypword {

  using State    = std::size_t;
  using StateSet = std::set<State>;

  ////////////////////////////////////////////////////////////////////////
  // Nfa
  ////////////////////////////////////////////////////////////////////////

  struct NfaTransition {
    State                 from;
    std::optional<Symbol> label;  // nullopt is an epsilon move
    State                 to;

    auto operator<=>(NfaTransition const&) const = default;
    bool operator==(NfaTransition const&) const  = default;
  };

  class Nfa {
   public:
    Nfa() = default;

    // States are 0, ..., num_states - 1.
    Nfa(std::size_t                num_states,
        Alphabet                   alphabet,
        std::vector<NfaTransition> transitions,
        StateSet                   initial,
        StateSet                   accepting)
        : _num_states(num_states),
          _alphabet(std::move(alphabet)),
          _initial(std::move(initial)),
          _accepting(std::move(accepting)),
          _out(num_states) {
      for (auto s : _initial) {
        check_state(s);
      }
      for (auto s : _accepting) {
        check_state(s);
      }
      std::set<NfaTransition> seen;
      for (auto& t : transitions) {
        check_state(t.from);
        check_state(t.to);
        if (t.label && !_alphabet.contains(*t.label)) {
          throw DomainError("transition label " + to_string(*t.label)
                            + " is not in the alphabet");
        }
        if (seen.insert(t).second) {
          _out[t.from].push_back(_transitions.size());
          _transitions.push_back(std::move(t));
        }
      }
    }

    std::size_t num_states() const noexcept {
      return _num_states;
    }
    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    std::vector<NfaTransition> const& transitions() const noexcept {
      return _transitions;
    }
    StateSet const& initial() const noexcept {
      return _initial;
    }
    StateSet const& accepting() const noexcept {
      return _accepting;
    }

    // Indices into transitions() leaving s.
    std::vector<std::size_t> const& out(State s) const {
      return _out.at(s);
    }

    StateSet epsilon_closure(StateSet states) const {
      std::vector<State> stack(states.begin(), states.end());
      while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (auto i : _out[s]) {
          auto const& t = _transitions[i];
          if (!t.label && states.insert(t.to).second) {
            stack.push_back(t.to);
          }
        }
      }
      return states;
    }

    StateSet step(StateSet const& states, Symbol const& a) const {
      StateSet next;
      for (auto s : states) {
        for (auto i : _out[s]) {
          auto const& t = _transitions[i];
          if (t.label && *t.label == a) {
            next.insert(t.to);
          }
        }
      }
      return epsilon_closure(std::move(next));
    }

    bool accepts_some(StateSet const& states) const {
      return std::any_of(states.begin(), states.end(), [this](State s) {
        return _accepting.count(s) != 0;
      });
    }

    bool operator==(Nfa const& that) const {
      return _num_states == that._num_states && _alphabet == that._alphabet
             && _initial == that._initial && _accepting == that._accepting
             && std::set<NfaTransition>(_transitions.begin(), _transitions.end())
                    == std::set<NfaTransition>(that._transitions.begin(),
                                               that._transitions.end());
    }

   private:
    void check_state(State s) const {
      if (s >= _num_states) {
        throw DomainError("state " + std::to_string(s) + " out of range");
      }
    }

    std::size_t                           _num_states = 0;
    Alphabet                              _alphabet;
    std::vector<NfaTransition>            _transitions;
    StateSet                              _initial;
    StateSet                              _accepting;
    std::vector<std::vector<std::size_t>> _out;
  };

  inline bool nfa_member(Nfa const& a, Word const& w) {
    check_word(a.alphabet(), w, "nfa_member");
    auto current = a.epsilon_closure(a.initial());
    for (auto const& s : w) {
      if (current.empty()) {
        return false;
      }
      current = a.step(current, s);
    }
    return a.accepts_some(current);
  }

  // Every accepted word of length at most maxlen, in shortlex order.
  inline std::set<Word, ShortLex> nfa_enumerate(Nfa const& a,
                                                std::size_t maxlen) {
    std::set<Word, ShortLex>              result;
    std::vector<std::pair<Word, StateSet>> level{
        {Word{}, a.epsilon_closure(a.initial())}};
    for (std::size_t len = 0;; ++len) {
      std::vector<std::pair<Word, StateSet>> next;
      for (auto const& [w, states] : level) {
        if (a.accepts_some(states)) {
          result.insert(w);
        }
        if (len == maxlen) {
          continue;
        }
        for (auto const& s : a.alphabet()) {
          auto after = a.step(states, s);
          if (!after.empty()) {
            Word v = w;
            v.push_back(s);
            next.emplace_back(std::move(v), std::move(after));
          }
        }
      }
      if (len == maxlen || next.empty()) {
        break;
      }
      level = std::move(next);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Small builders
  ////////////////////////////////////////////////////////////////////////

  // The language {w}.
  inline Nfa nfa_literal(Alphabet const& alphabet, Word const& w) {
    std::vector<NfaTransition> ts;
    for (std::size_t i = 0; i < w.size(); ++i) {
      ts.push_back({i, w[i], i + 1});
    }
    return Nfa(w.size() + 1, alphabet, std::move(ts), {0}, {w.size()});
  }

  inline Nfa nfa_empty(Alphabet const& alphabet) {
    return Nfa(1, alphabet, {}, {0}, {});
  }

  // alphabet*
  inline Nfa nfa_universal(Alphabet const& alphabet) {
    std::vector<NfaTransition> ts;
    for (auto const& s : alphabet) {
      ts.push_back({0, s, 0});
    }
    return Nfa(1, alphabet, std::move(ts), {0}, {0});
  }

  namespace detail {
    // Copies the transitions of a into ts with states shifted by offset.
    inline void append_shifted(Nfa const& a, std::size_t offset,
                               std::vector<NfaTransition>& ts) {
      for (auto const& t : a.transitions()) {
        ts.push_back({t.from + offset, t.label, t.to + offset});
      }
    }

    inline StateSet shifted(StateSet const& s, std::size_t offset) {
      StateSet r;
      for (auto x : s) {
        r.insert(x + offset);
      }
      return r;
    }

    inline Alphabet merge(Alphabet a, Alphabet const& b) {
      for (auto const& s : b) {
        a.insert(s);
      }
      return a;
    }
  }  // namespace detail

  inline Nfa nfa_union(Nfa const& a, Nfa const& b) {
    std::vector<NfaTransition> ts;
    detail::append_shifted(a, 0, ts);
    detail::append_shifted(b, a.num_states(), ts);
    auto initial = a.initial();
    auto bi      = detail::shifted(b.initial(), a.num_states());
    initial.insert(bi.begin(), bi.end());
    auto accepting = a.accepting();
    auto ba        = detail::shifted(b.accepting(), a.num_states());
    accepting.insert(ba.begin(), ba.end());
    return Nfa(a.num_states() + b.num_states(),
               detail::merge(a.alphabet(), b.alphabet()),
               std::move(ts),
               std::move(initial),
               std::move(accepting));
  }

  inline Nfa nfa_concat(Nfa const& a, Nfa const& b) {
    std::vector<NfaTransition> ts;
    detail::append_shifted(a, 0, ts);
    detail::append_shifted(b, a.num_states(), ts);
    for (auto f : a.accepting()) {
      for (auto i : b.initial()) {
        ts.push_back({f, std::nullopt, i + a.num_states()});
      }
    }
    return Nfa(a.num_states() + b.num_states(),
               detail::merge(a.alphabet(), b.alphabet()),
               std::move(ts),
               a.initial(),
               detail::shifted(b.accepting(), a.num_states()));
  }

  inline Nfa nfa_star(Nfa const& a) {
    std::size_t const          hub = a.num_states();
    std::vector<NfaTransition> ts;
    detail::append_shifted(a, 0, ts);
    for (auto i : a.initial()) {
      ts.push_back({hub, std::nullopt, i});
    }
    for (auto f : a.accepting()) {
      ts.push_back({f, std::nullopt, hub});
    }
    return Nfa(hub + 1, a.alphabet(), std::move(ts), {hub}, {hub});
  }

  ////////////////////////////////////////////////////////////////////////
  // Dfa
  ////////////////////////////////////////////////////////////////////////

  // Deterministic, possibly partial automaton with a single initial state.
  class Dfa {
   public:
    Dfa() = default;

    Dfa(std::size_t                             num_states,
        Alphabet                                alphabet,
        std::map<std::pair<State, Symbol>, State> delta,
        State                                   initial,
        StateSet                                accepting)
        : _num_states(num_states),
          _alphabet(std::move(alphabet)),
          _delta(std::move(delta)),
          _initial(initial),
          _accepting(std::move(accepting)) {
      if (_initial >= _num_states) {
        throw DomainError("initial state out of range");
      }
      for (auto const& [key, to] : _delta) {
        if (key.first >= _num_states || to >= _num_states) {
          throw DomainError("transition state out of range");
        }
        if (!_alphabet.contains(key.second)) {
          throw DomainError("transition label " + to_string(key.second)
                            + " is not in the alphabet");
        }
      }
      for (auto s : _accepting) {
        if (s >= _num_states) {
          throw DomainError("accepting state out of range");
        }
      }
    }

    std::size_t num_states() const noexcept {
      return _num_states;
    }
    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    State initial() const noexcept {
      return _initial;
    }
    StateSet const& accepting() const noexcept {
      return _accepting;
    }
    std::map<std::pair<State, Symbol>, State> const& delta() const noexcept {
      return _delta;
    }

    std::optional<State> next(State s, Symbol const& a) const {
      auto it = _delta.find({s, a});
      if (it == _delta.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    bool accepts(Word const& w) const {
      check_word(_alphabet, w, "dfa");
      State s = _initial;
      for (auto const& a : w) {
        auto n = next(s, a);
        if (!n) {
          return false;
        }
        s = *n;
      }
      return _accepting.count(s) != 0;
    }

    Nfa to_nfa() const {
      std::vector<NfaTransition> ts;
      for (auto const& [key, to] : _delta) {
        ts.push_back({key.first, key.second, to});
      }
      return Nfa(_num_states, _alphabet, std::move(ts), {_initial},
                 _accepting);
    }

   private:
    std::size_t                               _num_states = 1;
    Alphabet                                  _alphabet;
    std::map<std::pair<State, Symbol>, State> _delta;
    State                                     _initial = 0;
    StateSet                                  _accepting;
  };

  // Subset construction over reachable, nonempty subsets. State 0 of the
  // result is the closure of the initial states.
  inline Dfa dfa_from_nfa(Nfa const& a) {
    std::map<StateSet, State>                 index;
    std::vector<StateSet>                     subsets;
    std::map<std::pair<State, Symbol>, State> delta;
    StateSet                                  accepting;

    auto start = a.epsilon_closure(a.initial());
    index.emplace(start, 0);
    subsets.push_back(start);
    for (std::size_t k = 0; k < subsets.size(); ++k) {
      StateSet const current = subsets[k];
      if (a.accepts_some(current)) {
        accepting.insert(k);
      }
      for (auto const& s : a.alphabet()) {
        auto next = a.step(current, s);
        if (next.empty()) {
          continue;
        }
        auto [it, fresh] = index.emplace(next, subsets.size());
        if (fresh) {
          subsets.push_back(next);
        }
        delta.emplace(std::make_pair(State(k), s), it->second);
      }
    }
    return Dfa(subsets.size(), a.alphabet(), std::move(delta), 0,
               std::move(accepting));
  }

  ////////////////////////////////////////////////////////////////////////
  // Transducer
  ////////////////////////////////////////////////////////////////////////

  // A transition reads at most one input letter and writes a word.
  struct TransducerTransition {
    State                 from;
    std::optional<Symbol> input;
    Word                  output;
    State                 to;

    auto operator<=>(TransducerTransition const&) const = default;
    bool operator==(TransducerTransition const&) const  = default;
  };

  class Transducer {
   public:
    Transducer() = default;

    Transducer(std::size_t                       num_states,
               Alphabet                          input_alphabet,
               Alphabet                          output_alphabet,
               std::vector<TransducerTransition> transitions,
               StateSet                          initial,
               StateSet                          accepting)
        : _num_states(num_states),
          _input(std::move(input_alphabet)),
          _output(std::move(output_alphabet)),
          _initial(std::move(initial)),
          _accepting(std::move(accepting)),
          _out(num_states) {
      auto check_state = [this](State s) {
        if (s >= _num_states) {
          throw DomainError("state " + std::to_string(s) + " out of range");
        }
      };
      for (auto s : _initial) {
        check_state(s);
      }
      for (auto s : _accepting) {
        check_state(s);
      }
      std::set<TransducerTransition> seen;
      for (auto& t : transitions) {
        check_state(t.from);
        check_state(t.to);
        if (t.input && !_input.contains(*t.input)) {
          throw DomainError("transition input " + to_string(*t.input)
                            + " is not in the input alphabet");
        }
        check_word(_output, t.output, "transducer output");
        if (seen.insert(t).second) {
          _out[t.from].push_back(_transitions.size());
          _transitions.push_back(std::move(t));
        }
      }
    }

    std::size_t num_states() const noexcept {
      return _num_states;
    }
    Alphabet const& input_alphabet() const noexcept {
      return _input;
    }
    Alphabet const& output_alphabet() const noexcept {
      return _output;
    }
    std::vector<TransducerTransition> const& transitions() const noexcept {
      return _transitions;
    }
    StateSet const& initial() const noexcept {
      return _initial;
    }
    StateSet const& accepting() const noexcept {
      return _accepting;
    }
    std::vector<std::size_t> const& out(State s) const {
      return _out.at(s);
    }

    bool operator==(Transducer const& that) const {
      using Set = std::set<TransducerTransition>;
      return _num_states == that._num_states && _input == that._input
             && _output == that._output && _initial == that._initial
             && _accepting == that._accepting
             && Set(_transitions.begin(), _transitions.end())
                    == Set(that._transitions.begin(), that._transitions.end());
    }

   private:
    std::size_t                           _num_states = 0;
    Alphabet                              _input;
    Alphabet                              _output;
    std::vector<TransducerTransition>     _transitions;
    StateSet                              _initial;
    StateSet                              _accepting;
    std::vector<std::vector<std::size_t>> _out;
  };

  // The relation {(a, image(a)) : a in pairs}, one step.
  inline Transducer transducer_from_pairs(
      Alphabet const&                                   input,
      Alphabet const&                                   output,
      std::vector<std::pair<std::optional<Symbol>, Word>> const& pairs) {
    std::vector<TransducerTransition> ts;
    for (auto const& [in, out] : pairs) {
      ts.push_back({0, in, out, 1});
    }
    return Transducer(2, input, output, std::move(ts), {0}, {1});
  }

  // Kleene closure of the relation; always relates (empty, empty).
  inline Transducer transducer_star(Transducer const& t) {
    State const                       hub = t.num_states();
    std::vector<TransducerTransition> ts  = t.transitions();
    for (auto i : t.initial()) {
      ts.push_back({hub, std::nullopt, {}, i});
    }
    for (auto f : t.accepting()) {
      ts.push_back({f, std::nullopt, {}, hub});
    }
    return Transducer(hub + 1, t.input_alphabet(), t.output_alphabet(),
                      std::move(ts), {hub}, {hub});
  }

  // Relations concatenated factorwise; the alphabets are the unions of the
  // factors' alphabets. Throws DomainError on an empty list.
  inline Transducer transducer_concat(std::vector<Transducer> const& ts) {
    if (ts.empty()) {
      throw DomainError("transducer_concat: empty list of factors");
    }
    Alphabet                          input, output;
    std::vector<TransducerTransition> trans;
    std::vector<std::size_t>          offset;
    std::size_t                       total = 0;
    for (auto const& t : ts) {
      input  = detail::merge(input, t.input_alphabet());
      output = detail::merge(output, t.output_alphabet());
      offset.push_back(total);
      for (auto const& tr : t.transitions()) {
        trans.push_back({tr.from + total, tr.input, tr.output, tr.to + total});
      }
      total += t.num_states();
    }
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      for (auto f : ts[k].accepting()) {
        for (auto i : ts[k + 1].initial()) {
          trans.push_back({f + offset[k], std::nullopt, {}, i + offset[k + 1]});
        }
      }
    }
    return Transducer(total, std::move(input), std::move(output),
                      std::move(trans),
                      detail::shifted(ts.front().initial(), offset.front()),
                      detail::shifted(ts.back().accepting(), offset.back()));
  }

  // As above, but every factor must be over the given alphabets; otherwise
  // throws DomainError.
  inline Transducer transducer_concat(std::vector<Transducer> const& ts,
                                      Alphabet const&                input,
                                      Alphabet const&                output) {
    for (std::size_t k = 0; k < ts.size(); ++k) {
      for (auto const& s : ts[k].input_alphabet()) {
        if (!input.contains(s)) {
          throw DomainError("transducer_concat: factor " + std::to_string(k)
                            + " reads " + to_string(s)
                            + " outside the input alphabet");
        }
      }
      for (auto const& s : ts[k].output_alphabet()) {
        if (!output.contains(s)) {
          throw DomainError("transducer_concat: factor " + std::to_string(k)
                            + " writes " + to_string(s)
                            + " outside the output alphabet");
        }
      }
    }
    auto r = transducer_concat(ts);
    return Transducer(r.num_states(), input, output, r.transitions(),
                      r.initial(), r.accepting());
  }

  // {(rev u, rev v) : (u, v) related by t}.
  inline Transducer transducer_reverse(Transducer const& t) {
    std::vector<TransducerTransition> ts;
    for (auto const& tr : t.transitions()) {
      ts.push_back({tr.to, tr.input, reverse(tr.output), tr.from});
    }
    return Transducer(t.num_states(), t.input_alphabet(), t.output_alphabet(),
                      std::move(ts), t.accepting(), t.initial());
  }

  // Whether (u, v) is in the relation, by search over (input position,
  // output position, state).
  inline bool relation_member(Transducer const& t, Word const& u,
                              Word const& v) {
    check_word(t.input_alphabet(), u, "relation_member input");
    check_word(t.output_alphabet(), v, "relation_member output");
    using Config = std::tuple<std::size_t, std::size_t, State>;
    std::set<Config>   seen;
    std::deque<Config> queue;
    for (auto s : t.initial()) {
      if (seen.insert({0, 0, s}).second) {
        queue.emplace_back(0, 0, s);
      }
    }
    while (!queue.empty()) {
      auto [i, j, q] = queue.front();
      queue.pop_front();
      if (i == u.size() && j == v.size() && t.accepting().count(q)) {
        return true;
      }
      for (auto k : t.out(q)) {
        auto const& tr = t.transitions()[k];
        std::size_t ni = i;
        if (tr.input) {
          if (i == u.size() || u[i] != *tr.input) {
            continue;
          }
          ++ni;
        }
        if (j + tr.output.size() > v.size()
            || !std::equal(tr.output.begin(), tr.output.end(),
                           v.begin() + j)) {
          continue;
        }
        Config c{ni, j + tr.output.size(), tr.to};
        if (seen.insert(c).second) {
          queue.push_back(c);
        }
      }
    }
    return false;
  }

  // {v : (u, v) related by t for some u in L(a)}, by the product of a and t
  // restricted to reachable pairs. The result may contain epsilon moves.
  inline Nfa relation_image(Transducer const& t, Nfa const& a) {
    for (auto const& s : a.alphabet()) {
      if (!t.input_alphabet().contains(s)) {
        throw DomainError("relation_image: automaton letter " + to_string(s)
                          + " is not in the transducer's input alphabet");
      }
    }
    std::map<std::pair<State, State>, State> index;
    std::vector<std::pair<State, State>>     pairs;
    std::vector<NfaTransition>               ts;

    auto state_of = [&](State qa, State qt) {
      auto [it, fresh] = index.emplace(std::make_pair(qa, qt), pairs.size());
      if (fresh) {
        pairs.emplace_back(qa, qt);
      }
      return it->second;
    };
    // Edges with outputs longer than one letter go through fresh chain
    // states, numbered after all pair states once those are known.
    struct Edge {
      State from;
      Word  output;
      State to;
    };
    std::vector<Edge> edges;

    StateSet initial;
    for (auto qa : a.initial()) {
      for (auto qt : t.initial()) {
        initial.insert(state_of(qa, qt));
      }
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto const [qa, qt] = pairs[k];
      for (auto i : a.out(qa)) {
        auto const& at = a.transitions()[i];
        if (!at.label) {
          edges.push_back({k, {}, state_of(at.to, qt)});
        }
      }
      for (auto i : t.out(qt)) {
        auto const& tt = t.transitions()[i];
        if (!tt.input) {
          edges.push_back({k, tt.output, state_of(qa, tt.to)});
          continue;
        }
        for (auto j : a.out(qa)) {
          auto const& at = a.transitions()[j];
          if (at.label && *at.label == *tt.input) {
            edges.push_back({k, tt.output, state_of(at.to, tt.to)});
          }
        }
      }
    }
    StateSet accepting;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (a.accepting().count(pairs[k].first)
          && t.accepting().count(pairs[k].second)) {
        accepting.insert(k);
      }
    }
    std::size_t next_state = pairs.size();
    for (auto const& e : edges) {
      if (e.output.size() <= 1) {
        ts.push_back({e.from,
                      e.output.empty() ? std::nullopt
                                       : std::optional<Symbol>(e.output[0]),
                      e.to});
        continue;
      }
      State prev = e.from;
      for (std::size_t m = 0; m + 1 < e.output.size(); ++m) {
        ts.push_back({prev, e.output[m], next_state});
        prev = next_state++;
      }
      ts.push_back({prev, e.output.back(), e.to});
    }
    return Nfa(next_state, t.output_alphabet(), std::move(ts),
               std::move(initial), std::move(accepting));
  }

}  // namespace hypword

#endif  // HYPWORD_AUTOMATA_HPP_
