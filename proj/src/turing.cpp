#include "cgw/turing.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace cgw {

  Word Configuration::flatten() const {
    Word out = left;
    out.push_back(make_letter(state));
    out.append(right);
    return out;
  }

  bool TuringMachine::is_state(std::size_t g) const {
    return std::find(states.begin(), states.end(), g) != states.end();
  }

  namespace {

    bool is_tape_word(TuringMachine const& tm, Word const& w) {
      return std::all_of(w.begin(), w.end(), [&](Letter x) {
        return !is_inverse_letter(x)
               && std::find(tm.tape_letters.begin(), tm.tape_letters.end(),
                            generator_of(x))
                      != tm.tape_letters.end();
      });
    }

    bool ends_with(Word const& w, Word const& suffix) {
      return suffix.size() <= w.size()
             && std::equal(suffix.begin(), suffix.end(),
                           w.end() - suffix.size());
    }

    bool starts_with(Word const& w, Word const& prefix) {
      return prefix.size() <= w.size()
             && std::equal(prefix.begin(), prefix.end(), w.begin());
    }

  }  // namespace

  void validate_machine(TuringMachine const& tm) {
    for (auto q : tm.states) {
      if (std::find(tm.tape_letters.begin(), tm.tape_letters.end(), q)
          != tm.tape_letters.end()) {
        throw std::invalid_argument("state " + tm.alphabet.name(q)
                                    + " is also a tape letter");
      }
    }
    auto check_config = [&](Configuration const& c, std::string const& what) {
      if (!tm.is_state(c.state) || !is_tape_word(tm, c.left)
          || !is_tape_word(tm, c.right)) {
        throw std::invalid_argument(what + " is not a configuration");
      }
    };
    check_config(tm.accept, "accept configuration");
    for (auto const& t : tm.transitions) {
      check_config({t.u, t.q, t.v}, "left side of " + t.name);
      check_config({t.u2, t.q2, t.v2}, "right side of " + t.name);
      if (tm.alphabet.find(t.name)) {
        throw std::invalid_argument("transition name " + t.name
                                    + " clashes with a letter");
      }
    }
  }

  std::vector<TMStep> tm_step(TuringMachine const& tm, Configuration const& c) {
    std::vector<TMStep> out;
    for (std::size_t i = 0; i < tm.transitions.size(); ++i) {
      auto const& t = tm.transitions[i];
      // A right tape shorter than v is extended by squares at its end.
      if (t.q != c.state || !ends_with(c.left, t.u)
          || !(starts_with(c.right, t.v) || starts_with(t.v, c.right))) {
        continue;
      }
      Configuration next;
      next.left = c.left.subword(0, c.left.size() - t.u.size());
      next.left.append(t.u2);
      next.state = t.q2;
      next.right = t.v2;
      if (c.right.size() > t.v.size()) {
        next.right.append(c.right.subword(t.v.size(), c.right.size() - t.v.size()));
      }
      out.push_back({i, std::move(next)});
    }
    return out;
  }

  TMSearchResult tm_accepts(TuringMachine const& tm,
                            Configuration const& start,
                            SearchBudget         budget) {
    if (budget.max_steps == 0 || budget.max_visited == 0) {
      throw std::invalid_argument("search budgets must be positive");
    }
    struct Node {
      Configuration config;
      std::size_t   parent;
      std::size_t   transition;
      std::size_t   depth;
    };
    std::vector<Node>                               nodes{{start, 0, 0, 0}};
    std::unordered_map<Word, std::size_t, WordHash> seen{{start.flatten(), 0}};
    auto trace_to = [&](std::size_t id) {
      TMTrace t;
      while (true) {
        t.configurations.push_back(nodes[id].config);
        if (id == 0) {
          break;
        }
        t.transitions.push_back(nodes[id].transition);
        id = nodes[id].parent;
      }
      std::reverse(t.configurations.begin(), t.configurations.end());
      std::reverse(t.transitions.begin(), t.transitions.end());
      return t;
    };
    TMSearchResult result;
    if (start == tm.accept) {
      result.outcome = SearchOutcome::accepted;
      result.trace   = trace_to(0);
      result.visited = 1;
      return result;
    }
    bool truncated = false;
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      if (nodes[head].depth >= budget.max_steps) {
        truncated = true;
        continue;
      }
      for (auto& step : tm_step(tm, nodes[head].config)) {
        Word key = step.next.flatten();
        if (seen.count(key) != 0) {
          continue;
        }
        if (nodes.size() >= budget.max_visited) {
          result.visited = nodes.size();
          return result;
        }
        seen.emplace(key, nodes.size());
        bool done = step.next == tm.accept;
        nodes.push_back(
            {std::move(step.next), head, step.transition, nodes[head].depth + 1});
        if (done) {
          result.outcome = SearchOutcome::accepted;
          result.trace   = trace_to(nodes.size() - 1);
          result.visited = nodes.size();
          return result;
        }
      }
    }
    result.visited = nodes.size();
    result.outcome = truncated ? SearchOutcome::unknown_budget
                               : SearchOutcome::rejected_exhaustive;
    return result;
  }

  SMachine naive_to_smachine(TuringMachine const& tm) {
    validate_machine(tm);
    SMachine s;
    s.alphabet = tm.alphabet;
    for (auto const& name : {kLeftDelimiter, kRightDelimiter}) {
      if (s.alphabet.find(name)) {
        throw std::invalid_argument(std::string("machine already uses ")
                                    + name);
      }
    }
    auto left  = s.alphabet.add(kLeftDelimiter);
    auto right = s.alphabet.add(kRightDelimiter);
    s.state_classes     = {{left}, tm.states, {right}};
    s.tape_alphabets    = {tm.tape_letters, tm.tape_letters};
    s.delimiter_classes = {0, 2};
    for (auto const& t : tm.transitions) {
      Word lhs{make_letter(t.q)};
      Word rhs = reduce(concat(inverse(t.u), t.u2));
      rhs.push_back(make_letter(t.q2));
      rhs.append(reduce(concat(t.v2, inverse(t.v))));
      s.rules.push_back({t.name, {{lhs, rhs}}});
    }
    s.accept = configuration_to_admissible(s, tm, tm.accept);
    return s;
  }

  AdmissibleWord configuration_to_admissible(SMachine const&      s,
                                             TuringMachine const& tm,
                                             Configuration const& c) {
    (void) tm;
    AdmissibleWord w;
    w.states = {s.state_classes[0][0], c.state, s.state_classes[2][0]};
    w.tapes  = {reduce(c.left), reduce(c.right)};
    return w;
  }

  Configuration parse_configuration(TuringMachine const& tm,
                                    std::string_view     text) {
    Word          w = parse_word(text, tm.alphabet);
    Configuration c;
    bool          seen_state = false;
    for (Letter x : w) {
      if (tm.is_state(generator_of(x))) {
        if (seen_state || is_inverse_letter(x)) {
          throw std::invalid_argument("configuration needs exactly one state");
        }
        seen_state = true;
        c.state    = generator_of(x);
      } else {
        (seen_state ? c.right : c.left).push_back(x);
      }
    }
    if (!seen_state || !is_tape_word(tm, c.left) || !is_tape_word(tm, c.right)) {
      throw std::invalid_argument("malformed configuration \""
                                  + std::string(text) + "\"");
    }
    return c;
  }

  std::string format_configuration(TuringMachine const& tm,
                                   Configuration const& c) {
    return format_word(c.flatten(), tm.alphabet);
  }

}  // namespace cgw
