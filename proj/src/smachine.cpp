#include "cgw/smachine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <variant>

namespace cgw {

  Word AdmissibleWord::flatten() const {
    Word out;
    for (std::size_t i = 0; i < states.size(); ++i) {
      out.push_back(make_letter(states[i]));
      if (i < tapes.size()) {
        out.append(tapes[i]);
      }
    }
    return out;
  }

  std::optional<std::size_t> SMachine::class_of(std::size_t generator) const {
    for (std::size_t c = 0; c < state_classes.size(); ++c) {
      auto const& cls = state_classes[c];
      if (std::find(cls.begin(), cls.end(), generator) != cls.end()) {
        return c;
      }
    }
    return std::nullopt;
  }

  bool SMachine::is_delimiter_class(std::size_t c) const {
    return std::find(delimiter_classes.begin(), delimiter_classes.end(), c)
           != delimiter_classes.end();
  }

  std::string SMachine::rule_name(RuleRef ref) const {
    return rules.at(ref.index).name + (ref.inverse ? "^-1" : "");
  }

  namespace {

    using Shape = CompiledRule::Shape;

    bool in_tape_alphabet(SMachine const& m, std::size_t segment, Letter x) {
      auto const& y = m.tape_alphabets[segment];
      return std::find(y.begin(), y.end(), generator_of(x)) != y.end();
    }

    // Splits a fragment into its shape, or returns a description of the
    // first defect.  `side` is "U" or "V", used in messages.
    std::variant<Shape, std::string> analyze(SMachine const& m,
                                             Word const&     fragment,
                                             std::string     side) {
      Shape             s;
      std::vector<Word> tapes(1);
      for (Letter x : fragment) {
        if (generator_of(x) >= m.alphabet.size()) {
          return side + " uses an undeclared letter";
        }
        auto c = m.class_of(generator_of(x));
        if (c) {
          if (is_inverse_letter(x)) {
            return side + " contains an inverted state letter";
          }
          if (!s.states.empty() && *c != s.first_class + s.states.size()) {
            return side + " state letters are not one per consecutive class";
          }
          if (s.states.empty()) {
            s.first_class = *c;
          }
          s.states.push_back(generator_of(x));
          tapes.emplace_back();
        } else {
          tapes.back().push_back(x);
        }
      }
      if (s.states.empty()) {
        return side + " contains no state letter";
      }
      s.last_class = s.first_class + s.states.size() - 1;
      s.prefix     = tapes.front();
      s.suffix     = tapes.back();
      s.inner.assign(tapes.begin() + 1, tapes.end() - 1);
      for (auto const& t : tapes) {
        if (!is_reduced(t)) {
          return side + " has an unreduced tape word";
        }
      }
      std::size_t const k = m.segments();
      if (!s.prefix.empty()) {
        if (s.first_class == 0) {
          return side + " must start with a Q_1-letter";
        }
        for (Letter x : s.prefix) {
          if (!in_tape_alphabet(m, s.first_class - 1, x)) {
            return side + " has a letter outside Y_"
                   + std::to_string(s.first_class) + " before its first state";
          }
        }
      }
      if (!s.suffix.empty()) {
        if (s.last_class == k) {
          return side + " must end with a Q_" + std::to_string(k + 1)
                 + "-letter";
        }
        for (Letter x : s.suffix) {
          if (!in_tape_alphabet(m, s.last_class, x)) {
            return side + " has a letter outside Y_"
                   + std::to_string(s.last_class + 1) + " after its last state";
          }
        }
      }
      for (std::size_t i = 0; i < s.inner.size(); ++i) {
        for (Letter x : s.inner[i]) {
          if (!in_tape_alphabet(m, s.first_class + i, x)) {
            return side + " has a letter outside Y_"
                   + std::to_string(s.first_class + i + 1);
          }
        }
      }
      return s;
    }

    std::vector<SMachineViolation> rule_violations(SMachine const& m,
                                                   SRule const&    rule,
                                                   std::size_t     index) {
      std::vector<SMachineViolation> out;
      if (rule.parts.empty()) {
        out.push_back({index, std::nullopt, "rule has no parts"});
        return out;
      }
      std::vector<std::pair<std::size_t, std::size_t>> spans;
      for (std::size_t i = 0; i < rule.parts.size(); ++i) {
        auto const& part = rule.parts[i];
        auto        n    = std::to_string(i + 1);
        auto        lhs  = analyze(m, part.lhs, "U_" + n);
        auto        rhs  = analyze(m, part.rhs, "V_" + n);
        if (auto e = std::get_if<std::string>(&lhs)) {
          out.push_back({index, i, *e});
        }
        if (auto e = std::get_if<std::string>(&rhs)) {
          out.push_back({index, i, *e});
        }
        if (auto l = std::get_if<Shape>(&lhs)) {
          spans.emplace_back(l->first_class, l->last_class);
          if (auto r = std::get_if<Shape>(&rhs)) {
            if (r->first_class != l->first_class
                || r->last_class != l->last_class) {
              out.push_back({index,
                             i,
                             "V_" + n + " must contain exactly the state classes"
                                 " Q_l..Q_r of U_" + n});
            }
          }
        } else {
          spans.emplace_back(0, 0);
        }
      }
      for (std::size_t i = 0; i + 1 < spans.size(); ++i) {
        if (spans[i].second >= spans[i + 1].first) {
          out.push_back({index,
                         i + 1,
                         "r(" + std::to_string(i + 1) + ") >= l("
                             + std::to_string(i + 2) + ")"});
        }
      }
      return out;
    }

  }  // namespace

  std::vector<SMachineViolation> validate_machine(SMachine const& m) {
    std::vector<SMachineViolation> out;
    auto global = [&](std::string clause) {
      out.push_back({std::nullopt, std::nullopt, std::move(clause)});
    };
    if (m.state_classes.size() != m.tape_alphabets.size() + 1) {
      global("need k + 1 state classes for k tape segments");
      return out;
    }
    std::vector<int> owner(m.alphabet.size(), -1);
    for (std::size_t c = 0; c < m.state_classes.size(); ++c) {
      if (m.state_classes[c].empty()) {
        global("state class Q_" + std::to_string(c + 1) + " is empty");
      }
      for (auto g : m.state_classes[c]) {
        if (g >= m.alphabet.size()) {
          global("undeclared state letter");
          continue;
        }
        if (owner[g] != -1) {
          global("state classes are not disjoint (" + m.alphabet.name(g)
                 + ")");
        }
        owner[g] = static_cast<int>(c);
      }
    }
    for (auto const& y : m.tape_alphabets) {
      for (auto g : y) {
        if (g >= m.alphabet.size()) {
          global("undeclared tape letter");
        } else if (owner[g] != -1) {
          global("tape letter " + m.alphabet.name(g)
                 + " is also a state letter");
        }
      }
    }
    for (auto c : m.delimiter_classes) {
      if (c >= m.state_classes.size() || m.state_classes[c].size() != 1) {
        global("delimiter class must be a singleton state class");
      }
    }
    if (!out.empty()) {
      return out;
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
      auto const& name = m.rules[i].name;
      if (name.empty() || !names.insert(name).second) {
        out.push_back({i, std::nullopt, "rule names must be unique"});
      }
      if (m.alphabet.find(name)) {
        out.push_back({i, std::nullopt, "rule name clashes with a letter"});
      }
      auto v = rule_violations(m, m.rules[i], i);
      out.insert(out.end(), v.begin(), v.end());
    }
    try {
      (void) to_admissible(m, m.accept.flatten());
    } catch (std::exception const& e) {
      global(std::string("accept word: ") + e.what());
    }
    return out;
  }

  std::string describe(SMachineViolation const& v, SMachine const& m) {
    std::string out;
    if (v.rule) {
      out += "rule " + m.rules.at(*v.rule).name;
      if (v.part) {
        out += " part " + std::to_string(*v.part + 1);
      }
      out += ": ";
    }
    return out + v.clause;
  }

  SRule invert_rule(SMachine const& m, SRule const& rule) {
    SRule out{rule.name, {}};
    for (auto const& p : rule.parts) {
      out.parts.push_back({p.rhs, p.lhs});
    }
    auto v = rule_violations(m, out, 0);
    if (!v.empty()) {
      throw std::invalid_argument("inverse of rule " + rule.name
                                  + " is ill-formed: " + v.front().clause);
    }
    return out;
  }

  CompiledRule::CompiledRule(SMachine const& m, SRule const& rule, RuleRef ref)
      : _ref(ref), _segments(m.segments()) {
    auto v = rule_violations(m, rule, ref.index);
    if (!v.empty()) {
      throw std::invalid_argument("rule " + rule.name + ": "
                                  + describe(v.front(), m));
    }
    for (auto const& p : rule.parts) {
      auto const& from = ref.inverse ? p.rhs : p.lhs;
      auto const& to   = ref.inverse ? p.lhs : p.rhs;
      _lhs.push_back(std::get<Shape>(analyze(m, from, "U")));
      _rhs.push_back(std::get<Shape>(analyze(m, to, "V")));
    }
  }

  std::optional<std::vector<PartMatch>>
  CompiledRule::match(AdmissibleWord const& w) const {
    std::vector<PartMatch> out;
    for (auto const& s : _lhs) {
      for (std::size_t i = 0; i < s.states.size(); ++i) {
        if (w.states[s.first_class + i] != s.states[i]) {
          return std::nullopt;
        }
      }
      for (std::size_t i = 0; i < s.inner.size(); ++i) {
        if (w.tapes[s.first_class + i] != s.inner[i]) {
          return std::nullopt;
        }
      }
      out.push_back({s.first_class, s.last_class});
    }
    return out;
  }

  std::optional<AdmissibleWord>
  CompiledRule::apply(AdmissibleWord const& w) const {
    if (!match(w)) {
      return std::nullopt;
    }
    AdmissibleWord out = w;
    // Outer tape letters act by substitution: a part p q s -> p' q' s'
    // sends q to p^-1 p' q' s' s^-1.
    std::vector<Word> put_left(_segments), put_right(_segments);
    std::vector<bool> replaced(_segments, false);
    for (std::size_t p = 0; p < _lhs.size(); ++p) {
      auto const& from = _lhs[p];
      auto const& to   = _rhs[p];
      for (std::size_t i = 0; i < to.states.size(); ++i) {
        out.states[to.first_class + i] = to.states[i];
      }
      for (std::size_t i = 0; i < to.inner.size(); ++i) {
        out.tapes[to.first_class + i] = to.inner[i];
        replaced[to.first_class + i]  = true;
      }
      if (from.first_class > 0) {
        put_right[from.first_class - 1] = concat(inverse(from.prefix), to.prefix);
      }
      if (from.last_class < _segments) {
        put_left[from.last_class] = concat(to.suffix, inverse(from.suffix));
      }
    }
    for (std::size_t t = 0; t < _segments; ++t) {
      if (replaced[t]) {
        continue;
      }
      out.tapes[t] = reduce(concat(concat(put_left[t], w.tapes[t]), put_right[t]));
    }
    return out;
  }

  std::vector<CompiledRule> symmetric_closure(SMachine const& m) {
    std::vector<CompiledRule> out;
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
      out.emplace_back(m, m.rules[i], RuleRef{i, false});
      auto const& r            = m.rules[i];
      bool        self_inverse = std::all_of(
          r.parts.begin(), r.parts.end(),
          [](RulePart const& p) { return p.lhs == p.rhs; });
      if (!self_inverse) {
        out.emplace_back(m, m.rules[i], RuleRef{i, true});
      }
    }
    return out;
  }

  std::optional<AdmissibleWord> apply_rule(SMachine const&       m,
                                           AdmissibleWord const& w,
                                           SRule const&          rule) {
    return CompiledRule(m, rule, RuleRef{0, false}).apply(w);
  }

  std::optional<AdmissibleWord> apply_rule(SMachine const&       m,
                                           AdmissibleWord const& w,
                                           RuleRef               ref) {
    return CompiledRule(m, m.rules.at(ref.index), ref).apply(w);
  }

  std::size_t word_length(SMachine const& m, AdmissibleWord const& w) {
    std::size_t n = 0;
    for (std::size_t c = 0; c < w.states.size(); ++c) {
      n += m.is_delimiter_class(c) ? 0 : 1;
    }
    for (auto const& t : w.tapes) {
      n += t.size();
    }
    return n;
  }

  TraceStats trace_stats(SMachine const& m, ComputationTrace const& trace) {
    TraceStats s;
    s.time = trace.rules.size();
    for (auto const& w : trace.words) {
      auto n  = word_length(m, w);
      s.space = std::max(s.space, n);
      s.area += n;
    }
    return s;
  }

  void check_trace(SMachine const& m, ComputationTrace const& trace) {
    if (trace.words.size() != trace.rules.size() + 1) {
      throw std::invalid_argument("trace needs one more word than rules");
    }
    for (std::size_t i = 0; i < trace.rules.size(); ++i) {
      auto next = apply_rule(m, trace.words[i], trace.rules[i]);
      if (!next || *next != trace.words[i + 1]) {
        throw std::invalid_argument("trace step " + std::to_string(i + 1)
                                    + " is not an application of "
                                    + m.rule_name(trace.rules[i]));
      }
    }
  }

  std::string_view to_string(SearchOutcome outcome) {
    switch (outcome) {
      case SearchOutcome::accepted:
        return "accepted";
      case SearchOutcome::rejected_exhaustive:
        return "rejected_exhaustive";
      case SearchOutcome::unknown_budget:
        return "unknown_budget";
    }
    return "?";
  }

  SMachineSearchResult accepts(SMachine const&       m,
                               AdmissibleWord const& start,
                               SearchBudget          budget) {
    if (budget.max_steps == 0 || budget.max_visited == 0) {
      throw std::invalid_argument("search budgets must be positive");
    }
    auto const rules = symmetric_closure(m);
    struct Node {
      AdmissibleWord word;
      std::size_t    parent;
      RuleRef        rule;
      std::size_t    depth;
    };
    std::vector<Node>                             nodes;
    std::unordered_map<Word, std::size_t, WordHash> seen;
    Word const                                    goal = m.accept.flatten();

    auto trace_to = [&](std::size_t id) {
      ComputationTrace t;
      while (true) {
        t.words.push_back(nodes[id].word);
        if (id == 0) {
          break;
        }
        t.rules.push_back(nodes[id].rule);
        id = nodes[id].parent;
      }
      std::reverse(t.words.begin(), t.words.end());
      std::reverse(t.rules.begin(), t.rules.end());
      return t;
    };

    SMachineSearchResult result;
    nodes.push_back({start, 0, {}, 0});
    seen.emplace(start.flatten(), 0);
    if (start.flatten() == goal) {
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
      for (auto const& rule : rules) {
        auto next = rule.apply(nodes[head].word);
        if (!next) {
          continue;
        }
        Word key = next->flatten();
        if (seen.count(key) != 0) {
          continue;
        }
        if (nodes.size() >= budget.max_visited) {
          result.outcome = SearchOutcome::unknown_budget;
          result.visited = nodes.size();
          return result;
        }
        seen.emplace(key, nodes.size());
        nodes.push_back(
            {std::move(*next), head, rule.ref(), nodes[head].depth + 1});
        if (key == goal) {
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

  AdmissibleWord to_admissible(SMachine const& m, Word const& w) {
    AdmissibleWord out;
    std::size_t    expected = 0;
    for (Letter x : w) {
      auto c = m.class_of(generator_of(x));
      if (c) {
        if (is_inverse_letter(x)) {
          throw std::invalid_argument("inverted state letter");
        }
        if (*c != expected) {
          throw std::invalid_argument("state letters out of class order");
        }
        out.states.push_back(generator_of(x));
        ++expected;
        if (expected <= m.segments()) {
          out.tapes.emplace_back();
        }
      } else {
        if (out.states.empty() || expected > m.segments()) {
          throw std::invalid_argument("tape letter outside the tape zone");
        }
        if (!in_tape_alphabet(m, expected - 1, x)) {
          throw std::invalid_argument(
              "letter " + m.alphabet.name(generator_of(x))
              + " not in Y_" + std::to_string(expected));
        }
        out.tapes.back().push_back(x);
      }
    }
    if (out.states.size() != m.state_classes.size()) {
      throw std::invalid_argument("need exactly one state letter per class");
    }
    for (auto& t : out.tapes) {
      if (!is_reduced(t)) {
        throw std::invalid_argument("tape word is not reduced");
      }
    }
    return out;
  }

  AdmissibleWord parse_admissible(SMachine const& m, std::string_view text) {
    Word w = parse_word(text, m.alphabet);
    auto has_class = [&](std::size_t c) {
      return std::any_of(w.begin(), w.end(), [&](Letter x) {
        return m.class_of(generator_of(x)) == c;
      });
    };
    std::size_t const last = m.state_classes.size() - 1;
    if (m.is_delimiter_class(0) && !has_class(0)) {
      Word fixed{make_letter(m.state_classes[0][0])};
      fixed.append(w);
      w = fixed;
    }
    if (last != 0 && m.is_delimiter_class(last) && !has_class(last)) {
      w.push_back(make_letter(m.state_classes[last][0]));
    }
    return to_admissible(m, w);
  }

  std::string format_admissible(SMachine const&       m,
                                AdmissibleWord const& w) {
    return format_word(w.flatten(), m.alphabet);
  }

}  // namespace cgw
