#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgw/words.hpp"

namespace cgw {

  // Word q_1 u_1 q_2 ... u_k q_{k+1}: `states[i]` is the generator index of
  // the Q_{i+1}-letter and `tapes[i]` the reduced tape word between the
  // (i+1)-th and (i+2)-th state letters.
  struct AdmissibleWord {
    std::vector<std::size_t> states;
    std::vector<Word>        tapes;

    Word flatten() const;
    bool operator==(AdmissibleWord const&) const = default;
  };

  // One replacement U -> V of an S-rule.  Both sides are fragments of
  // admissible words: one state letter from each class l..r in order, tape
  // words in between, and optionally tape letters before the first and after
  // the last state letter.
  struct RulePart {
    Word lhs;
    Word rhs;
    bool operator==(RulePart const&) const = default;
  };

  struct SRule {
    std::string           name;
    std::vector<RulePart> parts;
    bool operator==(SRule const&) const = default;
  };

  // Rule of the symmetric closure: rule `index` or its inverse.
  struct RuleRef {
    std::size_t index   = 0;
    bool        inverse = false;
    bool operator==(RuleRef const&) const = default;
    auto operator<=>(RuleRef const&) const = default;
  };

  struct SMachine {
    Alphabet alphabet;
    // k + 1 classes of state letters and k tape alphabets (generator indices).
    std::vector<std::vector<std::size_t>> state_classes;
    std::vector<std::vector<std::size_t>> tape_alphabets;
    std::vector<SRule>                    rules;
    AdmissibleWord                        accept;
    // Singleton state classes that only mark the ends of the tape.  Their
    // letters are not counted in word lengths and are erased when the machine
    // is compiled into a group.
    std::vector<std::size_t> delimiter_classes;

    std::size_t segments() const noexcept { return tape_alphabets.size(); }
    std::optional<std::size_t> class_of(std::size_t generator) const;
    bool is_delimiter_class(std::size_t c) const;
    std::string rule_name(RuleRef ref) const;
  };

  struct SMachineViolation {
    std::optional<std::size_t> rule;  // 0-based
    std::optional<std::size_t> part;  // 0-based
    std::string                clause;
  };

  std::vector<SMachineViolation> validate_machine(SMachine const& machine);
  std::string describe(SMachineViolation const& v, SMachine const& machine);

  // Part-wise swap U_i <-> V_i.  Throws std::invalid_argument if the result
  // is not a valid rule of `machine`.
  SRule invert_rule(SMachine const& machine, SRule const& rule);

  // State classes (0-based) of one matched part.
  struct PartMatch {
    std::size_t first_class = 0;
    std::size_t last_class  = 0;
  };

  // Precomputed form of an oriented rule.
  class CompiledRule {
   public:
    CompiledRule(SMachine const& machine, SRule const& rule, RuleRef ref);

    RuleRef ref() const noexcept { return _ref; }

    // A part matches when its state letters and the tape words between them
    // occur literally.  Tape letters before the first or after the last state
    // letter are not matched: they are cancelled against the neighbouring
    // tape (U = p Q s, V = p' Q' s' rewrites Q to p^-1 p' Q' s' s^-1), so the
    // inverse orientation always undoes an application.
    std::optional<std::vector<PartMatch>> match(AdmissibleWord const& w) const;
    std::optional<AdmissibleWord>         apply(AdmissibleWord const& w) const;

    struct Shape {
      std::size_t              first_class = 0;
      std::size_t              last_class  = 0;
      Word                     prefix;
      std::vector<std::size_t> states;
      std::vector<Word>        inner;
      Word                     suffix;
    };
    std::vector<Shape> const& lhs() const noexcept { return _lhs; }
    std::vector<Shape> const& rhs() const noexcept { return _rhs; }

   private:
    RuleRef            _ref;
    std::size_t        _segments = 0;
    std::vector<Shape> _lhs;
    std::vector<Shape> _rhs;
  };

  // Oriented rules in the order r_1, r_1^-1, r_2, r_2^-1, ...  A rule equal
  // to its own inverse appears once.
  std::vector<CompiledRule> symmetric_closure(SMachine const& machine);

  // Applies `rule` (forward orientation) with automatic reduction of the
  // tape words.
  std::optional<AdmissibleWord> apply_rule(SMachine const&       machine,
                                           AdmissibleWord const& word,
                                           SRule const&          rule);
  std::optional<AdmissibleWord> apply_rule(SMachine const&       machine,
                                           AdmissibleWord const& word,
                                           RuleRef               ref);

  struct ComputationTrace {
    std::vector<AdmissibleWord> words;  // words.size() == rules.size() + 1
    std::vector<RuleRef>        rules;  // rules[i] takes words[i] to words[i+1]
  };

  struct TraceStats {
    std::size_t time  = 0;
    std::size_t space = 0;
    std::size_t area  = 0;
  };

  // Letters of w, not counting delimiter letters.
  std::size_t word_length(SMachine const& machine, AdmissibleWord const& w);
  TraceStats  trace_stats(SMachine const&         machine,
                          ComputationTrace const& trace);
  // Throws std::invalid_argument if some step is not a rule application.
  void check_trace(SMachine const& machine, ComputationTrace const& trace);

  struct SearchBudget {
    std::size_t max_steps   = 64;
    std::size_t max_visited = 100000;
  };

  enum class SearchOutcome { accepted, rejected_exhaustive, unknown_budget };
  std::string_view to_string(SearchOutcome outcome);

  struct SMachineSearchResult {
    SearchOutcome                   outcome = SearchOutcome::unknown_budget;
    std::optional<ComputationTrace> trace;
    std::size_t                     visited = 0;
  };

  // Breadth-first search over the symmetric closure.  An accepted result
  // carries a shortest trace to the accept word; among shortest traces the
  // one discovered first (rules tried in closure order) is returned.
  SMachineSearchResult accepts(SMachine const&       machine,
                               AdmissibleWord const& word,
                               SearchBudget          budget);

  // Parses a word and splits it into state and tape parts.  Missing
  // delimiter letters of the first and last class are inserted.
  AdmissibleWord parse_admissible(SMachine const& machine,
                                  std::string_view text);
  // Throws std::invalid_argument if `w` is not admissible.
  AdmissibleWord to_admissible(SMachine const& machine, Word const& w);
  std::string    format_admissible(SMachine const&       machine,
                                   AdmissibleWord const& w);

}  // namespace cgw
