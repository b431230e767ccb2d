#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cgw/smachine.hpp"
#include "cgw/words.hpp"

namespace cgw {

  // Head sits between two squares: `left` is the tape to its left, `right`
  // the tape to its right.  Tape words are positive (no inverse letters).
  struct Configuration {
    Word        left;
    std::size_t state = 0;
    Word        right;

    Word flatten() const;
    bool operator==(Configuration const&) const = default;
  };

  // Transition u q v -> u' q' v'.
  struct Transition {
    std::string name;
    Word        u;
    std::size_t q = 0;
    Word        v;
    Word        u2;
    std::size_t q2 = 0;
    Word        v2;
  };

  struct TuringMachine {
    Alphabet                 alphabet;
    std::vector<std::size_t> tape_letters;
    std::vector<std::size_t> states;
    std::vector<Transition>  transitions;
    Configuration            accept;

    bool is_state(std::size_t generator) const;
  };

  // Throws std::invalid_argument on the first defect.
  void validate_machine(TuringMachine const& tm);

  struct TMStep {
    std::size_t   transition;
    Configuration next;
  };

  // Every configuration reachable by one transition; empty means halt.
  std::vector<TMStep> tm_step(TuringMachine const& tm, Configuration const& c);

  struct TMTrace {
    std::vector<Configuration> configurations;
    std::vector<std::size_t>   transitions;
  };

  struct TMSearchResult {
    SearchOutcome          outcome = SearchOutcome::unknown_budget;
    std::optional<TMTrace> trace;
    std::size_t            visited = 0;
  };

  TMSearchResult tm_accepts(TuringMachine const&  tm,
                            Configuration const&  start,
                            SearchBudget          budget);

  // One-tape S-machine with state classes {▷}, Q, {◁}: every transition
  // u q v -> u' q' v' becomes the rule [q -> u^-1 u' q' v' v^-1] acting on
  // the middle class.  ▷ and ◁ are delimiter classes.
  SMachine naive_to_smachine(TuringMachine const& tm);
  AdmissibleWord configuration_to_admissible(SMachine const&      s,
                                             TuringMachine const& tm,
                                             Configuration const& c);

  // Parses "a a q b": exactly one state letter, tape letters around it.
  Configuration parse_configuration(TuringMachine const& tm,
                                    std::string_view     text);
  std::string   format_configuration(TuringMachine const& tm,
                                     Configuration const& c);

  inline constexpr char const* kLeftDelimiter  = "▷";
  inline constexpr char const* kRightDelimiter = "◁";

}  // namespace cgw
