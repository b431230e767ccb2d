#include "cgw/catalog.hpp"

#include <string>

namespace cgw {

  TuringMachine counterexample_tm() {
    TuringMachine tm;
    tm.tape_letters = {tm.alphabet.add("a")};
    auto q          = tm.alphabet.add("q");
    auto q0         = tm.alphabet.add("q_0");
    tm.states       = {q, q0};
    Letter a        = tm.alphabet.letter("a");
    tm.transitions.push_back({"r_1", Word{a}, q, {}, {}, q0, {}});
    tm.transitions.push_back({"r_2", Word{a}, q0, {}, {}, q0, {}});
    tm.accept.state = q0;
    validate_machine(tm);
    return tm;
  }

  Presentation z2_presentation() {
    Presentation p;
    p.add_generator("a", Role::other);
    p.add_generator("b", Role::other);
    p.add_relator(commutator(p.parse("a"), p.parse("b")));
    p.source = "Z^2";
    return p;
  }

  Presentation cyclic_presentation(std::size_t n) {
    Presentation p;
    p.add_generator("a", Role::other);
    p.add_relator(power(p.parse("a"), static_cast<long>(n)));
    p.source = "Z/" + std::to_string(n);
    return p;
  }

  EqualizerSpec z3_equalizer_spec() {
    EqualizerSpec spec;
    spec.target.add_generator("y", Role::other);
    spec.target.add_relator(spec.target.parse("y y y"));
    spec.target.source = "Z/3";
    spec.x.add("x");
    spec.phi = {spec.target.parse("y")};
    spec.t   = {spec.target.parse("y")};
    spec.s   = {parse_word("x", spec.x)};
    return spec;
  }

  EqualizerSpec free_equalizer_spec(std::size_t rank) {
    EqualizerSpec spec;
    for (std::size_t i = 1; i <= rank; ++i) {
      auto y = "y_" + std::to_string(i);
      spec.target.add_generator(y, Role::other);
      spec.x.add("x_" + std::to_string(i));
      spec.phi.push_back(spec.target.parse(y));
      spec.t.push_back(spec.target.parse(y));
      spec.s.push_back(parse_word("x_" + std::to_string(i), spec.x));
    }
    spec.target.source = "F_" + std::to_string(rank);
    return spec;
  }

}  // namespace cgw
