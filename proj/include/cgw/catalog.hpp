#pragma once

#include <cstddef>

#include "cgw/distortion.hpp"
#include "cgw/presentation.hpp"
#include "cgw/turing.hpp"

namespace cgw {

  // A = {a}, Q = {q, q_0}, r_1: a q -> q_0, r_2: a q_0 -> q_0, accept q_0.
  // Accepts a^m q for m >= 1 but not q; its naive S-machine accepts q.
  TuringMachine counterexample_tm();

  // <a, b | [a, b]>.
  Presentation z2_presentation();
  // <a | a^n>.
  Presentation cyclic_presentation(std::size_t n);

  // G = Z/3 = <y | y^3>, phi(x) = y, t = [y], s = [x].
  EqualizerSpec z3_equalizer_spec();
  // G free on y_1..y_rank, phi(x_i) = y_i.
  EqualizerSpec free_equalizer_spec(std::size_t rank);

}  // namespace cgw
