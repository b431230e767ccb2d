#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cgw/distortion.hpp"
#include "cgw/length_embed.hpp"
#include "cgw/presentation.hpp"
#include "cgw/smachine.hpp"
#include "cgw/turing.hpp"
#include "cgw/word_problem.hpp"

namespace cgw {

  using Json = nlohmann::ordered_json;

  // Malformed input.  For syntax errors line and column are 1-based; they
  // are 0 when the problem is not tied to a position.
  class ParseError : public std::runtime_error {
   public:
    ParseError(std::string const& what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line   = 0;
    std::size_t column = 0;
  };

  Json parse_json(std::string_view text, std::string_view origin = "<input>");
  Json read_json_file(std::string const& path);
  std::string read_file(std::string const& path);
  void write_file(std::string const& path, std::string const& contents);

  // FNV-1a 64 of the bytes, as 16 hex digits.
  std::string digest(std::string_view bytes);

  Json         to_json(Presentation const& p);
  Presentation presentation_from_json(Json const& j);

  // {k, Q: [[names]], Y: [[names]], rules: [{name, parts: [{U, V}]}], W0,
  // delimiters, alphabet}
  Json     to_json(SMachine const& s);
  SMachine smachine_from_json(Json const& j);

  // {A, Q, transitions: [{name, u, q, v, u2, q2, v2}], accept: {left, state,
  // right}}
  Json          to_json(TuringMachine const& tm);
  TuringMachine tm_from_json(Json const& j);

  // {d, factors: [{u}, {r}, {u}, ..., {u}]}
  Json                  to_json(TrivialityCertificate const& c, Presentation const& p);
  TrivialityCertificate certificate_from_json(Json const& j, Presentation const& p);

  // {presentation, x?, phi: {x_i: word}, t: [words], s: [words]}
  Json          to_json(EqualizerSpec const& spec);
  EqualizerSpec equalizer_from_json(Json const& j);

  // Map key -> word over b_1, b_2.
  Json       to_json(WordFamily const& f);
  WordFamily family_from_json(Json const& j, double lambda);

  // Map key -> length.
  std::vector<std::pair<std::string, std::size_t>> lengths_from_json(Json const& j);

}  // namespace cgw
