#include "cgw/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cgw {

  ParseError::ParseError(std::string const& what, std::size_t line_, std::size_t column_)
      : std::runtime_error(what), line(line_), column(column_) {}

  Json parse_json(std::string_view text, std::string_view origin) {
    try {
      return Json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      // e.byte is 1-based and points just past the offending character.
      std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
      std::size_t line = 1, column = 1;
      for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      throw ParseError(std::string(origin) + ":" + std::to_string(line) + ":"
                           + std::to_string(column) + ": " + e.what(),
                       line, column);
    }
  }

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Json read_json_file(std::string const& path) { return parse_json(read_file(path), path); }

  void write_file(std::string const& path, std::string const& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + path);
    }
    out << contents;
  }

  std::string digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  namespace {

    template <typename T>
    T field(Json const& j, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
      }
      try {
        return j.at(key).get<T>();
      } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string("field \"") + key + "\": " + e.what());
      }
    }

    Word word_field(Json const& j, char const* key, Alphabet const& a) {
      try {
        return parse_word(field<std::string>(j, key), a);
      } catch (WordError const& e) {
        throw ParseError(std::string("field \"") + key + "\": " + e.what());
      }
    }

    Word word_text(std::string const& text, Alphabet const& a) {
      try {
        return parse_word(text, a);
      } catch (WordError const& e) {
        throw ParseError(e.what());
      }
    }

    std::vector<std::string> names_of(Alphabet const& a,
                                      std::vector<std::size_t> const& gens) {
      std::vector<std::string> out;
      for (auto g : gens) {
        out.push_back(a.name(g));
      }
      return out;
    }

  }  // namespace

  Json to_json(Presentation const& p) {
    Json gens = Json::array();
    for (std::size_t g = 0; g < p.alphabet().size(); ++g) {
      auto const& info = p.info(g);
      Json        e;
      e["name"] = p.alphabet().name(g);
      e["role"] = std::string(to_string(info.role));
      e["copy"] = info.copy;
      if (info.base != p.alphabet().name(g)) {
        e["base"] = info.base;
      }
      gens.push_back(e);
    }
    Json rels = Json::array();
    for (auto const& r : p.relators()) {
      rels.push_back(p.format(r));
    }
    Json j;
    j["generators"] = gens;
    j["relators"]   = rels;
    j["meta"]       = {{"N", p.copies}, {"source", p.source}};
    return j;
  }

  Presentation presentation_from_json(Json const& j) {
    Presentation p;
    for (auto const& g : field<Json>(j, "generators")) {
      Role role = Role::other;
      if (g.contains("role")) {
        try {
          role = role_from_string(field<std::string>(g, "role"));
        } catch (std::invalid_argument const& e) {
          throw ParseError(e.what());
        }
      }
      auto name = field<std::string>(g, "name");
      try {
        p.add_generator(name, role, g.value("copy", std::size_t{0}),
                        g.value("base", std::string{}));
      } catch (WordError const& e) {
        throw ParseError(e.what());
      }
    }
    std::size_t index = 0;
    for (auto const& r : field<Json>(j, "relators")) {
      ++index;
      auto where = "relator " + std::to_string(index) + ": ";
      if (!r.is_string()) {
        throw ParseError(where + "must be a string");
      }
      try {
        p.add_relator(word_text(r.get<std::string>(), p.alphabet()));
      } catch (std::exception const& e) {
        throw ParseError(where + e.what());
      }
    }
    if (j.contains("meta")) {
      auto const& m = j.at("meta");
      p.copies      = m.value("N", std::size_t{1});
      p.source      = m.value("source", std::string{});
    }
    return p;
  }

  Json to_json(SMachine const& s) {
    Json j;
    j["alphabet"] = s.alphabet.names();
    j["k"]        = s.segments();
    Json q        = Json::array();
    for (auto const& cls : s.state_classes) {
      q.push_back(names_of(s.alphabet, cls));
    }
    j["Q"] = q;
    Json y = Json::array();
    for (auto const& tape : s.tape_alphabets) {
      y.push_back(names_of(s.alphabet, tape));
    }
    j["Y"]       = y;
    Json rules   = Json::array();
    for (auto const& r : s.rules) {
      Json parts = Json::array();
      for (auto const& part : r.parts) {
        parts.push_back({{"U", format_word(part.lhs, s.alphabet)},
                         {"V", format_word(part.rhs, s.alphabet)}});
      }
      rules.push_back({{"name", r.name}, {"parts", parts}});
    }
    j["rules"]      = rules;
    j["W0"]         = format_admissible(s, s.accept);
    j["delimiters"] = s.delimiter_classes;
    return j;
  }

  SMachine smachine_from_json(Json const& j) {
    SMachine s;
    try {
      if (j.contains("alphabet")) {
        for (auto const& name : field<std::vector<std::string>>(j, "alphabet")) {
          s.alphabet.add(name);
        }
      }
      for (auto const& cls : field<std::vector<std::vector<std::string>>>(j, "Q")) {
        std::vector<std::size_t> ids;
        for (auto const& name : cls) {
          ids.push_back(s.alphabet.intern(name));
        }
        s.state_classes.push_back(ids);
      }
      for (auto const& tape : field<std::vector<std::vector<std::string>>>(j, "Y")) {
        std::vector<std::size_t> ids;
        for (auto const& name : tape) {
          ids.push_back(s.alphabet.intern(name));
        }
        s.tape_alphabets.push_back(ids);
      }
    } catch (WordError const& e) {
      throw ParseError(e.what());
    }
    if (j.contains("k") && field<std::size_t>(j, "k") != s.tape_alphabets.size()) {
      throw ParseError("\"k\" does not match the number of tape alphabets");
    }
    s.delimiter_classes = j.value("delimiters", std::vector<std::size_t>{});
    for (auto const& r : field<Json>(j, "rules")) {
      SRule rule;
      rule.name = field<std::string>(r, "name");
      for (auto const& part : field<Json>(r, "parts")) {
        rule.parts.push_back(
            {word_field(part, "U", s.alphabet), word_field(part, "V", s.alphabet)});
      }
      s.rules.push_back(std::move(rule));
    }
    if (s.state_classes.empty()) {
      throw ParseError("machine has no state classes");
    }
    try {
      s.accept = parse_admissible(s, field<std::string>(j, "W0"));
    } catch (std::exception const& e) {
      throw ParseError(std::string("field \"W0\": ") + e.what());
    }
    return s;
  }

  Json to_json(TuringMachine const& tm) {
    Json j;
    j["A"]     = names_of(tm.alphabet, tm.tape_letters);
    j["Q"]     = names_of(tm.alphabet, tm.states);
    Json trans = Json::array();
    for (auto const& t : tm.transitions) {
      trans.push_back({{"name", t.name},
                       {"u", format_word(t.u, tm.alphabet)},
                       {"q", tm.alphabet.name(t.q)},
                       {"v", format_word(t.v, tm.alphabet)},
                       {"u2", format_word(t.u2, tm.alphabet)},
                       {"q2", tm.alphabet.name(t.q2)},
                       {"v2", format_word(t.v2, tm.alphabet)}});
    }
    j["transitions"] = trans;
    j["accept"]      = {{"left", format_word(tm.accept.left, tm.alphabet)},
                        {"state", tm.alphabet.name(tm.accept.state)},
                        {"right", format_word(tm.accept.right, tm.alphabet)}};
    return j;
  }

  TuringMachine tm_from_json(Json const& j) {
    TuringMachine tm;
    try {
      for (auto const& a : field<std::vector<std::string>>(j, "A")) {
        tm.tape_letters.push_back(tm.alphabet.add(a));
      }
      for (auto const& q : field<std::vector<std::string>>(j, "Q")) {
        tm.states.push_back(tm.alphabet.add(q));
      }
    } catch (WordError const& e) {
      throw ParseError(e.what());
    }
    auto state = [&](Json const& o, char const* key) {
      auto name = field<std::string>(o, key);
      auto g    = tm.alphabet.find(name);
      if (!g || !tm.is_state(*g)) {
        throw ParseError(std::string("field \"") + key + "\": unknown state " + name);
      }
      return *g;
    };
    std::size_t n = 0;
    for (auto const& t : field<Json>(j, "transitions")) {
      Transition tr;
      tr.name = t.value("name", "r_" + std::to_string(++n));
      tr.u    = word_field(t, "u", tm.alphabet);
      tr.q    = state(t, "q");
      tr.v    = word_field(t, "v", tm.alphabet);
      tr.u2   = word_field(t, "u2", tm.alphabet);
      tr.q2   = state(t, "q2");
      tr.v2   = word_field(t, "v2", tm.alphabet);
      tm.transitions.push_back(std::move(tr));
    }
    auto const& acc  = field<Json>(j, "accept");
    tm.accept.left   = word_field(acc, "left", tm.alphabet);
    tm.accept.state  = state(acc, "state");
    tm.accept.right  = word_field(acc, "right", tm.alphabet);
    try {
      validate_machine(tm);
    } catch (std::invalid_argument const& e) {
      throw ParseError(e.what());
    }
    return tm;
  }

  Json to_json(TrivialityCertificate const& c, Presentation const& p) {
    Json factors = Json::array();
    for (std::size_t i = 0; i < c.u.size(); ++i) {
      factors.push_back({{"u", p.format(c.u[i])}});
      if (i < c.r.size()) {
        factors.push_back({{"r", p.format(c.r[i])}});
      }
    }
    return {{"d", c.d()}, {"factors", factors}};
  }

  TrivialityCertificate certificate_from_json(Json const& j, Presentation const& p) {
    TrivialityCertificate c;
    c.u.clear();
    bool expect_u = true;
    for (auto const& f : field<Json>(j, "factors")) {
      char const* key = expect_u ? "u" : "r";
      (expect_u ? c.u : c.r).push_back(word_field(f, key, p.alphabet()));
      expect_u = !expect_u;
    }
    if (expect_u || c.u.empty()) {
      throw ParseError("certificate factors must alternate u, r, ..., u");
    }
    return c;
  }

  Json to_json(EqualizerSpec const& spec) {
    Json j;
    j["presentation"] = to_json(spec.target);
    j["x"]            = spec.x.names();
    Json phi          = Json::object();
    for (std::size_t i = 0; i < spec.x.size(); ++i) {
      phi[spec.x.name(i)] = spec.target.format(spec.phi[i]);
    }
    j["phi"] = phi;
    Json t   = Json::array();
    for (auto const& w : spec.t) {
      t.push_back(spec.target.format(w));
    }
    j["t"]  = t;
    Json s  = Json::array();
    for (auto const& w : spec.s) {
      s.push_back(format_word(w, spec.x));
    }
    j["s"] = s;
    return j;
  }

  EqualizerSpec equalizer_from_json(Json const& j) {
    EqualizerSpec spec;
    spec.target   = presentation_from_json(field<Json>(j, "presentation"));
    auto const& phi = field<Json>(j, "phi");
    if (!phi.is_object()) {
      throw ParseError("\"phi\" must map x generators to words");
    }
    std::vector<std::string> xs;
    if (j.contains("x")) {
      xs = field<std::vector<std::string>>(j, "x");
    } else {
      for (auto const& [name, image] : phi.items()) {
        xs.push_back(name);
      }
    }
    try {
      for (auto const& name : xs) {
        spec.x.add(name);
      }
    } catch (WordError const& e) {
      throw ParseError(e.what());
    }
    for (auto const& name : xs) {
      spec.phi.push_back(word_field(phi, name.c_str(), spec.target.alphabet()));
    }
    for (auto const& t : field<std::vector<std::string>>(j, "t")) {
      spec.t.push_back(word_text(t, spec.target.alphabet()));
    }
    for (auto const& s : field<std::vector<std::string>>(j, "s")) {
      spec.s.push_back(word_text(s, spec.x));
    }
    return spec;
  }

  Json to_json(WordFamily const& f) {
    Json j        = Json::object();
    auto alphabet = family_alphabet();
    for (std::size_t i = 0; i < f.keys.size(); ++i) {
      j[f.keys[i]] = format_word(f.words[i], alphabet);
    }
    return j;
  }

  WordFamily family_from_json(Json const& j, double lambda) {
    if (!j.is_object()) {
      throw ParseError("family must be an object mapping keys to words");
    }
    WordFamily f;
    f.lambda      = lambda;
    auto alphabet = family_alphabet();
    for (auto const& [key, text] : j.items()) {
      if (!text.is_string()) {
        throw ParseError("word of " + key + " must be a string");
      }
      f.keys.push_back(key);
      f.words.push_back(word_text(text.get<std::string>(), alphabet));
      if (!is_reduced(f.words.back())) {
        throw ParseError("word of " + key + " is not reduced");
      }
    }
    return f;
  }

  std::vector<std::pair<std::string, std::size_t>> lengths_from_json(Json const& j) {
    if (!j.is_object()) {
      throw ParseError("lengths must be an object mapping keys to lengths");
    }
    std::vector<std::pair<std::string, std::size_t>> out;
    for (auto const& [key, len] : j.items()) {
      if (!len.is_number_unsigned()) {
        throw ParseError("length of " + key + " must be a nonnegative integer");
      }
      out.emplace_back(key, len.get<std::size_t>());
    }
    return out;
  }

}  // namespace cgw
