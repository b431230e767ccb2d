#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgw/acceptance.hpp"
#include "cgw/catalog.hpp"
#include "cgw/distortion.hpp"
#include "cgw/io.hpp"
#include "cgw/length_embed.hpp"
#include "cgw/presentation.hpp"
#include "cgw/smachine.hpp"
#include "cgw/turing.hpp"
#include "cgw/word_problem.hpp"

#ifndef CGW_VERSION
#define CGW_VERSION "0.0.0"
#endif

namespace {

  using namespace cgw;

  enum ExitCode { exit_ok = 0, exit_failed = 1, exit_error = 2, exit_unknown = 3 };

  struct Globals {
    std::string   format = "json";
    std::string   output;
    std::uint64_t seed  = 20240601;
    double        scale = 1.0;
  };

  // Everything a command reports.  `artifact` is what -o writes, if the
  // command produces one.
  struct Report {
    std::string         command;
    Json                inputs  = Json::object();
    Json                budgets = Json::object();
    std::string         status  = "ok";  // ok, fail or unknown
    Json                result  = Json::object();
    std::optional<Json> artifact;
  };

  int exit_code(std::string const& status) {
    if (status == "fail") {
      return exit_failed;
    }
    return status == "unknown" ? exit_unknown : exit_ok;
  }

  // Budget option whose default is multiplied by CGW_BUDGET_SCALE unless it
  // was given on the command line.
  struct Budget {
    std::size_t  value = 0;
    CLI::Option* option = nullptr;
    bool         scaled = true;

    std::size_t get(Globals const& g) const {
      if (!scaled || option->count() > 0) {
        return value;
      }
      auto v = static_cast<double>(value) * g.scale;
      return std::max<std::size_t>(1, static_cast<std::size_t>(v));
    }
  };

  void add_budget(CLI::App* app, std::string const& name, Budget& b,
                  std::string const& what, bool scaled = true) {
    b.scaled = scaled;
    b.option = app->add_option(name, b.value, what)
                   ->capture_default_str()
                   ->check(CLI::PositiveNumber);
  }

  // ----- input -----

  Json load_json(std::string const& path, Report& r, std::string const& key) {
    auto text     = read_file(path);
    r.inputs[key] = {{"path", path}, {"digest", digest(text)}};
    return parse_json(text, path);
  }

  template <class F>
  auto parse_from(std::string const& path, F&& f) {
    try {
      return f();
    } catch (ParseError const& e) {
      throw ParseError(path + ": " + e.what(), e.line, e.column);
    }
  }

  Presentation load_presentation(std::string const& path, Report& r) {
    auto j = load_json(path, r, "presentation");
    return parse_from(path, [&] { return presentation_from_json(j); });
  }

  // S-machine file, or a Turing machine file turned into its naive
  // S-machine.
  SMachine load_machine(std::string const& path, Report& r) {
    auto j = load_json(path, r, "machine");
    return parse_from(path, [&] {
      if (j.is_object() && j.contains("transitions")) {
        return naive_to_smachine(tm_from_json(j));
      }
      return smachine_from_json(j);
    });
  }

  TuringMachine load_tm(std::string const& path, Report& r) {
    auto j = load_json(path, r, "machine");
    return parse_from(path, [&] { return tm_from_json(j); });
  }

  EqualizerSpec load_spec(std::string const& path, Report& r) {
    auto j = load_json(path, r, "spec");
    return parse_from(path, [&] { return equalizer_from_json(j); });
  }

  WordFamily load_family(std::string const& path, double lambda, Report& r) {
    auto j = load_json(path, r, "family");
    return parse_from(path, [&] { return family_from_json(j, lambda); });
  }

  // ----- output -----

  std::string csv_cell(Json const& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) {
      return s;
    }
    std::string out = "\"";
    for (char c : s) {
      out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
  }

  Json envelope(Report const& r, Globals const& g) {
    Json j;
    j["tool"]         = "cgw";
    j["version"]      = CGW_VERSION;
    j["command"]      = r.command;
    j["inputs"]       = r.inputs;
    j["budgets"]      = r.budgets;
    j["budget_scale"] = g.scale;
    j["seed"]         = g.seed;
    j["status"]       = r.status;
    j["result"]       = r.result;
    return j;
  }

  // Metadata as comment lines, then result["rows"] as a table, or the scalar
  // result fields as key,value pairs.
  std::string to_csv(Report const& r, Globals const& g) {
    std::ostringstream out;
    out << "# cgw " << CGW_VERSION << " " << r.command << "\n";
    out << "# status=" << r.status << " seed=" << g.seed
        << " budget_scale=" << g.scale << "\n";
    out << "# budgets=" << r.budgets.dump() << "\n";
    for (auto const& [key, in] : r.inputs.items()) {
      out << "# input " << key << "=" << in.dump() << "\n";
    }
    auto const& rows = r.result.contains("rows") ? r.result["rows"] : Json();
    if (rows.is_array() && !rows.empty()) {
      std::vector<std::string> columns;
      for (auto const& [key, v] : rows.front().items()) {
        columns.push_back(key);
      }
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
      }
      out << "\n";
      for (auto const& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
          out << (i ? "," : "") << csv_cell(row.value(columns[i], Json()));
        }
        out << "\n";
      }
      return out.str();
    }
    out << "key,value\n";
    for (auto const& [key, v] : r.result.items()) {
      if (!v.is_structured()) {
        out << csv_cell(key) << "," << csv_cell(v) << "\n";
      }
    }
    return out.str();
  }

  void emit(Report& r, Globals const& g) {
    bool report_to_file = !g.output.empty() && !r.artifact;
    if (!g.output.empty() && r.artifact) {
      auto text = r.artifact->dump(2) + "\n";
      write_file(g.output, text);
      r.result["artifact"] = {{"path", g.output}, {"digest", digest(text)}};
    }
    auto text = g.format == "csv" ? to_csv(r, g) : envelope(r, g).dump(2) + "\n";
    if (report_to_file) {
      write_file(g.output, text);
    } else {
      std::cout << text;
    }
  }

  Json certificate_json(TrivialityCertificate const& c, Presentation const& p) {
    return to_json(c, p);
  }

  std::string generator_word(Word const& w) {
    std::string out;
    for (Letter x : w) {
      out += (out.empty() ? "" : " ") + std::string("g") + std::to_string(generator_of(x) + 1)
             + (is_inverse_letter(x) ? "^-1" : "");
    }
    return out.empty() ? "ε" : out;
  }

  std::vector<Word> read_trace_words(SMachine const& s, Json const& j) {
    Json list = j;
    if (j.is_object() && j.contains("words")) {
      list = j["words"];
    } else if (j.is_object() && j.contains("result")) {
      list = Json::array();
      for (auto const& row : j["result"].value("rows", Json::array())) {
        list.push_back(row.at("word"));
      }
    }
    if (!list.is_array()) {
      throw ParseError("trace must be a list of words");
    }
    std::vector<Word> out;
    for (auto const& w : list) {
      if (!w.is_string()) {
        throw ParseError("trace words must be strings");
      }
      out.push_back(parse_admissible(s, w.get<std::string>()).flatten());
    }
    return out;
  }

  Json trace_rows(SMachine const& s, ComputationTrace const& t) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.words.size(); ++i) {
      rows.push_back({{"step", i},
                      {"rule", i == 0 ? "" : s.rule_name(t.rules[i - 1])},
                      {"word", format_admissible(s, t.words[i])}});
    }
    return rows;
  }

  std::size_t hub_length(Presentation const& p) {
    std::size_t best = 0;
    for (auto const& r : p.relators()) {
      std::size_t k = 0;
      for (Letter x : r) {
        k += p.info(generator_of(x)).role == Role::k ? 1 : 0;
      }
      if (k == p.copies && k > 0) {
        best = std::max(best, r.size());
      }
    }
    return best;
  }

  Report summarize(std::string command, Presentation const& p) {
    Report r;
    r.command = std::move(command);
    std::map<std::string, std::size_t> roles;
    for (auto const& g : p.generators()) {
      ++roles[std::string(to_string(g.role))];
    }
    Json rows = Json::array();
    for (auto const& [role, count] : roles) {
      rows.push_back({{"role", role}, {"count", count}});
    }
    r.result = {{"source", p.source},
                {"N", p.copies},
                {"generators", p.generators().size()},
                {"relators", p.relators().size()},
                {"hub_length", hub_length(p)},
                {"rows", rows}};
    r.artifact = to_json(p);
    return r;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for S-machines, group presentations, areas and distortion"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", CGW_VERSION);

  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("-o,--output", g.output,
                 "Write the artifact (or the report, if there is none) here");
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();

  std::function<Report()> action;

  // Shared option storage; each run uses only its own subcommand's options.
  std::string path, path2, path3, word, input, uword, vword, trace_path;
  Budget      max_steps{64}, max_visited{100000}, max_area{32}, max_length{0};
  std::size_t copies = kDefaultCopies, m = 1, n = 3, max_len = 8, n_max = 4;
  std::size_t max_cosets = 100000, trials = 1000, max_factors = 6;
  std::optional<std::size_t> edges;
  std::string cert_out, pres_out;
  double      lambda = 1.0 / 50;
  FamilyOptions family_opts;
  std::vector<int> only;

  auto sub = [&](CLI::App* parent, std::string const& name, std::string const& what) {
    auto* c = parent->add_subcommand(name, what);
    c->fallthrough();
    return c;
  };
  auto search_budget = [&] {
    return SearchBudget{max_steps.get(g), max_visited.get(g)};
  };
  auto area_budget = [&] {
    return AreaBudget{max_area.value, max_visited.get(g), max_length.value};
  };
  auto note_area = [&](Report& r) {
    r.budgets = {{"max_area", max_area.value},
                 {"max_visited", max_visited.get(g)},
                 {"max_length", max_length.value}};
  };

  // ----- smachine -----
  auto* sm = sub(&app, "smachine", "S-machines (a Turing machine file is converted naively)");
  sm->require_subcommand(1);

  auto* sm_validate = sub(sm, "validate", "Check the machine and its rules");
  sm_validate->add_option("machine", path, "Machine JSON")->required();
  sm_validate->callback([&] {
    action = [&] {
      Report r;
      r.command = "smachine validate";
      auto s    = load_machine(path, r);
      Json rows = Json::array();
      for (auto const& v : validate_machine(s)) {
        rows.push_back({{"rule", v.rule ? s.rules[*v.rule].name : ""},
                        {"part", v.part ? Json(*v.part + 1) : Json()},
                        {"violation", describe(v, s)}});
      }
      r.status = rows.empty() ? "ok" : "fail";
      r.result = {{"segments", s.segments()},
                  {"rules", s.rules.size()},
                  {"violations", rows.size()},
                  {"rows", rows}};
      return r;
    };
  });

  auto* sm_accept = sub(sm, "accept", "Search for an accepting computation");
  sm_accept->add_option("machine", path, "Machine JSON")->required();
  sm_accept->add_option("--input", input, "Admissible word")->required();
  add_budget(sm_accept, "--max-steps", max_steps, "Longest computation searched");
  add_budget(sm_accept, "--max-visited", max_visited, "Words stored by the search");
  sm_accept->add_option("--certificate", cert_out,
                        "Write a certificate that K(input) = 1 in G_N(S)");
  sm_accept->add_option("--presentation", pres_out, "Write G_N(S)");
  sm_accept->add_option("--N", copies, "Copies in G_N(S)")->capture_default_str();
  sm_accept->callback([&] {
    action = [&] {
      Report r;
      r.command = "smachine accept";
      r.budgets = {{"max_steps", max_steps.get(g)}, {"max_visited", max_visited.get(g)}};
      auto s    = load_machine(path, r);
      auto w    = parse_admissible(s, input);
      r.inputs["input"] = format_admissible(s, w);
      auto res  = accepts(s, w, search_budget());
      r.status  = res.outcome == SearchOutcome::unknown_budget ? "unknown" : "ok";
      r.result  = {{"outcome", to_string(res.outcome)}, {"visited", res.visited}};
      if (res.trace) {
        auto st            = trace_stats(s, *res.trace);
        r.result["time"]   = st.time;
        r.result["space"]  = st.space;
        r.result["area"]   = st.area;
        r.result["rows"]   = trace_rows(s, *res.trace);
        if (!cert_out.empty() || !pres_out.empty()) {
          auto p = compile_gns(s, copies);
          auto c = certificate_from_smachine_trace(s, p, *res.trace);
          auto check = verify_certificate(c, p, gns_hub(s, p, w));
          r.result["certificate"] = {{"N", copies},
                                     {"d", c.d()},
                                     {"valid", check.valid()},
                                     {"defect", to_string(check.defect)}};
          if (!cert_out.empty()) {
            write_file(cert_out, certificate_json(c, p).dump(2) + "\n");
          }
          if (!pres_out.empty()) {
            write_file(pres_out, to_json(p).dump(2) + "\n");
          }
          if (!check.valid()) {
            r.status = "fail";
          }
        }
      }
      return r;
    };
  });

  auto* sm_stats = sub(sm, "stats", "Time, space and area of a computation");
  sm_stats->add_option("machine", path, "Machine JSON")->required();
  sm_stats->add_option("trace", trace_path,
                       "JSON list of words, or the report of smachine accept")
      ->required();
  sm_stats->callback([&] {
    action = [&] {
      Report r;
      r.command  = "smachine stats";
      auto s     = load_machine(path, r);
      auto tj    = load_json(trace_path, r, "trace");
      auto words = parse_from(trace_path, [&] { return read_trace_words(s, tj); });
      ComputationTrace t;
      for (auto const& w : words) {
        t.words.push_back(to_admissible(s, w));
      }
      auto closure = symmetric_closure(s);
      for (std::size_t i = 0; i + 1 < t.words.size(); ++i) {
        std::optional<RuleRef> found;
        for (auto const& rule : closure) {
          if (rule.apply(t.words[i]) == t.words[i + 1]) {
            found = rule.ref();
            break;
          }
        }
        if (!found) {
          throw std::invalid_argument("step " + std::to_string(i + 1)
                                      + " is not a rule application");
        }
        t.rules.push_back(*found);
      }
      auto st  = trace_stats(s, t);
      r.result = {{"time", st.time}, {"space", st.space}, {"area", st.area},
                  {"rows", trace_rows(s, t)}};
      return r;
    };
  });

  // ----- tm -----
  auto* tm = sub(&app, "tm", "Turing machines");
  tm->require_subcommand(1);

  auto* tm_run = sub(tm, "run", "Search for an accepting run");
  tm_run->add_option("machine", path, "Turing machine JSON")->required();
  tm_run->add_option("--input", input, "Configuration, e.g. \"a a q\"")->required();
  add_budget(tm_run, "--max-steps", max_steps, "Longest run searched");
  add_budget(tm_run, "--max-visited", max_visited, "Configurations stored");
  tm_run->callback([&] {
    action = [&] {
      Report r;
      r.command = "tm run";
      r.budgets = {{"max_steps", max_steps.get(g)}, {"max_visited", max_visited.get(g)}};
      auto t    = load_tm(path, r);
      auto c    = parse_configuration(t, input);
      r.inputs["input"] = format_configuration(t, c);
      auto res  = tm_accepts(t, c, search_budget());
      r.status  = res.outcome == SearchOutcome::unknown_budget ? "unknown" : "ok";
      r.result  = {{"outcome", to_string(res.outcome)}, {"visited", res.visited}};
      if (res.trace) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < res.trace->configurations.size(); ++i) {
          rows.push_back(
              {{"step", i},
               {"transition",
                i == 0 ? "" : t.transitions[res.trace->transitions[i - 1]].name},
               {"configuration", format_configuration(t, res.trace->configurations[i])}});
        }
        r.result["rows"] = rows;
      }
      return r;
    };
  });

  auto* tm_convert = sub(tm, "to-smachine", "Naive one-tape S-machine");
  tm_convert->add_option("machine", path, "Turing machine JSON")->required();
  tm_convert->callback([&] {
    action = [&] {
      Report r;
      r.command = "tm to-smachine";
      auto s    = naive_to_smachine(load_tm(path, r));
      Json rows = Json::array();
      for (auto const& rule : s.rules) {
        for (auto const& part : rule.parts) {
          rows.push_back({{"rule", rule.name},
                          {"U", format_word(part.lhs, s.alphabet)},
                          {"V", format_word(part.rhs, s.alphabet)}});
        }
      }
      r.result   = {{"rules", s.rules.size()}, {"rows", rows}};
      r.artifact = to_json(s);
      return r;
    };
  });

  // ----- compile -----
  auto* compile = sub(&app, "compile", "Build finite presentations");
  compile->require_subcommand(1);

  auto* c_gm = sub(compile, "gm", "G(M) of a Turing machine");
  c_gm->add_option("machine", path, "Turing machine JSON")->required();
  c_gm->add_option("--N", copies, "Copies")->capture_default_str()->check(CLI::PositiveNumber);
  c_gm->callback([&] {
    action = [&] {
      Report tmp;
      auto   t = load_tm(path, tmp);
      auto   r = summarize("compile gm", compile_gm(t, copies));
      r.inputs = tmp.inputs;
      return r;
    };
  });

  auto* c_gns = sub(compile, "gns", "G_N(S) of an S-machine");
  c_gns->add_option("machine", path, "Machine JSON")->required();
  c_gns->add_option("--N", copies, "Copies")->capture_default_str()->check(CLI::PositiveNumber);
  c_gns->callback([&] {
    action = [&] {
      Report tmp;
      auto   s = load_machine(path, tmp);
      auto   r = summarize("compile gns", compile_gns(s, copies));
      r.inputs = tmp.inputs;
      return r;
    };
  });

  auto* c_gmn = sub(compile, "gmn", "G_{m,n}");
  auto* c_hmn = sub(compile, "hmn", "H_{m,n}");
  for (auto* c : {c_gmn, c_hmn}) {
    c->add_option("--m", m, "Tape letters per copy")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--n", n, "State letters per copy")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--N", copies, "Copies")->capture_default_str()->check(CLI::PositiveNumber);
  }
  c_gmn->callback([&] {
    action = [&] {
      auto r   = summarize("compile gmn", compile_gmn(m, n, copies));
      r.inputs = {{"m", m}, {"n", n}, {"N", copies}};
      return r;
    };
  });
  c_hmn->callback([&] {
    action = [&] {
      auto r   = summarize("compile hmn", compile_hmn(compile_gmn(m, n, copies), m));
      r.inputs = {{"m", m}, {"n", n}, {"N", copies}};
      return r;
    };
  });

  // ----- area, dehn, certify -----
  auto* area = sub(&app, "area", "Area of a word by exhaustive search");
  area->add_option("presentation", path, "Presentation JSON")->required();
  area->add_option("word", word, "Word (\"<empty>\" for the empty word)")->required();
  add_budget(area, "--max-area", max_area, "Largest area searched", false);
  add_budget(area, "--max-visited", max_visited, "Cyclic words stored");
  area->add_option("--max-length", max_length.value,
                   "Skip cyclic words longer than this (0: no cap)")
      ->capture_default_str();
  area->callback([&] {
    action = [&] {
      Report r;
      r.command = "area";
      note_area(r);
      auto p   = load_presentation(path, r);
      auto w   = p.parse(word);
      r.inputs["word"] = p.format(w);
      auto res = area_oracle(p, w, area_budget());
      r.result = {{"word", p.format(res.word)},
                  {"area", res.area ? Json(*res.area) : Json()},
                  {"exhausted", res.exhausted},
                  {"visited", res.visited},
                  {"frontier_peak", res.frontier_peak}};
      if (res.certificate) {
        r.artifact              = certificate_json(*res.certificate, p);
        r.result["certificate"] = *r.artifact;
      } else {
        r.status = "unknown";
      }
      return r;
    };
  });

  auto* dehn = sub(&app, "dehn", "Largest area of trivial words by length");
  dehn->add_option("presentation", path, "Presentation JSON")->required();
  dehn->add_option("--max-len", max_len, "Longest word")->capture_default_str();
  add_budget(dehn, "--max-area", max_area, "Largest area searched per word", false);
  add_budget(dehn, "--max-visited", max_visited, "Words stored per search");
  dehn->callback([&] {
    action = [&] {
      Report r;
      r.command = "dehn";
      note_area(r);
      r.budgets["max_len"] = max_len;
      auto p = load_presentation(path, r);
      DehnBudget b{max_visited.get(g), area_budget()};
      Json rows = Json::array();
      for (auto const& row : dehn_sample(p, max_len, b)) {
        rows.push_back({{"n", row.n},
                        {"max_area", row.max_area},
                        {"words", row.words},
                        {"witness", p.format(row.witness)},
                        {"exact", row.exact}});
        if (!row.exact) {
          r.status = "unknown";
        }
      }
      r.result = {{"rows", rows}};
      return r;
    };
  });

  auto* certify = sub(&app, "certify", "Check a triviality certificate");
  certify->add_option("presentation", path, "Presentation JSON")->required();
  certify->add_option("word", word, "Word the certificate is for")->required();
  certify->add_option("certificate", path2, "Certificate JSON")->required();
  certify->add_option("--edges", edges, "Also require sum |u_i| <= 4 edges");
  certify->callback([&] {
    action = [&] {
      Report r;
      r.command = "certify";
      auto p    = load_presentation(path, r);
      auto w    = p.parse(word);
      r.inputs["word"] = p.format(w);
      auto cj   = load_json(path2, r, "certificate");
      auto c    = parse_from(path2, [&] { return certificate_from_json(cj, p); });
      auto chk  = verify_certificate(c, p, w, edges);
      r.status  = chk.valid() ? "ok" : "fail";
      r.result  = {{"valid", chk.valid()},
                   {"defect", to_string(chk.defect)},
                   {"index", chk.index ? Json(*chk.index) : Json()},
                   {"message", chk.message},
                   {"d", c.d()},
                   {"conjugator_length", conjugator_length(c)}};
      return r;
    };
  });

  // ----- equalizer -----
  auto* eq = sub(&app, "equalizer", "Equalizer subgroups of F(x) x F(y)");
  eq->require_subcommand(1);
  auto* eq_gen     = sub(eq, "gen", "List the generators");
  auto* eq_member  = sub(eq, "member", "Decide membership of (u, v)");
  auto* eq_express = sub(eq, "express", "Write (u, v) over the generators");
  auto* eq_distort = sub(eq, "distort", "Generator length against |u| + |v|");
  for (auto* c : {eq_gen, eq_member, eq_express, eq_distort}) {
    c->add_option("spec", path, "Equalizer spec JSON")->required();
    add_budget(c, "--max-area", max_area, "Largest area searched", false);
    add_budget(c, "--max-visited", max_visited, "Cyclic words stored");
  }
  for (auto* c : {eq_member, eq_express}) {
    c->add_option("--u", uword, "Word over the x's")->required();
    c->add_option("--v", vword, "Word over the y's")->required();
  }
  for (auto* c : {eq_member, eq_distort}) {
    c->add_option("--max-cosets", max_cosets,
                  "Coset enumeration limit when looking for a finite model")
        ->capture_default_str();
  }
  eq_distort->add_option("--n-max", n_max, "Largest |u| + |v|")->capture_default_str();

  auto read_pair = [&](EqualizerSpec const& spec, Report& r) {
    PairElement e{parse_word(uword, spec.x), spec.target.parse(vword)};
    r.inputs["u"] = format_word(e.u, spec.x);
    r.inputs["v"] = spec.target.format(e.v);
    return e;
  };
  eq_gen->callback([&] {
    action = [&] {
      Report r;
      r.command = "equalizer gen";
      note_area(r);
      auto spec = load_spec(path, r);
      Json rows = Json::array();
      auto gens = equalizer_generators(spec, area_budget());
      for (std::size_t i = 0; i < gens.size(); ++i) {
        rows.push_back({{"generator", "g" + std::to_string(i + 1)},
                        {"kind", to_string(gens[i].kind)},
                        {"source", gens[i].source + 1},
                        {"u", format_word(gens[i].pair.u, spec.x)},
                        {"v", spec.target.format(gens[i].pair.v)}});
      }
      r.result = {{"generators", gens.size()}, {"rows", rows}};
      return r;
    };
  });
  eq_member->callback([&] {
    action = [&] {
      Report r;
      r.command = "equalizer member";
      note_area(r);
      r.budgets["max_cosets"] = max_cosets;
      auto spec  = load_spec(path, r);
      auto e     = read_pair(spec, r);
      auto model = todd_coxeter(spec.target, max_cosets);
      auto ans   = membership(spec, e, area_budget(), model ? &*model : nullptr);
      r.status   = ans == Membership::unknown ? "unknown" : "ok";
      r.result   = {{"membership", to_string(ans)},
                    {"finite_model", model ? Json(model->order()) : Json()}};
      return r;
    };
  });
  eq_express->callback([&] {
    action = [&] {
      Report r;
      r.command = "equalizer express";
      note_area(r);
      auto spec = load_spec(path, r);
      auto e    = read_pair(spec, r);
      auto gens = equalizer_generators(spec, area_budget());
      auto ex   = express(spec, gens, e, area_budget());
      r.result  = {{"word", ex.word ? Json(generator_word(*ex.word)) : Json()},
                   {"length", ex.word ? Json(ex.word->size()) : Json()},
                   {"residual", spec.target.format(ex.residual)},
                   {"p", ex.p},
                   {"d", ex.d},
                   {"c1", ex.c1},
                   {"c2", ex.c2},
                   {"bound", ex.bound}};
      if (!ex.word) {
        r.status = "unknown";
      } else if (evaluate(gens, *ex.word) != e) {
        r.status = "fail";
      }
      return r;
    };
  });
  eq_distort->callback([&] {
    action = [&] {
      Report r;
      r.command = "equalizer distort";
      note_area(r);
      r.budgets["max_cosets"] = max_cosets;
      auto spec  = load_spec(path, r);
      auto model = todd_coxeter(spec.target, max_cosets);
      Json rows  = Json::array();
      for (auto const& row :
           distortion_sample(spec, n_max, area_budget(), model ? &*model : nullptr)) {
        rows.push_back({{"n", row.n},
                        {"members", row.members},
                        {"max_length", row.max_length},
                        {"max_express", row.max_express},
                        {"exact", row.exact}});
        if (!row.exact) {
          r.status = "unknown";
        }
      }
      r.result = {{"rows", rows}};
      return r;
    };
  });

  // ----- heisenberg -----
  auto* heis = sub(&app, "heisenberg", "c^(n^2) = [a^n, b^n] and |c^(n^2)|");
  heis->add_option("--n-max", n_max, "Largest n")->capture_default_str();
  add_budget(heis, "--max-area", max_area, "Largest area searched", false);
  add_budget(heis, "--max-visited", max_visited, "Cyclic words stored");
  heis->callback([&] {
    action = [&] {
      Report r;
      r.command = "heisenberg";
      note_area(r);
      r.inputs  = {{"n_max", n_max}};
      Json rows = Json::array();
      for (auto const& row : heisenberg_demo(n_max, area_budget())) {
        rows.push_back({{"n", row.n},
                        {"length", row.length ? Json(*row.length) : Json()},
                        {"upper", row.upper},
                        {"certified", row.certified},
                        {"area", row.area ? Json(*row.area) : Json()},
                        {"method", row.method}});
        if (!row.certified || !row.length) {
          r.status = "unknown";
        }
      }
      r.result = {{"rows", rows}};
      return r;
    };
  });

  // ----- family -----
  auto* fam = sub(&app, "family", "Word families with unique long subwords");
  fam->require_subcommand(1);
  auto* fam_gen    = sub(fam, "gen", "Generate words of prescribed lengths");
  auto* fam_verify = sub(fam, "verify", "Check that long subwords occur once");
  auto* fam_bound  = sub(fam, "bound", "Lower bound on reduced products");
  for (auto* c : {fam_gen, fam_verify, fam_bound}) {
    c->add_option("--lambda", lambda, "Subword threshold")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
  }
  fam_gen->add_option("--lengths", path, "JSON map key -> length")->required();
  fam_gen->add_option("--min-length", family_opts.min_length, "Shortest allowed length")
      ->capture_default_str();
  fam_gen->add_option("--window", family_opts.window, "Shortest window kept unique")
      ->capture_default_str();
  fam_gen->add_option("--max-redraws", family_opts.max_redraws, "Redraw limit")
      ->capture_default_str();
  fam_verify->add_option("family", path, "Family JSON")->required();
  fam_bound->add_option("family", path, "Family JSON")->required();
  fam_bound->add_option("--trials", trials, "Random products")->capture_default_str();
  fam_bound->add_option("--max-factors", max_factors, "Factors per product")
      ->capture_default_str();

  fam_gen->callback([&] {
    action = [&] {
      Report r;
      r.command = "family gen";
      auto lj   = load_json(path, r, "lengths");
      auto lens = parse_from(path, [&] { return lengths_from_json(lj); });
      family_opts.lambda = lambda;
      family_opts.seed   = g.seed;
      r.budgets = {{"max_redraws", family_opts.max_redraws}};
      auto f    = generate_family(lens, family_opts);
      Json rows = Json::array();
      for (std::size_t i = 0; i < f.keys.size(); ++i) {
        rows.push_back({{"key", f.keys[i]},
                        {"length", lens[i].second},
                        {"word_length", f.words[i].size()}});
      }
      r.result   = {{"words", f.words.size()}, {"lambda", f.lambda},
                    {"stretch", f.stretch}, {"rows", rows}};
      r.artifact = to_json(f);
      return r;
    };
  });
  fam_verify->callback([&] {
    action = [&] {
      Report r;
      r.command = "family verify";
      auto f    = load_family(path, lambda, r);
      auto res  = verify_star_star(f);
      r.status  = res.pass() ? "ok" : "fail";
      r.result  = {{"words", f.words.size()}, {"lambda", lambda},
                   {"defect", to_string(res.defect)}};
      if (!res.pass()) {
        r.result["g"]         = f.keys[res.g];
        r.result["g_pos"]     = res.g_pos;
        r.result["h"]         = f.keys[res.h];
        r.result["h_pos"]     = res.h_pos;
        r.result["h_inverse"] = res.h_inverse;
        r.result["subword"]   = format_word(res.y, family_alphabet());
      }
      return r;
    };
  });
  fam_bound->callback([&] {
    action = [&] {
      Report r;
      r.command = "family bound";
      r.budgets = {{"trials", trials}, {"max_factors", max_factors}};
      auto f    = load_family(path, lambda, r);
      auto rep  = product_lower_bound_check(f.words, lambda, trials, g.seed, max_factors);
      r.status  = rep.violations == 0 ? "ok" : "fail";
      Json worst = Json::array();
      for (auto [i, inv] : rep.worst) {
        worst.push_back(f.keys[i] + (inv ? "^-1" : ""));
      }
      r.result = {{"trials", rep.trials},
                  {"threshold", rep.threshold},
                  {"min_ratio", rep.min_ratio},
                  {"violations", rep.violations},
                  {"worst", worst}};
      return r;
    };
  });

  // ----- selftest -----
  auto* self = sub(&app, "selftest", "Run the acceptance criteria");
  self->add_option("--only", only, "Criterion ids")->check(CLI::Range(1, kCriteria));
  self->callback([&] {
    action = [&] {
      Report r;
      r.command = "selftest";
      AcceptanceOptions opts{g.scale, g.seed};
      std::vector<int>  ids = only;
      if (ids.empty()) {
        for (int i = 1; i <= kCriteria; ++i) {
          ids.push_back(i);
        }
      }
      Json rows  = Json::array();
      bool fail  = false;
      bool maybe = false;
      for (int id : ids) {
        auto res = run_criterion(id, opts);
        std::cerr << format_line(res) << "\n";
        fail  = fail || res.status == CriterionStatus::fail;
        maybe = maybe || res.status == CriterionStatus::unknown;
        rows.push_back({{"id", res.id},
                        {"name", res.name},
                        {"status", to_string(res.status)},
                        {"seconds", res.seconds},
                        {"limit_seconds", res.limit_seconds},
                        {"detail", res.detail}});
      }
      r.status = fail ? "fail" : maybe ? "unknown" : "ok";
      r.result = {{"criteria", rows.size()}, {"rows", rows}};
      return r;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    g.scale  = budget_scale_from_env();
    auto rep = action();
    emit(rep, g);
    return exit_code(rep.status);
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (WordError const& e) {
    std::cerr << "bad word: " << e.what() << "\n";
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return exit_error;
}
