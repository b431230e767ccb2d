#include "cgw/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cgw/catalog.hpp"
#include "cgw/distortion.hpp"
#include "cgw/length_embed.hpp"
#include "cgw/presentation.hpp"
#include "cgw/smachine.hpp"
#include "cgw/turing.hpp"
#include "cgw/word_problem.hpp"

namespace cgw {

  std::string_view to_string(CriterionStatus s) {
    switch (s) {
      case CriterionStatus::pass:
        return "PASS";
      case CriterionStatus::fail:
        return "FAIL";
      case CriterionStatus::unknown:
        return "UNKNOWN";
    }
    return "?";
  }

  double budget_scale_from_env() {
    char const* text = std::getenv("CGW_BUDGET_SCALE");
    if (text == nullptr || *text == '\0') {
      return 1.0;
    }
    char*  end   = nullptr;
    double scale = std::strtod(text, &end);
    if (end == text || *end != '\0' || !(scale > 0) || !std::isfinite(scale)) {
      throw std::invalid_argument(std::string("CGW_BUDGET_SCALE is not a positive number: ")
                                  + text);
    }
    return scale;
  }

  namespace {

    using Rng = std::mt19937_64;

    struct Outcome {
      CriterionStatus status = CriterionStatus::pass;
      std::string     detail;
    };

    Outcome pass(std::string detail) { return {CriterionStatus::pass, std::move(detail)}; }
    Outcome fail(std::string detail) { return {CriterionStatus::fail, std::move(detail)}; }
    Outcome unknown(std::string detail) {
      return {CriterionStatus::unknown, std::move(detail)};
    }

    std::size_t scaled(std::size_t n, double scale) {
      return std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(n) * scale));
    }

    std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    }

    bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

    // Reduced word of the given length over the listed generators.
    Word random_word(Rng& rng, std::vector<std::size_t> const& gens, std::size_t n) {
      Word w;
      if (gens.empty()) {
        return w;
      }
      while (w.size() < n) {
        Letter x = make_letter(gens[uniform(rng, 0, gens.size() - 1)], coin(rng, 0.5));
        if (!w.empty() && w.back() == -x) {
          continue;
        }
        w.push_back(x);
      }
      return w;
    }

    std::vector<std::size_t> all_generators(std::size_t n) {
      std::vector<std::size_t> out(n);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = i;
      }
      return out;
    }

    // 1. Counterexample machine.
    Outcome counterexample(AcceptanceOptions const& o) {
      auto         tm = counterexample_tm();
      SearchBudget budget{64, scaled(100000, o.budget_scale)};
      auto         q  = parse_configuration(tm, "q");
      auto         r  = tm_accepts(tm, q, budget);
      if (r.outcome == SearchOutcome::unknown_budget) {
        return unknown("TM search on q ran out of budget");
      }
      if (r.outcome != SearchOutcome::rejected_exhaustive) {
        return fail("TM accepts q");
      }
      for (std::size_t m = 1; m <= 4; ++m) {
        std::string text;
        for (std::size_t i = 0; i < m; ++i) {
          text += "a ";
        }
        auto res = tm_accepts(tm, parse_configuration(tm, text + "q"), budget);
        if (res.outcome != SearchOutcome::accepted) {
          return fail("TM does not accept a^" + std::to_string(m) + " q ("
                      + std::string(to_string(res.outcome)) + ")");
        }
      }
      auto s   = naive_to_smachine(tm);
      auto w   = configuration_to_admissible(s, tm, q);
      auto res = accepts(s, w, budget);
      if (res.outcome != SearchOutcome::accepted) {
        return fail("S-machine does not accept q ("
                    + std::string(to_string(res.outcome)) + ")");
      }
      if (res.trace->rules.size() != 2) {
        return fail("S-machine accepts q in " + std::to_string(res.trace->rules.size())
                    + " steps, expected 2");
      }
      std::string rules;
      for (auto ref : res.trace->rules) {
        rules += (rules.empty() ? "" : ", ") + s.rule_name(ref);
      }
      return pass("TM rejects q exhaustively (" + std::to_string(r.visited)
                  + " configurations), accepts a^m q for m = 1..4; S-machine accepts q via "
                  + rules);
    }

    // 2. Z^2 areas.
    Outcome z2_areas(AcceptanceOptions const& o) {
      auto                p = z2_presentation();
      AreaBudget          budget{32, scaled(1'000'000, o.budget_scale), 0};
      std::ostringstream  out;
      std::pair<char const*, std::size_t> const cases[] = {{"a b a^-1 b^-1", 1},
                                                           {"a a b b a^-1 a^-1 b^-1 b^-1", 4}};
      for (auto [text, expected] : cases) {
        Word w   = p.parse(text);
        auto res = area_oracle(p, w, budget);
        if (!res.area) {
          return res.exhausted ? fail(std::string("no certificate for ") + text)
                               : unknown(std::string("area search for ") + text
                                         + " ran out of budget");
        }
        if (*res.area != expected) {
          return fail(std::string("area(") + text + ") = " + std::to_string(*res.area)
                      + ", expected " + std::to_string(expected));
        }
        auto check = verify_certificate(*res.certificate, p, w);
        if (!check.valid()) {
          return fail(std::string("oracle certificate rejected: ") + check.message);
        }
        out << "area(" << text << ") = " << expected << " ";
      }
      Letter a = p.letter("a"), b = p.letter("b");
      for (long n = 3; n <= 4; ++n) {
        Word              w = commutator(power(Word{a}, n), power(Word{b}, n));
        DerivationBuilder builder(p, w);
        collect(builder, [&](Letter x, Letter y) -> std::optional<Word> {
          if (generator_of(x) == generator_of(b) && generator_of(y) == generator_of(a)) {
            return Word{y, x};
          }
          return std::nullopt;
        });
        auto cert  = builder.finish();
        auto check = verify_certificate(cert, p, w);
        if (!check.valid()) {
          return fail("collection certificate for n = " + std::to_string(n)
                      + " rejected: " + check.message);
        }
        if (cert.d() > static_cast<std::size_t>(n * n)) {
          return fail("collection certificate for n = " + std::to_string(n) + " has "
                      + std::to_string(cert.d()) + " factors");
        }
        out << "d(" << n << ") = " << cert.d() << " ";
      }
      return pass(out.str());
    }

    // 3. Heisenberg group.
    Outcome heisenberg(AcceptanceOptions const& o) {
      auto rows = heisenberg_demo(2, AreaBudget{32, scaled(2'000'000, o.budget_scale), 14});
      std::ostringstream out;
      for (auto const& row : rows) {
        if (!row.certified) {
          return fail("c^(n^2) [a^n, b^n]^-1 not certified for n = " + std::to_string(row.n));
        }
        if (!row.length || *row.length > row.upper) {
          return fail("|c^" + std::to_string(row.n * row.n) + "| exceeds 4n for n = "
                      + std::to_string(row.n));
        }
        out << "n=" << row.n << ": |c^" << row.n * row.n << "| = " << *row.length << " <= "
            << row.upper << " (" << row.method << ") ";
      }
      return pass(out.str());
    }

    // 4. Hub and presentation arithmetic.
    Outcome hub_arithmetic(AcceptanceOptions const&) {
      std::ostringstream out;
      Alphabet           base{"q_1", "q_2", "q_3"};
      Word               w = parse_word("q_1 q_2 q_3", base);
      for (std::size_t N : {std::size_t{2}, std::size_t{28}}) {
        Alphabet target;
        auto     hub = hub_word(w, base, N, target);
        if (hub.word.size() != 4 * N) {
          return fail("|K(q_1 q_2 q_3)| = " + std::to_string(hub.word.size()) + " for N = "
                      + std::to_string(N));
        }
        auto p = compile_gmn(1, 3, N);
        if (p.relators().back().size() != 4 * N) {
          return fail("hub relator of G_{1,3} has length "
                      + std::to_string(p.relators().back().size()));
        }
        out << "|K| = " << 4 * N << " (N=" << N << ") ";
      }
      auto        p    = compile_gmn(1, 3, 2);
      std::size_t gens = 2 * (1 + 3 + 1) + 1, rels = 2 * (3 + 1 + 1) + 1;
      if (p.alphabet().size() != gens || p.relators().size() != rels) {
        return fail("G_{1,3} with N = 2 has " + std::to_string(p.alphabet().size())
                    + " generators and " + std::to_string(p.relators().size())
                    + " relators, expected 11 / 11");
      }
      out << "counts " << gens << " / " << rels << " ";
      for (std::size_t N : {std::size_t{2}, std::size_t{3}, std::size_t{28}}) {
        if (!(shape_of(compile_gns(gmn_machine(1, 3), N)) == shape_of(compile_gmn(1, 3, N)))) {
          return fail("G_N(S) of the G_{1,3} machine differs from G_{1,3} for N = "
                      + std::to_string(N));
        }
      }
      return pass(out.str() + "G_N(S) = G_{1,3} for N = 2, 3, 28");
    }

    // 5. K(q) = 1 in G(M).
    Outcome kq_triviality(AcceptanceOptions const& o) {
      auto tm = counterexample_tm();
      auto gm = compile_gm(tm, 2);
      Word kq = gm.parse("k_1 q#1 k_2 q#2");
      auto res = area_oracle(gm, kq, AreaBudget{16, scaled(2'000'000, o.budget_scale), 10});
      if (!res.certificate) {
        return unknown("area oracle found no certificate for K(q) within budget ("
                       + std::to_string(res.visited) + " nodes)");
      }
      auto check = verify_certificate(*res.certificate, gm, kq);
      if (!check.valid()) {
        return fail("oracle certificate rejected: " + check.message);
      }

      auto s     = naive_to_smachine(tm);
      auto start = configuration_to_admissible(s, tm, parse_configuration(tm, "q"));
      auto run   = accepts(s, start, SearchBudget{64, scaled(100000, o.budget_scale)});
      if (run.outcome != SearchOutcome::accepted) {
        return fail("S-machine does not accept q");
      }
      auto gns   = compile_gns(s, 2);
      auto trace = certificate_from_smachine_trace(s, gns, *run.trace);
      auto c2    = verify_certificate(trace, gns, gns_hub(s, gns, start));
      if (!c2.valid()) {
        return fail("trace certificate rejected in G_N(S): " + c2.message);
      }
      auto moved = translate_certificate(trace, gns, gm,
                                         AreaBudget{12, scaled(200000, o.budget_scale), 0});
      auto c3    = verify_certificate(moved, gm, kq);
      if (!c3.valid()) {
        return fail("trace certificate rejected in G(M): " + c3.message);
      }
      return pass("oracle area " + std::to_string(*res.area) + " ("
                  + std::to_string(res.visited) + " nodes); trace certificate d = "
                  + std::to_string(trace.d()) + " in G_N(S), d = " + std::to_string(moved.d())
                  + " in G(M)");
    }

    // 6. Certificate semantics.
    Outcome certificates(AcceptanceOptions const& o) {
      Rng                       rng(o.seed);
      std::vector<Presentation> ps{z2_presentation(), heisenberg_presentation(),
                                   cyclic_presentation(4), compile_gmn(1, 2, 2)};
      std::vector<RelatorClosure> closures;
      for (auto const& p : ps) {
        closures.emplace_back(p);
      }
      std::size_t rejected = 0;
      for (std::size_t trial = 0; trial < 200; ++trial) {
        std::size_t pi   = trial % ps.size();
        auto const& p    = ps[pi];
        auto const& cl   = closures[pi];
        auto        gens = all_generators(p.alphabet().size());
        std::vector<ConjugateFactor> factors;
        std::size_t                  d = uniform(rng, 1, 6);
        for (std::size_t i = 0; i < d; ++i) {
          factors.push_back({random_word(rng, gens, uniform(rng, 0, 5)),
                             cl.words()[uniform(rng, 0, cl.words().size() - 1)]});
        }
        auto cert = certificate_from_factors(factors);
        Word w    = evaluate(cert);
        auto ok   = verify_certificate(cert, cl, w);
        if (!ok.valid()) {
          return fail("valid certificate " + std::to_string(trial) + " rejected: " + ok.message);
        }

        Letter x = make_letter(gens[uniform(rng, 0, gens.size() - 1)], coin(rng, 0.5));
        auto   bad_u = cert;
        auto   i     = uniform(rng, 0, cert.d());
        bad_u.u[i]   = reduce(concat(bad_u.u[i], Word{x}));
        auto bad_r   = cert;
        auto j       = uniform(rng, 0, cert.d() - 1);
        bad_r.r[j]   = Word{x};
        auto bad_c   = cert;
        bad_c.u.back() = reduce(concat(bad_c.u.back(), Word{x}));
        Word w2      = reduce(concat(w, Word{x}));

        struct Case {
          char const*                 what;
          TrivialityCertificate const& c;
          Word const&                 word;
          CertificateDefect           expected;
          std::optional<std::size_t>  index;
        };
        Case const cases[] = {
            {"corrupt u_i", bad_u, w, CertificateDefect::product_mismatch, std::nullopt},
            {"non-relator r_i", bad_r, w, CertificateDefect::not_a_relator, j},
            {"broken u-product", bad_c, w2, CertificateDefect::conjugators_nontrivial,
             std::nullopt},
        };
        for (auto const& c : cases) {
          auto check = verify_certificate(c.c, cl, c.word);
          if (check.defect != c.expected || (c.index && check.index != c.index)) {
            return fail(std::string(c.what) + " in certificate " + std::to_string(trial)
                        + " reported as " + std::string(to_string(check.defect)) + ", expected "
                        + std::string(to_string(c.expected)));
          }
          ++rejected;
        }
      }
      return pass("200 certificates verify; " + std::to_string(rejected)
                  + " mutations rejected with the expected reason");
    }

    // 7. Z/3 equalizer.
    Outcome equalizer(AcceptanceOptions const& o) {
      auto       spec = z3_equalizer_spec();
      AreaBudget budget{12, scaled(200000, o.budget_scale), 0};
      auto       model = todd_coxeter(spec.target);
      if (!model || model->order() != 3) {
        return fail("coset enumeration of Z/3 failed");
      }
      auto gens  = equalizer_generators(spec, budget);
      auto words = all_reduced_words(1, 6);
      auto sum   = [](Word const& w) {
        long s = 0;
        for (Letter x : w) {
          s += is_inverse_letter(x) ? -1 : 1;
        }
        return s;
      };
      std::size_t pairs = 0, members = 0, unknowns = 0;
      for (auto const& u : words) {
        for (auto const& v : words) {
          if (u.size() + v.size() > 6) {
            continue;
          }
          ++pairs;
          PairElement p{u, v};
          // Direct evaluation in Z/3: phi(x) = y.
          bool member = ((sum(u) - sum(v)) % 3 + 3) % 3 == 0;
          auto exact  = membership(spec, p, budget, &*model);
          if (exact != (member ? Membership::in : Membership::out)) {
            return fail("membership with the finite model disagrees on (" + format_word(u, spec.x)
                        + ", " + spec.target.format(v) + ")");
          }
          auto blind = membership(spec, p, budget);
          if (blind == Membership::out || (!member && blind == Membership::in)) {
            return fail("certificate membership is wrong on (" + format_word(u, spec.x) + ", "
                        + spec.target.format(v) + ")");
          }
          if (member && blind == Membership::unknown) {
            ++unknowns;
          }
          if (!member) {
            continue;
          }
          ++members;
          auto e = express(spec, gens, p, budget);
          if (!e.word) {
            ++unknowns;
            continue;
          }
          if (!(evaluate(gens, *e.word) == p)) {
            return fail("express output does not evaluate to (" + format_word(u, spec.x) + ", "
                        + spec.target.format(v) + ")");
          }
        }
      }
      for (long k = 1; k <= 2; ++k) {
        PairElement target{Word{}, power(spec.target.parse("y"), 3 * k)};
        auto        need = min_kernel_factors(gens, target, 8);
        if (!need || *need < static_cast<std::size_t>(k)) {
          return fail("(1, y^" + std::to_string(3 * k) + ") needs "
                      + (need ? std::to_string(*need) : std::string("no word")) + " kernel factors");
        }
      }
      if (unknowns > 0) {
        return unknown(std::to_string(unknowns) + " members could not be certified within budget");
      }
      return pass(std::to_string(pairs) + " pairs agree (" + std::to_string(members)
                  + " members, all expressed); kernel factors for (1, y^3k) >= k for k = 1, 2");
    }

    // Random machine with 1..3 tape segments and 1..3 rules.
    SMachine random_machine(Rng& rng) {
      SMachine    m;
      std::size_t k = uniform(rng, 1, 3);
      for (std::size_t c = 0; c <= k; ++c) {
        std::vector<std::size_t> cls;
        for (std::size_t j = uniform(rng, 1, 2); j > 0; --j) {
          cls.push_back(m.alphabet.add("q" + std::to_string(c) + "_" + std::to_string(j)));
        }
        m.state_classes.push_back(cls);
      }
      for (std::size_t t = 0; t < k; ++t) {
        std::vector<std::size_t> y;
        for (std::size_t j = uniform(rng, 1, 2); j > 0; --j) {
          y.push_back(m.alphabet.add("a" + std::to_string(t) + "_" + std::to_string(j)));
        }
        m.tape_alphabets.push_back(y);
      }
      auto side = [&](std::size_t l, std::size_t r) {
        Word w;
        if (l > 0) {
          w.append(random_word(rng, m.tape_alphabets[l - 1], uniform(rng, 0, 2)));
        }
        for (std::size_t c = l; c <= r; ++c) {
          auto const& cls = m.state_classes[c];
          w.push_back(make_letter(cls[uniform(rng, 0, cls.size() - 1)]));
          if (c < r) {
            w.append(random_word(rng, m.tape_alphabets[c], uniform(rng, 0, 2)));
          }
        }
        if (r < k) {
          w.append(random_word(rng, m.tape_alphabets[r], uniform(rng, 0, 2)));
        }
        return w;
      };
      for (std::size_t i = uniform(rng, 1, 3); i > 0; --i) {
        SRule rule{"r_" + std::to_string(m.rules.size() + 1), {}};
        while (rule.parts.empty()) {
          for (std::size_t c = 0; c <= k; ++c) {
            if (!coin(rng, 0.6)) {
              continue;
            }
            std::size_t r = c < k && coin(rng, 0.25) ? c + 1 : c;
            rule.parts.push_back({side(c, r), side(c, r)});
            c = r + 1;
          }
        }
        m.rules.push_back(rule);
      }
      for (std::size_t c = 0; c <= k; ++c) {
        m.accept.states.push_back(m.state_classes[c][0]);
        if (c < k) {
          m.accept.tapes.emplace_back();
        }
      }
      return m;
    }

    // 8. Reversibility.
    Outcome reversibility(AcceptanceOptions const& o) {
      Rng         rng(o.seed + 8);
      std::size_t done = 0, attempts = 0, cancelled = 0;
      while (done < 500) {
        if (++attempts > 200000) {
          return unknown("only " + std::to_string(done) + " applicable triples generated");
        }
        auto m = random_machine(rng);
        if (!validate_machine(m).empty()) {
          continue;
        }
        SRule rule = m.rules[uniform(rng, 0, m.rules.size() - 1)];
        if (coin(rng, 0.5)) {
          rule = invert_rule(m, rule);
        }
        AdmissibleWord w;
        for (std::size_t c = 0; c < m.state_classes.size(); ++c) {
          auto const& cls = m.state_classes[c];
          w.states.push_back(cls[uniform(rng, 0, cls.size() - 1)]);
          if (c < m.segments()) {
            w.tapes.push_back(random_word(rng, m.tape_alphabets[c], uniform(rng, 0, 4)));
          }
        }
        if (coin(rng, 0.8)) {
          CompiledRule compiled(m, rule, RuleRef{});
          for (auto const& s : compiled.lhs()) {
            for (std::size_t i = 0; i < s.states.size(); ++i) {
              w.states[s.first_class + i] = s.states[i];
            }
            for (std::size_t i = 0; i < s.inner.size(); ++i) {
              w.tapes[s.first_class + i] = s.inner[i];
            }
          }
        }
        auto w1 = apply_rule(m, w, rule);
        if (!w1) {
          continue;
        }
        ++done;
        std::size_t before = 0, after = 0;
        for (auto const& t : w.tapes) {
          before += t.size();
        }
        for (auto const& t : w1->tapes) {
          after += t.size();
        }
        for (auto const& p : rule.parts) {
          after += p.lhs.size();
          before += p.rhs.size();
        }
        cancelled += after < before ? 1 : 0;
        auto w2 = apply_rule(m, *w1, invert_rule(m, rule));
        if (!w2 || !(*w2 == w)) {
          return fail("triple " + std::to_string(done) + ": rule " + rule.name + " on "
                      + format_admissible(m, w) + " gives " + format_admissible(m, *w1)
                      + "; the inverse "
                      + (w2 ? "gives " + format_admissible(m, *w2) : std::string("does not apply")));
        }
      }
      return pass("500 triples restored (" + std::to_string(cancelled)
                  + " with cancellation, " + std::to_string(attempts) + " candidates)");
    }

    // Overwrites w[at, at + y.size()) with y.
    Word overwrite(Word const& w, std::size_t at, Word const& y) {
      std::vector<Letter> letters = w.letters();
      std::copy(y.begin(), y.end(), letters.begin() + static_cast<long>(at));
      return Word(std::move(letters));
    }

    // 9. Condition (**).
    Outcome star_star(AcceptanceOptions const& o) {
      std::vector<std::pair<std::string, std::size_t>> lengths;
      for (std::size_t i = 0; i < 100; ++i) {
        lengths.emplace_back("g_" + std::to_string(i + 1), 100 + i);
      }
      FamilyOptions options;
      options.seed = o.seed;
      auto family  = generate_family(lengths, options);
      auto r       = verify_star_star(family);
      if (!r.pass()) {
        return fail("generated family fails: " + std::string(to_string(r.defect)));
      }
      Rng rng(o.seed + 9);
      for (std::size_t trial = 0; trial < 20; ++trial) {
        auto        words = family.words;
        std::size_t g     = uniform(rng, 0, words.size() - 1);
        std::size_t h     = uniform(rng, 0, words.size() - 2);
        h += h >= g ? 1 : 0;
        std::size_t    t = star_star_window(words[g].size(), family.lambda);
        StarStarDefect expected;
        Word           y;
        std::size_t    at = 0;
        switch (trial % 3) {
          case 0:  // duplicated subword
            y        = words[g].subword(0, t);
            at       = uniform(rng, t, words[g].size() - t);
            expected = StarStarDefect::repeated;
            break;
          case 1:  // copy of a subword of another member
            y        = words[h].subword(uniform(rng, 0, words[h].size() - t), t);
            at       = uniform(rng, 0, words[g].size() - t);
            expected = StarStarDefect::in_other;
            break;
          default:  // inverse of its own subword
            y        = inverse(words[g].subword(0, t));
            at       = uniform(rng, t, words[g].size() - t);
            expected = StarStarDefect::in_own_inverse;
            break;
        }
        words[g]  = overwrite(words[g], at, y);
        auto res  = verify_star_star(words, family.lambda);
        auto name = "mutation " + std::to_string(trial) + " (" + std::string(to_string(expected)) + ")";
        if (res.defect != expected) {
          return fail(name + " reported " + std::string(to_string(res.defect)));
        }
        bool involved = res.g == g || (res.h == g && expected != StarStarDefect::in_other);
        if (expected == StarStarDefect::in_other) {
          involved = (res.g == g && res.h == h) || (res.g == h && res.h == g);
        }
        Word const& other = words[res.h];
        Word        host  = res.h_inverse ? inverse(other) : other;
        bool witnessed    = res.g_pos + res.y.size() <= words[res.g].size()
                         && res.h_pos + res.y.size() <= host.size()
                         && words[res.g].subword(res.g_pos, res.y.size()) == res.y
                         && host.subword(res.h_pos, res.y.size()) == res.y
                         && res.y.size() >= star_star_window(words[res.g].size(), family.lambda);
        if (!involved || !witnessed) {
          return fail(name + " has a wrong witness");
        }
      }
      auto bound = product_lower_bound_check(family.words, family.lambda, 1000, o.seed);
      if (bound.min_ratio < 1 - 2 * family.lambda - 1e-12 || bound.violations > 0) {
        return fail("min product ratio " + std::to_string(bound.min_ratio));
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4f", bound.min_ratio);
      return pass("family of 100 passes (stretch " + std::to_string(static_cast<int>(family.stretch))
                  + "); 20 mutations caught with witnesses; min ratio " + buf + " >= 0.96");
    }

    // 10. Length-function axioms.
    Outcome axioms(AcceptanceOptions const&) {
      std::size_t planted = 0;
      // (D1): make one element longer than its inverse.
      for (std::string key : {"x_1", "x_1 x_2", "x_2^-1 x_1^-1 x_2"}) {
        auto s = free_group_sample(2, 3);
        s.length.at(key) += 1;
        auto report = check_axioms(s);
        bool found  = false;
        for (auto const& v : report.violations) {
          found = found || (v.clause == AxiomClause::symmetry && (v.g == key || s.invert(v.g) == key));
        }
        if (!found) {
          return fail("planted (D1) violation at " + key + " not detected");
        }
        ++planted;
      }
      // (D2): make a product (and its inverse) too long.
      for (std::string key : {"x_1 x_2", "x_1 x_1", "x_2 x_1^-1"}) {
        auto s = free_group_sample(2, 3);
        s.length.at(key) += 5;
        s.length.at(s.invert(key)) += 5;
        auto report = check_axioms(s);
        bool found  = false;
        for (auto const& v : report.violations) {
          found = found
                  || (v.clause == AxiomClause::subadditivity && s.multiply(v.g, v.h) == key);
        }
        if (!found) {
          return fail("planted (D2) violation at " + key + " not detected");
        }
        ++planted;
      }
      auto square = check_axioms(cyclic_sample(6, [](long i) { return std::size_t(i * i); }));
      if (square.violations.empty()) {
        return fail("l(g^i) = i^2 not flagged as non-subadditive");
      }
      ++planted;
      auto word_metric = check_axioms(free_group_sample(2, 3));
      if (!word_metric.violations.empty()) {
        return fail("word metric sample has " + std::to_string(word_metric.violations.size())
                    + " violations");
      }
      if (!std::isfinite(word_metric.fitted_c) || word_metric.warning) {
        return fail("word metric sample has no plausible fitted c");
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f", word_metric.fitted_c);
      return pass(std::to_string(planted) + " planted violations detected; word metric clean, c = "
                  + buf);
    }

    struct Spec {
      char const* name;
      double      limit;
      Outcome (*run)(AcceptanceOptions const&);
    };

    Spec const kSpecs[kCriteria] = {
        {"counterexample", 1, counterexample},
        {"z2-area", 120, z2_areas},
        {"heisenberg", 120, heisenberg},
        {"hub-arithmetic", 1, hub_arithmetic},
        {"kq-triviality", 300, kq_triviality},
        {"certificates", 30, certificates},
        {"equalizer", 300, equalizer},
        {"reversibility", 10, reversibility},
        {"star-star", 120, star_star},
        {"axioms", 5, axioms},
    };

  }  // namespace

  CriterionResult run_criterion(int id, AcceptanceOptions const& options) {
    if (id < 1 || id > kCriteria) {
      throw std::out_of_range("no criterion " + std::to_string(id));
    }
    auto const&     spec = kSpecs[id - 1];
    CriterionResult r;
    r.id            = id;
    r.name          = spec.name;
    r.limit_seconds = spec.limit;
    auto start      = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = spec.run(options);
    } catch (std::exception const& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.status  = out.status;
    r.detail  = out.detail;
    if (r.status == CriterionStatus::pass && r.seconds > r.limit_seconds) {
      r.status = CriterionStatus::fail;
      r.detail += " [time limit exceeded]";
    }
    return r;
  }

  std::vector<CriterionResult>
  run_acceptance(AcceptanceOptions const&                           options,
                 std::function<void(CriterionResult const&)> const& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id) {
      out.push_back(run_criterion(id, options));
      if (on_result) {
        on_result(out.back());
      }
    }
    return out;
  }

  std::string format_line(CriterionResult const& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2f s / %.0f s): ", r.seconds, r.limit_seconds);
    return "[" + std::string(to_string(r.status)) + "] " + std::to_string(r.id) + " " + r.name
           + buf + r.detail;
  }

}  // namespace cgw
