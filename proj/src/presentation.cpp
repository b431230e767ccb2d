#include "cgw/presentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgw {

  namespace {
    constexpr std::pair<Role, std::string_view> kRoleNames[] = {
        {Role::tape, "tape"},
        {Role::state, "state"},
        {Role::k, "k"},
        {Role::rule, "rule"},
        {Role::rho, "rho"},
        {Role::b, "b"},
        {Role::other, "other"},
    };
  }  // namespace

  std::string_view to_string(Role role) {
    for (auto const& [r, name] : kRoleNames) {
      if (r == role) {
        return name;
      }
    }
    return "other";
  }

  Role role_from_string(std::string_view text) {
    for (auto const& [r, name] : kRoleNames) {
      if (name == text) {
        return r;
      }
    }
    throw std::invalid_argument("unknown generator role \"" + std::string(text)
                                + "\"");
  }

  std::string copy_name(std::string_view base, std::size_t copy) {
    return std::string(base) + "#" + std::to_string(copy);
  }

  std::string k_name(std::size_t i) { return "k_" + std::to_string(i); }

  std::size_t Presentation::add_generator(std::string const& name,
                                          Role               role,
                                          std::size_t        copy,
                                          std::string        base) {
    auto g = _alphabet.add(name);
    _info.push_back({role, copy, base.empty() ? name : std::move(base)});
    return g;
  }

  void Presentation::add_relator(Word r) {
    if (r.empty()) {
      throw std::invalid_argument("empty relator");
    }
    if (!is_cyclically_reduced(r)) {
      throw std::invalid_argument("relator " + format(reduce(r))
                                  + " is not cyclically reduced");
    }
    for (Letter x : r) {
      if (generator_of(x) >= _alphabet.size()) {
        throw std::invalid_argument("relator uses an undeclared generator");
      }
    }
    _relators.push_back(std::move(r));
  }

  void Presentation::add_relation(Word const& lhs, Word const& rhs) {
    add_relator(reduce(concat(lhs, inverse(rhs))));
  }

  std::size_t Presentation::count(Role role) const {
    return static_cast<std::size_t>(
        std::count_if(_info.begin(), _info.end(), [role](auto const& i) {
          return i.role == role;
        }));
  }

  PresentationShape shape_of(Presentation const& p) {
    PresentationShape s;
    for (std::size_t g = 0; g < p.alphabet().size(); ++g) {
      auto const& i = p.info(g);
      s.generators.push_back(p.alphabet().name(g) + "/"
                             + std::string(to_string(i.role)) + "/"
                             + std::to_string(i.copy));
    }
    for (auto const& r : p.relators()) {
      s.relators.push_back(p.format(r));
    }
    std::sort(s.generators.begin(), s.generators.end());
    std::sort(s.relators.begin(), s.relators.end());
    return s;
  }

  HubWord hub_word(Word const&     w,
                   Alphabet const& base,
                   std::size_t     copies,
                   Alphabet&       target) {
    if (copies == 0) {
      throw std::invalid_argument("hub needs at least one copy");
    }
    HubWord out{{}, copies, w.size()};
    for (std::size_t i = 1; i <= copies; ++i) {
      out.word.push_back(make_letter(target.intern(k_name(i))));
      for (Letter x : w) {
        auto g = target.intern(copy_name(base.name(generator_of(x)), i));
        out.word.push_back(make_letter(g, is_inverse_letter(x)));
      }
    }
    return out;
  }

  namespace {

    // Letters for the N copies of a base alphabet inside a presentation.
    class CopiedAlphabet {
     public:
      CopiedAlphabet(Presentation& p, std::size_t copies)
          : _p(p), _copies(copies) {}

      void add(std::string const& base, Role role) {
        _base.push_back(base);
        _ids.emplace_back();
        for (std::size_t i = 1; i <= _copies; ++i) {
          _ids.back().push_back(
              _p.add_generator(copy_name(base, i), role, i, base));
        }
      }

      // Letter of copy i (1-based) of base generator g.
      Letter letter(std::size_t g, std::size_t copy, bool inv = false) const {
        return make_letter(_ids.at(g).at(copy - 1), inv);
      }

      std::size_t size() const noexcept { return _base.size(); }

     private:
      Presentation&                         _p;
      std::size_t                           _copies;
      std::vector<std::string>              _base;
      std::vector<std::vector<std::size_t>> _ids;
    };

    Word commutator_relator(Letter x, Letter y) {
      return Word{x, y, -x, -y};
    }

    // x U x^-1 V^-1, the relator of U^x = V.
    Word conjugation_relator(Letter x, Word const& u, Word const& v) {
      Word r{x};
      r.append(u);
      r.push_back(-x);
      r.append(inverse(v));
      return reduce(r);
    }

    std::vector<std::size_t> add_k_letters(Presentation& p, std::size_t n) {
      std::vector<std::size_t> out;
      for (std::size_t i = 1; i <= n; ++i) {
        out.push_back(p.add_generator(k_name(i), Role::k));
      }
      return out;
    }

  }  // namespace

  Presentation compile_gmn(std::size_t m, std::size_t n, std::size_t copies) {
    if (m == 0 || n == 0 || copies == 0) {
      throw std::invalid_argument("compile_gmn needs m, n, N >= 1");
    }
    Presentation p;
    p.copies = copies;
    p.source = "G_{" + std::to_string(m) + "," + std::to_string(n) + "}";
    auto           ks = add_k_letters(p, copies);
    CopiedAlphabet qs(p, copies), as(p, copies);
    for (std::size_t i = 1; i <= n; ++i) {
      qs.add("q_" + std::to_string(i), Role::state);
    }
    for (std::size_t j = 1; j <= m; ++j) {
      as.add("a_" + std::to_string(j), Role::tape);
    }
    std::vector<Letter> rs;
    for (std::size_t j = 1; j <= m; ++j) {
      rs.push_back(make_letter(p.add_generator("r_" + std::to_string(j), Role::rule)));
    }
    for (std::size_t c = 1; c <= copies; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          Letter q = qs.letter(i, c);
          p.add_relator(conjugation_relator(rs[j], Word{q}, Word{as.letter(j, c), q}));
        }
      }
      for (std::size_t a = 0; a < m; ++a) {
        for (auto r : rs) {
          p.add_relator(commutator_relator(as.letter(a, c), r));
        }
      }
    }
    for (auto k : ks) {
      for (auto r : rs) {
        p.add_relator(commutator_relator(make_letter(k), r));
      }
    }
    Word hub;
    for (std::size_t c = 1; c <= copies; ++c) {
      hub.push_back(make_letter(ks[c - 1]));
      for (std::size_t i = 0; i < n; ++i) {
        hub.push_back(qs.letter(i, c));
      }
    }
    p.add_relator(hub);
    return p;
  }

  SMachine gmn_machine(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) {
      throw std::invalid_argument("gmn_machine needs m, n >= 1");
    }
    SMachine s;
    auto     left = s.alphabet.add(kLeftDelimiter);
    s.state_classes.push_back({left});
    for (std::size_t i = 1; i <= n; ++i) {
      s.state_classes.push_back({s.alphabet.add("q_" + std::to_string(i))});
    }
    std::vector<std::size_t> tape;
    for (std::size_t j = 1; j <= m; ++j) {
      tape.push_back(s.alphabet.add("a_" + std::to_string(j)));
    }
    s.tape_alphabets.assign(n, tape);
    s.delimiter_classes = {0};
    for (std::size_t j = 0; j < m; ++j) {
      SRule rule{"r_" + std::to_string(j + 1), {}};
      for (std::size_t i = 1; i <= n; ++i) {
        Letter q = make_letter(s.state_classes[i][0]);
        rule.parts.push_back({Word{q}, Word{make_letter(tape[j]), q}});
      }
      s.rules.push_back(std::move(rule));
    }
    s.accept.states.push_back(left);
    for (std::size_t i = 1; i <= n; ++i) {
      s.accept.states.push_back(s.state_classes[i][0]);
    }
    s.accept.tapes.assign(n, Word{});
    return s;
  }

  Presentation compile_gm(TuringMachine const& tm, std::size_t copies) {
    validate_machine(tm);
    if (copies == 0) {
      throw std::invalid_argument("compile_gm needs N >= 1");
    }
    Presentation p;
    p.copies = copies;
    p.source = "G(M)";
    auto ks = add_k_letters(p, copies);
    // Machine generator -> index among copied letters.
    std::vector<std::ptrdiff_t> slot(tm.alphabet.size(), -1);
    CopiedAlphabet              letters(p, copies);
    for (auto a : tm.tape_letters) {
      slot[a] = static_cast<std::ptrdiff_t>(letters.size());
      letters.add(tm.alphabet.name(a), Role::tape);
    }
    for (auto q : tm.states) {
      slot[q] = static_cast<std::ptrdiff_t>(letters.size());
      letters.add(tm.alphabet.name(q), Role::state);
    }
    std::vector<Letter> rs;
    for (auto const& t : tm.transitions) {
      rs.push_back(make_letter(p.add_generator(t.name, Role::rule)));
    }
    auto in_copy = [&](Word const& w, std::size_t c) {
      Word out;
      for (Letter x : w) {
        out.push_back(letters.letter(static_cast<std::size_t>(slot[generator_of(x)]),
                                     c, is_inverse_letter(x)));
      }
      return out;
    };
    for (std::size_t c = 1; c <= copies; ++c) {
      for (std::size_t i = 0; i < tm.transitions.size(); ++i) {
        auto const& t = tm.transitions[i];
        p.add_relator(conjugation_relator(
            rs[i], in_copy(Configuration{t.u, t.q, t.v}.flatten(), c),
            in_copy(Configuration{t.u2, t.q2, t.v2}.flatten(), c)));
      }
      for (auto a : tm.tape_letters) {
        for (auto r : rs) {
          p.add_relator(commutator_relator(
              letters.letter(static_cast<std::size_t>(slot[a]), c), r));
        }
      }
    }
    for (auto k : ks) {
      for (auto r : rs) {
        p.add_relator(commutator_relator(make_letter(k), r));
      }
    }
    Word hub;
    for (std::size_t c = 1; c <= copies; ++c) {
      hub.push_back(make_letter(ks[c - 1]));
      hub.append(in_copy(tm.accept.flatten(), c));
    }
    p.add_relator(hub);
    return p;
  }

  Presentation compile_gns(SMachine const& s, std::size_t copies) {
    auto violations = validate_machine(s);
    if (!violations.empty()) {
      throw std::invalid_argument("invalid S-machine: "
                                  + describe(violations.front(), s));
    }
    if (copies == 0) {
      throw std::invalid_argument("compile_gns needs N >= 1");
    }
    Presentation p;
    p.copies = copies;
    p.source = "G_N(S)";
    auto ks = add_k_letters(p, copies);

    std::vector<std::size_t> tape;
    for (auto const& y : s.tape_alphabets) {
      for (auto g : y) {
        if (std::find(tape.begin(), tape.end(), g) == tape.end()) {
          tape.push_back(g);
        }
      }
    }
    std::sort(tape.begin(), tape.end());
    for (auto g : tape) {
      for (std::size_t c = 1; c <= copies; ++c) {
        p.add_generator(copy_name(s.alphabet.name(g), c), Role::tape, c,
                        s.alphabet.name(g));
      }
    }
    for (std::size_t cls = 0; cls < s.state_classes.size(); ++cls) {
      if (s.is_delimiter_class(cls)) {
        continue;
      }
      for (auto g : s.state_classes[cls]) {
        for (std::size_t c = 1; c <= copies; ++c) {
          p.add_generator(copy_name(s.alphabet.name(g), c), Role::state, c,
                          s.alphabet.name(g));
        }
      }
    }
    std::vector<Letter> rs;
    for (auto const& rule : s.rules) {
      rs.push_back(make_letter(p.add_generator(rule.name, Role::rule)));
    }
    for (std::size_t c = 1; c <= copies; ++c) {
      for (std::size_t i = 0; i < s.rules.size(); ++i) {
        for (auto const& part : s.rules[i].parts) {
          Word u = gns_copy(s, p, part.lhs, c);
          Word v = gns_copy(s, p, part.rhs, c);
          if (u.empty()) {
            throw std::invalid_argument("rule " + s.rules[i].name
                                        + " has a part on delimiters only");
          }
          p.add_relator(cyclically_reduce(conjugation_relator(rs[i], u, v)));
        }
      }
      for (auto g : tape) {
        for (auto r : rs) {
          p.add_relator(commutator_relator(
              p.letter(copy_name(s.alphabet.name(g), c)), r));
        }
      }
    }
    for (auto k : ks) {
      for (auto r : rs) {
        p.add_relator(commutator_relator(make_letter(k), r));
      }
    }
    p.add_relator(gns_hub(s, p, s.accept));
    return p;
  }

  Word gns_copy(SMachine const&     s,
                Presentation const& p,
                Word const&         w,
                std::size_t         copy) {
    Word out;
    for (Letter x : w) {
      auto g   = generator_of(x);
      auto cls = s.class_of(g);
      if (cls && s.is_delimiter_class(*cls)) {
        continue;
      }
      out.push_back(
          make_letter(p.alphabet().index(copy_name(s.alphabet.name(g), copy)),
                      is_inverse_letter(x)));
    }
    return out;
  }

  Word gns_hub(SMachine const&       s,
               Presentation const&   p,
               AdmissibleWord const& w) {
    Word hub;
    Word flat = w.flatten();
    for (std::size_t c = 1; c <= p.copies; ++c) {
      hub.push_back(p.letter(k_name(c)));
      hub.append(gns_copy(s, p, flat, c));
    }
    return hub;
  }

  Presentation compile_hmn(Presentation const& base, std::size_t b_count) {
    Presentation p;
    p.copies = base.copies;
    p.source = "H[" + base.source + "]";
    for (std::size_t g = 0; g < base.alphabet().size(); ++g) {
      auto const& i = base.info(g);
      p.add_generator(base.alphabet().name(g), i.role, i.copy, i.base);
    }
    for (auto const& r : base.relators()) {
      p.add_relator(r);
    }
    std::vector<Letter> ks, qs, as, first_qs, first_as;
    for (std::size_t g = 0; g < base.alphabet().size(); ++g) {
      auto const& i = base.info(g);
      Letter      x = make_letter(g);
      switch (i.role) {
        case Role::k:
          ks.push_back(x);
          break;
        case Role::state:
          qs.push_back(x);
          if (i.copy == 1 || (i.copy == 0 && base.copies == 1)) {
            first_qs.push_back(x);
          }
          break;
        case Role::tape:
          as.push_back(x);
          if (i.copy == 1 || (i.copy == 0 && base.copies == 1)) {
            first_as.push_back(x);
          }
          break;
        default:
          break;
      }
    }
    if (first_as.size() != b_count) {
      throw std::invalid_argument(
          "compile_hmn: b_count must equal the number of first-copy tape "
          "letters ("
          + std::to_string(first_as.size()) + ")");
    }
    Letter rho = make_letter(p.add_generator("rho", Role::rho));
    std::vector<Letter> bs;
    for (std::size_t j = 1; j <= b_count; ++j) {
      bs.push_back(make_letter(p.add_generator("b_" + std::to_string(j), Role::b)));
    }
    for (auto k : ks) {
      p.add_relator(commutator_relator(rho, k));
    }
    for (auto q : qs) {
      p.add_relator(commutator_relator(rho, q));
    }
    for (auto a : as) {
      p.add_relator(commutator_relator(rho, a));
    }
    for (std::size_t j = 0; j < b_count; ++j) {
      p.add_relator(conjugation_relator(rho, Word{first_as[j]},
                                        Word{first_as[j], bs[j]}));
    }
    for (auto a : first_as) {
      for (auto b : bs) {
        p.add_relator(commutator_relator(a, b));
      }
    }
    for (auto q : first_qs) {
      for (auto b : bs) {
        p.add_relator(commutator_relator(q, b));
      }
    }
    return p;
  }

  Word transfer(Word const& w, Alphabet const& from, Alphabet const& to) {
    Word out;
    for (Letter x : w) {
      out.push_back(
          make_letter(to.index(from.name(generator_of(x))), is_inverse_letter(x)));
    }
    return out;
  }

}  // namespace cgw
