#include "cgw/distortion.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace cgw {

  PairElement operator*(PairElement const& a, PairElement const& b) {
    return {reduce(concat(a.u, b.u)), reduce(concat(a.v, b.v))};
  }

  PairElement inverse(PairElement const& a) { return {inverse(a.u), inverse(a.v)}; }

  std::size_t PairHash::operator()(PairElement const& p) const noexcept {
    WordHash h;
    return h(p.u) * 1000003U ^ h(p.v);
  }

  std::string_view to_string(GeneratorKind kind) {
    switch (kind) {
      case GeneratorKind::mixed_x:
        return "mixed-x";
      case GeneratorKind::mixed_y:
        return "mixed-y";
      case GeneratorKind::kernel:
        return "kernel";
    }
    return "?";
  }

  std::string_view to_string(Membership m) {
    switch (m) {
      case Membership::in:
        return "in";
      case Membership::out:
        return "out";
      case Membership::unknown:
        return "unknown";
    }
    return "?";
  }

  Word phi_image(EqualizerSpec const& spec, Word const& u) {
    Substitution images(spec.phi.begin(), spec.phi.end());
    return reduce(substitute(u, images, &spec.x));
  }

  namespace {

    void check_shape(EqualizerSpec const& spec) {
      if (spec.phi.size() != spec.x.size() || spec.t.size() != spec.x.size()) {
        throw std::invalid_argument("need one phi image and one t witness per x generator");
      }
      if (spec.s.size() != spec.target.alphabet().size()) {
        throw std::invalid_argument("need one s witness per y generator");
      }
    }

    bool certified_trivial(Presentation const& p, Word const& w, AreaBudget budget) {
      Word r = reduce(w);
      if (r.empty()) {
        return true;
      }
      return area_oracle(p, r, budget).certificate.has_value();
    }

    // Generator letter whose pair is p or p^-1.
    std::optional<Letter> find_generator(std::vector<EqualizerGenerator> const& gens,
                                         PairElement const&                     p) {
      PairElement inv = inverse(p);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].pair == p) {
          return make_letter(i);
        }
        if (gens[i].pair == inv) {
          return make_letter(i, true);
        }
      }
      return std::nullopt;
    }

    Letter require_generator(std::vector<EqualizerGenerator> const& gens,
                             PairElement const&                     p) {
      auto g = find_generator(gens, p);
      if (!g) {
        throw std::invalid_argument("generator list does not contain a needed pair");
      }
      return *g;
    }

  }  // namespace

  void verify_witnesses(EqualizerSpec const& spec, AreaBudget budget) {
    check_shape(spec);
    for (std::size_t i = 0; i < spec.t.size(); ++i) {
      if (!certified_trivial(spec.target, concat(spec.phi[i], inverse(spec.t[i])), budget)) {
        throw std::invalid_argument("witness t_" + std::to_string(i + 1)
                                    + " is not certified: phi("
                                    + spec.x.name(i) + ") != t_"
                                    + std::to_string(i + 1));
      }
    }
    for (std::size_t j = 0; j < spec.s.size(); ++j) {
      Word y{make_letter(j)};
      if (!certified_trivial(spec.target, concat(phi_image(spec, spec.s[j]), inverse(y)),
                             budget)) {
        throw std::invalid_argument("witness s_" + std::to_string(j + 1)
                                    + " is not certified: phi(s_"
                                    + std::to_string(j + 1) + ") != "
                                    + spec.target.alphabet().name(j));
      }
    }
  }

  std::vector<EqualizerGenerator> equalizer_generators(EqualizerSpec const& spec,
                                                       AreaBudget           budget) {
    verify_witnesses(spec, budget);
    std::vector<EqualizerGenerator> out;
    auto add = [&](GeneratorKind kind, std::size_t source, PairElement p) {
      if (p.u.empty() && p.v.empty()) {
        return;
      }
      if (!find_generator(out, p)) {
        out.push_back({kind, source, std::move(p)});
      }
    };
    for (std::size_t i = 0; i < spec.t.size(); ++i) {
      add(GeneratorKind::mixed_x, i, {Word{make_letter(i)}, reduce(spec.t[i])});
    }
    for (std::size_t j = 0; j < spec.s.size(); ++j) {
      add(GeneratorKind::mixed_y, j, {reduce(spec.s[j]), Word{make_letter(j)}});
    }
    // Each relator in its own orientation first, then its other shifts.
    for (std::size_t k = 0; k < spec.target.relators().size(); ++k) {
      auto const& r = spec.target.relators()[k];
      add(GeneratorKind::kernel, k, {Word{}, r});
      for (auto const& s : cyclic_shifts_and_inverses(r)) {
        add(GeneratorKind::kernel, k, {Word{}, s});
      }
    }
    return out;
  }

  Membership membership(EqualizerSpec const& spec,
                        PairElement const&   p,
                        AreaBudget           budget,
                        FiniteModel const*   model) {
    Word z = reduce(concat(phi_image(spec, p.u), inverse(p.v)));
    if (model) {
      return model->is_trivial(z) ? Membership::in : Membership::out;
    }
    if (spec.target.relators().empty()) {
      return z.empty() ? Membership::in : Membership::out;
    }
    return certified_trivial(spec.target, z, budget) ? Membership::in
                                                     : Membership::unknown;
  }

  PairElement evaluate(std::vector<EqualizerGenerator> const& gens, Word const& word) {
    PairElement out;
    for (Letter x : word) {
      auto const& g = gens.at(generator_of(x)).pair;
      out           = out * (is_inverse_letter(x) ? inverse(g) : g);
    }
    return out;
  }

  Expression express(EqualizerSpec const&                   spec,
                     std::vector<EqualizerGenerator> const& gens,
                     PairElement const&                     p,
                     AreaBudget                             budget) {
    Expression e;
    Word       u = reduce(p.u), v = reduce(p.v);
    e.p          = u.size();
    for (auto const& t : spec.t) {
      e.c1 = std::max(e.c1, t.size());
    }
    Word word, tu;
    for (Letter x : u) {
      auto        i = generator_of(x);
      PairElement g{Word{make_letter(i)}, reduce(spec.t[i])};
      Letter      l = require_generator(gens, g);
      word.push_back(is_inverse_letter(x) ? -l : l);
      tu.append(is_inverse_letter(x) ? inverse(spec.t[i]) : spec.t[i]);
    }
    e.residual = reduce(concat(inverse(tu), v));
    std::vector<ConjugateFactor> factors;
    if (!e.residual.empty()) {
      auto res = area_oracle(spec.target, e.residual, budget);
      if (!res.certificate) {
        return e;
      }
      e.certificate = res.certificate;
      factors       = factors_of(*res.certificate);
    } else {
      e.certificate = TrivialityCertificate{};
    }
    e.d = factors.size();
    for (auto const& f : factors) {
      Word conj;
      for (Letter y : f.conjugator) {
        auto        j = generator_of(y);
        PairElement g{reduce(spec.s[j]), Word{make_letter(j)}};
        Letter      l = require_generator(gens, g);
        conj.push_back(is_inverse_letter(y) ? -l : l);
      }
      word.append(conj);
      word.push_back(require_generator(gens, {Word{}, f.relator}));
      word.append(inverse(conj));
      e.c2 = std::max(e.c2, 2 * f.conjugator.size() + 1);
    }
    if (evaluate(gens, word) != PairElement{u, v}) {
      throw std::logic_error("express: product does not evaluate to the input");
    }
    e.word  = std::move(word);
    e.bound = (u.size() + v.size()) * (1 + e.c1) + e.c2 * e.d;
    return e;
  }

  std::unordered_map<PairElement, std::size_t, PairHash>
  subgroup_ball(std::vector<EqualizerGenerator> const& gens, std::size_t radius) {
    std::unordered_map<PairElement, std::size_t, PairHash> dist{{PairElement{}, 0}};
    std::vector<PairElement>                               layer{PairElement{}};
    for (std::size_t r = 1; r <= radius && !layer.empty(); ++r) {
      std::vector<PairElement> next;
      for (auto const& e : layer) {
        for (auto const& g : gens) {
          for (auto const& step : {g.pair, inverse(g.pair)}) {
            auto n = e * step;
            if (dist.emplace(n, r).second) {
              next.push_back(std::move(n));
            }
          }
        }
      }
      layer = std::move(next);
    }
    return dist;
  }

  std::optional<std::size_t> min_kernel_factors(
      std::vector<EqualizerGenerator> const& gens,
      PairElement const&                     target,
      std::size_t                            max_length) {
    // best[e]: fewest kernel letters over words of the current length.
    std::unordered_map<PairElement, std::size_t, PairHash> layer{{PairElement{}, 0}};
    std::optional<std::size_t>                             best;
    auto consider = [&](auto const& m) {
      auto it = m.find(target);
      if (it != m.end() && (!best || it->second < *best)) {
        best = it->second;
      }
    };
    consider(layer);
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::unordered_map<PairElement, std::size_t, PairHash> next;
      for (auto const& [e, k] : layer) {
        for (auto const& g : gens) {
          std::size_t cost = k + (g.kind == GeneratorKind::kernel ? 1 : 0);
          for (auto const& step : {g.pair, inverse(g.pair)}) {
            auto [it, fresh] = next.emplace(e * step, cost);
            if (!fresh && cost < it->second) {
              it->second = cost;
            }
          }
        }
      }
      layer = std::move(next);
      consider(layer);
    }
    return best;
  }

  std::vector<DistortionRow> distortion_sample(EqualizerSpec const& spec,
                                               std::size_t          n_max,
                                               AreaBudget           budget,
                                               FiniteModel const*   model) {
    auto gens = equalizer_generators(spec, budget);
    auto us   = all_reduced_words(spec.x.size(), n_max);
    auto vs   = all_reduced_words(spec.target.alphabet().size(), n_max);

    struct Member {
      PairElement p;
      std::size_t express;
    };
    std::vector<Member>        members;
    std::vector<DistortionRow> rows(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
      rows[n].n = n;
    }
    bool        exact  = true;
    std::size_t radius = 0;
    for (auto const& u : us) {
      for (auto const& v : vs) {
        if (u.size() + v.size() > n_max) {
          continue;
        }
        PairElement p{u, v};
        auto        m = membership(spec, p, budget, model);
        if (m == Membership::unknown) {
          exact = false;
        }
        if (m != Membership::in) {
          continue;
        }
        auto e = express(spec, gens, p, budget);
        if (!e.word) {
          exact = false;
          continue;
        }
        radius = std::max(radius, e.word->size());
        members.push_back({p, e.word->size()});
      }
    }
    auto ball = subgroup_ball(gens, radius);
    for (auto const& m : members) {
      std::size_t len = ball.at(m.p);
      ++rows[m.p.length()].members;
      for (std::size_t n = m.p.length(); n <= n_max; ++n) {
        rows[n].max_length  = std::max(rows[n].max_length, len);
        rows[n].max_express = std::max(rows[n].max_express, m.express);
      }
    }
    for (auto& r : rows) {
      r.exact = exact;
    }
    return rows;
  }

  Presentation heisenberg_presentation() {
    Presentation p;
    p.source = "H3";
    for (auto const* name : {"a", "b", "c"}) {
      p.add_generator(name, Role::other);
    }
    p.add_relation(p.parse("a b a^-1 b^-1"), p.parse("c"));
    p.add_relation(p.parse("c a"), p.parse("a c"));
    p.add_relation(p.parse("c b"), p.parse("b c"));
    return p;
  }

  HeisenbergElement operator*(HeisenbergElement const& g, HeisenbergElement const& h) {
    return {g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y};
  }

  namespace {
    HeisenbergElement generator_image(Letter l) {
      long s = is_inverse_letter(l) ? -1 : 1;
      switch (generator_of(l)) {
        case 0:
          return {s, 0, 0};
        case 1:
          return {0, s, 0};
        default:
          return {0, 0, s};
      }
    }
  }  // namespace

  HeisenbergElement heisenberg_image(Word const& w) {
    HeisenbergElement g;
    for (Letter l : w) {
      if (generator_of(l) > 2) {
        throw std::invalid_argument("not a word over a, b, c");
      }
      g = g * generator_image(l);
    }
    return g;
  }

  std::optional<std::size_t> heisenberg_length(HeisenbergElement const& g,
                                               std::size_t              max_radius) {
    if (g == HeisenbergElement{}) {
      return 0;
    }
    std::set<HeisenbergElement>    seen{HeisenbergElement{}};
    std::vector<HeisenbergElement> layer{HeisenbergElement{}};
    for (std::size_t r = 0; r < max_radius; ++r) {
      std::vector<HeisenbergElement> next;
      for (auto const& e : layer) {
        for (Letter l : {1, -1, 2, -2}) {
          auto n = e * generator_image(l);
          if (n == g) {
            return r + 1;
          }
          if (seen.insert(n).second) {
            next.push_back(n);
          }
        }
      }
      layer = std::move(next);
    }
    return std::nullopt;
  }

  namespace {
    Word heisenberg_identity_word(Presentation const& p, std::size_t n) {
      Letter a = p.letter("a"), b = p.letter("b"), c = p.letter("c");
      long   k = static_cast<long>(n);
      Word   w = power(Word{c}, k * k);
      w.append(inverse(commutator(power(Word{a}, k), power(Word{b}, k))));
      return reduce(w);
    }
  }  // namespace

  TrivialityCertificate heisenberg_collect_certificate(std::size_t n) {
    auto              p = heisenberg_presentation();
    DerivationBuilder b(p, heisenberg_identity_word(p, n));
    Letter const      c = p.letter("c");
    auto swap = [&](Letter x, Letter y) -> std::optional<Word> {
      auto gx = generator_of(x), gy = generator_of(y);
      if (gx == 2 && gy != 2) {
        return Word{y, x};
      }
      if (gx == 1 && gy == 0) {
        // b^e a^d = a^d b^e c^(-ed)
        bool same = is_inverse_letter(x) == is_inverse_letter(y);
        return Word{y, x, same ? -c : c};
      }
      return std::nullopt;
    };
    collect(b, swap);
    return b.finish();
  }

  std::vector<HeisenbergRow> heisenberg_demo(std::size_t n_max, AreaBudget budget) {
    auto                       p = heisenberg_presentation();
    std::vector<HeisenbergRow> rows;
    for (std::size_t n = 0; n <= n_max; ++n) {
      HeisenbergRow row;
      row.n     = n;
      row.upper = 4 * n;
      Word w    = heisenberg_identity_word(p, n);
      if (w.empty()) {
        row.certified = true;
        row.area      = 0;
        row.method    = "empty";
      } else {
        auto res = area_oracle(p, w, budget);
        if (res.certificate && verify_certificate(*res.certificate, p, w).valid()) {
          row.certified = true;
          row.area      = res.area;
          row.method    = "area-oracle";
        } else {
          auto cert     = heisenberg_collect_certificate(n);
          row.certified = verify_certificate(cert, p, w).valid();
          row.method    = "collection";
        }
      }
      long k     = static_cast<long>(n);
      row.length = heisenberg_length({0, 0, k * k}, row.upper);
      rows.push_back(row);
    }
    return rows;
  }

}  // namespace cgw
