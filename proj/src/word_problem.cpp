#include "cgw/word_problem.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace cgw {

  RelatorClosure::RelatorClosure(Presentation const& p) {
    for (auto const& r : p.relators()) {
      for (auto& s : cyclic_shifts_and_inverses(r)) {
        if (_set.insert(s).second) {
          _max_length = std::max(_max_length, s.size());
          _by_first[s.front()].push_back(_words.size());
          _words.push_back(std::move(s));
        }
      }
    }
  }

  std::vector<std::size_t> const&
  RelatorClosure::starting_with(Letter x) const {
    static std::vector<std::size_t> const none;
    auto it = _by_first.find(x);
    return it == _by_first.end() ? none : it->second;
  }

  TrivialityCertificate
  certificate_from_factors(std::vector<ConjugateFactor> const& factors) {
    TrivialityCertificate c;
    c.u.clear();
    Word prev;
    for (auto const& f : factors) {
      c.u.push_back(reduce(concat(inverse(prev), f.conjugator)));
      c.r.push_back(f.relator);
      prev = reduce(f.conjugator);
    }
    c.u.push_back(inverse(prev));
    return c;
  }

  std::vector<ConjugateFactor> factors_of(TrivialityCertificate const& c) {
    std::vector<ConjugateFactor> out;
    Word                         g;
    for (std::size_t i = 0; i < c.r.size(); ++i) {
      g = reduce(concat(g, c.u[i]));
      out.push_back({g, c.r[i]});
    }
    return out;
  }

  Word evaluate(TrivialityCertificate const& c) {
    Word out;
    for (std::size_t i = 0; i < c.u.size(); ++i) {
      out.append(c.u[i]);
      if (i < c.r.size()) {
        out.append(c.r[i]);
      }
    }
    return reduce(out);
  }

  std::size_t conjugator_length(TrivialityCertificate const& c) {
    std::size_t n = 0;
    for (auto const& u : c.u) {
      n += u.size();
    }
    return n;
  }

  std::string_view to_string(CertificateDefect d) {
    switch (d) {
      case CertificateDefect::none:
        return "valid";
      case CertificateDefect::shape:
        return "shape";
      case CertificateDefect::not_a_relator:
        return "not-a-relator";
      case CertificateDefect::product_mismatch:
        return "product-mismatch";
      case CertificateDefect::conjugators_nontrivial:
        return "conjugators-nontrivial";
      case CertificateDefect::edge_bound:
        return "edge-bound";
    }
    return "?";
  }

  CertificateCheck verify_certificate(TrivialityCertificate const& c,
                                      RelatorClosure const&        closure,
                                      Word const&                  w,
                                      std::optional<std::size_t>   edges) {
    if (c.u.size() != c.r.size() + 1) {
      return {CertificateDefect::shape, std::nullopt,
              "expected d + 1 conjugator words"};
    }
    for (std::size_t i = 0; i < c.r.size(); ++i) {
      if (!closure.contains(c.r[i])) {
        return {CertificateDefect::not_a_relator, i,
                "r_" + std::to_string(i + 1)
                    + " is not a cyclic shift of a relator or its inverse"};
      }
    }
    if (evaluate(c) != reduce(w)) {
      return {CertificateDefect::product_mismatch, std::nullopt,
              "u_1 r_1 ... u_{d+1} is not freely equal to the word"};
    }
    Word prod;
    for (auto const& u : c.u) {
      prod.append(u);
    }
    if (!reduce(prod).empty()) {
      return {CertificateDefect::conjugators_nontrivial, std::nullopt,
              "u_1 u_2 ... u_{d+1} is not freely trivial"};
    }
    if (edges && conjugator_length(c) > 4 * *edges) {
      return {CertificateDefect::edge_bound, std::nullopt,
              "sum of |u_i| = " + std::to_string(conjugator_length(c))
                  + " exceeds 4e = " + std::to_string(4 * *edges)};
    }
    return {};
  }

  CertificateCheck verify_certificate(TrivialityCertificate const& c,
                                      Presentation const&          p,
                                      Word const&                  w,
                                      std::optional<std::size_t>   edges) {
    return verify_certificate(c, RelatorClosure(p), w, edges);
  }

  AreaResult area_oracle(Presentation const& p, Word const& w, AreaBudget budget) {
    return area_oracle(RelatorClosure(p), w, budget);
  }

  AreaResult area_oracle(RelatorClosure const& closure,
                         Word const&           w,
                         AreaBudget            budget) {
    AreaResult result;
    result.word = reduce(w);

    // Invariant for a node: w = F * x c x^-1 freely, where F is the product
    // of the factors on the path from the root.
    struct Node {
      Word            c;
      Word            x;
      std::size_t     depth  = 0;
      std::size_t     parent = 0;
      ConjugateFactor factor;
      bool            closed = false;
    };
    auto heuristic = [&](Word const& c) -> std::size_t {
      if (c.empty()) {
        return 0;
      }
      auto L = closure.max_length();
      return (c.size() + L - 1) / L;
    };

    auto root = cyclic_reduction(result.word);
    if (!root.core.empty() && closure.empty()) {
      result.exhausted = true;
      return result;
    }
    std::vector<Node> nodes;
    nodes.push_back({root.core, root.conjugator, 0, 0, {}, false});
    std::unordered_map<Word, std::size_t, WordHash> index;
    index.emplace(cyclic_canonical_form(root.core), 0);

    // (f, -depth, id): deeper nodes first among equal f.
    using Entry = std::tuple<std::size_t, long, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    open.emplace(heuristic(root.core), 0, 0);
    bool capped = false;

    while (!open.empty()) {
      result.frontier_peak = std::max(result.frontier_peak, open.size());
      auto [f, neg_depth, id] = open.top();
      open.pop();
      if (nodes[id].closed
          || static_cast<std::size_t>(-neg_depth) != nodes[id].depth) {
        continue;
      }
      nodes[id].closed = true;
      if (nodes[id].c.empty()) {
        std::vector<ConjugateFactor> factors;
        for (std::size_t i = id; i != 0; i = nodes[i].parent) {
          factors.push_back(nodes[i].factor);
        }
        std::reverse(factors.begin(), factors.end());
        result.visited     = nodes.size();
        result.area        = factors.size();
        result.certificate = certificate_from_factors(factors);
        return result;
      }
      Word const  c     = nodes[id].c;
      Word const  x     = nodes[id].x;
      std::size_t depth = nodes[id].depth;
      if (depth + 1 > budget.max_area) {
        continue;
      }
      std::size_t const n = c.size();
      for (std::size_t i = 0; i < n; ++i) {
        Letter prev = c[(i + n - 1) % n];
        Word   head = c.subword(0, i);
        Word   tail = c.subword(i, n - i);
        for (auto si : closure.starting_with(-prev)) {
          Word const& s    = closure.words()[si];
          Word        next = head;
          next.append(s);
          next.append(tail);
          auto red = cyclic_reduction(next);
          auto h   = heuristic(red.core);
          if (depth + 1 + h > budget.max_area) {
            continue;
          }
          if (budget.max_length != 0 && red.core.size() > budget.max_length) {
            capped = true;
            continue;
          }
          Word key = cyclic_canonical_form(red.core);
          auto it  = index.find(key);
          if (it != index.end()
              && (nodes[it->second].closed
                  || nodes[it->second].depth <= depth + 1)) {
            continue;
          }
          Node child;
          child.c      = std::move(red.core);
          child.x      = reduce(concat(x, red.conjugator));
          child.depth  = depth + 1;
          child.parent = id;
          child.factor = {reduce(concat(x, head)), inverse(s)};
          std::size_t cid;
          if (it == index.end()) {
            if (nodes.size() >= budget.max_visited) {
              result.visited = nodes.size();
              return result;
            }
            cid = nodes.size();
            nodes.push_back(std::move(child));
            index.emplace(std::move(key), cid);
          } else {
            cid        = it->second;
            nodes[cid] = std::move(child);
          }
          open.emplace(depth + 1 + h, -static_cast<long>(depth + 1), cid);
        }
      }
    }
    result.visited   = nodes.size();
    result.exhausted = !capped;
    return result;
  }

  DerivationBuilder::DerivationBuilder(Presentation const& p, Word w)
      : _p(p), _closure(p), _start(w), _current(reduce(w)) {}

  void DerivationBuilder::push(Word const& conjugator, Word const& relation) {
    auto cr = cyclic_reduction(relation);
    if (cr.core.empty()) {
      return;
    }
    if (!_closure.contains(cr.core)) {
      throw std::invalid_argument("not a conjugate of a relator: "
                                  + _p.format(cr.core));
    }
    _factors.push_back({reduce(concat(conjugator, cr.conjugator)), cr.core});
  }

  void DerivationBuilder::replace(std::size_t pos, std::size_t len, Word const& y) {
    if (pos + len > _current.size()) {
      throw std::out_of_range("replace past the end of the word");
    }
    Word head = _current.subword(0, pos);
    Word x    = _current.subword(pos, len);
    push(head, reduce(concat(x, inverse(y))));
    Word next = head;
    next.append(y);
    next.append(_current.subword(pos + len, _current.size() - pos - len));
    _current = reduce(next);
  }

  void DerivationBuilder::rewrite(std::size_t pos, std::size_t len,
                                  Word const& y, AreaBudget budget) {
    if (pos + len > _current.size()) {
      throw std::out_of_range("rewrite past the end of the word");
    }
    Word relation = reduce(concat(_current.subword(pos, len), inverse(y)));
    auto core     = cyclically_reduce(relation);
    if (core.empty() || _closure.contains(core)) {
      replace(pos, len, y);
      return;
    }
    auto it = _cache.find(relation);
    if (it == _cache.end()) {
      auto res = area_oracle(_closure, relation, budget);
      if (!res.certificate) {
        throw std::runtime_error("could not certify " + _p.format(relation));
      }
      it = _cache.emplace(relation, factors_of(*res.certificate)).first;
    }
    Word head = _current.subword(0, pos);
    for (auto const& f : it->second) {
      _factors.push_back({reduce(concat(head, f.conjugator)), f.relator});
    }
    Word next = head;
    next.append(y);
    next.append(_current.subword(pos + len, _current.size() - pos - len));
    _current = reduce(next);
  }

  void DerivationBuilder::reduce_current() { _current = reduce(_current); }

  TrivialityCertificate DerivationBuilder::finish() const {
    if (!reduce(_current).empty()) {
      throw std::logic_error("derivation has not reached the empty word: "
                             + _p.format(_current));
    }
    return certificate_from_factors(_factors);
  }

  void collect(DerivationBuilder& b, PairSwap const& swap, std::size_t max_steps) {
    for (std::size_t step = 0;; ++step) {
      Word const&                cur = b.current();
      std::optional<std::size_t> at;
      std::optional<Word>        y;
      for (std::size_t i = 0; i + 1 < cur.size() && !at; ++i) {
        y = swap(cur[i], cur[i + 1]);
        if (y) {
          at = i;
        }
      }
      if (!at) {
        return;
      }
      if (step == max_steps) {
        throw std::runtime_error("collect: step limit reached");
      }
      b.rewrite(*at, 2, *y);
    }
  }

  TrivialityCertificate certificate_from_smachine_trace(
      SMachine const&         machine,
      Presentation const&     p,
      ComputationTrace const& trace) {
    if (trace.words.empty() || trace.words.size() != trace.rules.size() + 1) {
      throw std::invalid_argument("malformed trace");
    }
    if (trace.words.back() != machine.accept) {
      throw std::invalid_argument("trace does not end at the accept word");
    }
    check_trace(machine, trace);
    for (auto const& rule : machine.rules) {
      if (!p.alphabet().find(rule.name)) {
        throw std::invalid_argument("presentation has no rule letter "
                                    + rule.name);
      }
    }

    RelatorClosure               closure(p);
    std::vector<ConjugateFactor> factors;
    Word                         g;
    auto add = [&](Word const& conj, Word const& relation) {
      auto cr = cyclic_reduction(relation);
      if (cr.core.empty()) {
        return;
      }
      if (!closure.contains(cr.core)) {
        throw std::invalid_argument(
            "presentation does not match the machine: missing relator "
            + p.format(cr.core));
      }
      factors.push_back({reduce(concat(conj, cr.conjugator)), cr.core});
    };

    for (std::size_t step = 0; step < trace.rules.size(); ++step) {
      auto const&  W    = trace.words[step];
      RuleRef      ref  = trace.rules[step];
      SRule const& rule = machine.rules[ref.index];
      CompiledRule compiled(machine, rule, ref);
      auto         matches = compiled.match(W);
      if (!matches) {
        throw std::logic_error("rule does not apply along the trace");
      }
      Letter rho = p.letter(rule.name);
      if (ref.inverse) {
        rho = -rho;
      }

      // Chunks of the flattened word: (begin, length, image before copying).
      Word                     flat = W.flatten();
      std::vector<std::size_t> state_pos;
      for (std::size_t c = 0, pos = 0; c < W.states.size(); ++c) {
        state_pos.push_back(pos);
        pos += 1 + (c < W.tapes.size() ? W.tapes[c].size() : 0);
      }
      struct Chunk {
        Word lhs;
        Word rhs;
      };
      std::vector<Chunk> chunks;
      std::size_t        pos = 0;
      for (std::size_t k = 0; k <= matches->size(); ++k) {
        std::size_t begin = flat.size(), end = flat.size();
        if (k < matches->size()) {
          auto const& m = (*matches)[k];
          begin         = state_pos[m.first_class];
          end           = state_pos[m.last_class] + 1;
        }
        for (; pos < begin; ++pos) {
          auto cls = machine.class_of(generator_of(flat[pos]));
          if (cls && !machine.is_delimiter_class(*cls)) {
            throw std::invalid_argument("rule " + rule.name
                                        + " does not mention every state letter");
          }
          if (!cls) {
            chunks.push_back({Word{flat[pos]}, Word{flat[pos]}});
          }
        }
        if (k < matches->size()) {
          auto const& part = rule.parts[k];
          Word        lhs  = ref.inverse ? part.rhs : part.lhs;
          Word        rhs  = ref.inverse ? part.lhs : part.rhs;
          auto const& shape = compiled.lhs()[k];
          std::size_t outer = shape.prefix.size() + shape.suffix.size();
          if (flat.subword(begin, end - begin)
              != lhs.subword(shape.prefix.size(), lhs.size() - outer)) {
            throw std::logic_error("part match disagrees with the word");
          }
          // Core = p^-1 U s^-1; the outer letters commute with the rule letter.
          for (Letter x : inverse(shape.prefix)) {
            chunks.push_back({Word{x}, Word{x}});
          }
          chunks.push_back({lhs, rhs});
          for (Letter x : inverse(shape.suffix)) {
            chunks.push_back({Word{x}, Word{x}});
          }
          pos = end;
        }
      }

      Word rho_inv{-rho};
      Word prefix;  // images already passed, across all copies
      for (std::size_t copy = 1; copy <= p.copies; ++copy) {
        Letter k = p.letter(k_name(copy));
        add(reduce(concat(concat(g, rho_inv), prefix)), Word{rho, k, -rho, -k});
        prefix.push_back(k);
        for (auto const& ch : chunks) {
          Word b  = gns_copy(machine, p, ch.lhs, copy);
          Word b2 = gns_copy(machine, p, ch.rhs, copy);
          Word e{rho};
          e.append(b);
          e.push_back(-rho);
          e.append(inverse(b2));
          add(reduce(concat(concat(g, rho_inv), prefix)), reduce(e));
          prefix.append(b2);
        }
      }
      g = reduce(concat(g, rho_inv));
    }
    add(g, gns_hub(machine, p, machine.accept));
    return certificate_from_factors(factors);
  }

  TrivialityCertificate translate_certificate(TrivialityCertificate const& c,
                                              Presentation const&          from,
                                              Presentation const&          to,
                                              AreaBudget                   budget) {
    RelatorClosure                                                  closure(to);
    std::unordered_map<Word, std::vector<ConjugateFactor>, WordHash> cache;
    std::vector<ConjugateFactor>                                     out;
    for (auto const& f : factors_of(c)) {
      Word g = transfer(f.conjugator, from.alphabet(), to.alphabet());
      Word r = transfer(f.relator, from.alphabet(), to.alphabet());
      if (closure.contains(r)) {
        out.push_back({g, r});
        continue;
      }
      auto it = cache.find(r);
      if (it == cache.end()) {
        auto res = area_oracle(closure, r, budget);
        if (!res.certificate) {
          throw std::runtime_error("cannot express " + from.format(f.relator)
                                   + " in the target presentation");
        }
        it = cache.emplace(r, factors_of(*res.certificate)).first;
      }
      for (auto const& h : it->second) {
        out.push_back({reduce(concat(g, h.conjugator)), h.relator});
      }
    }
    return certificate_from_factors(out);
  }

  std::vector<DehnRow> dehn_sample(Presentation const& p,
                                   std::size_t         max_len,
                                   DehnBudget          budget) {
    RelatorClosure closure(p);
    std::size_t    cap = max_len + closure.max_length();

    std::unordered_set<Word, WordHash> seen{Word{}};
    std::deque<Word>                   queue{Word{}};
    bool                               complete = true;
    while (!queue.empty()) {
      Word c = std::move(queue.front());
      queue.pop_front();
      std::size_t n = c.size();
      for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
        for (auto const& s : closure.words()) {
          Word next = c.subword(0, i);
          next.append(s);
          next.append(c.subword(i, n - i));
          Word key = cyclic_canonical_form(next);
          if (key.size() > cap || seen.count(key) != 0) {
            continue;
          }
          if (seen.size() >= budget.max_visited) {
            complete = false;
            continue;
          }
          seen.insert(key);
          queue.push_back(std::move(key));
        }
      }
    }

    std::vector<DehnRow> rows(max_len + 1);
    for (std::size_t n = 0; n <= max_len; ++n) {
      rows[n].n     = n;
      rows[n].exact = complete;
    }
    std::vector<Word> words(seen.begin(), seen.end());
    std::sort(words.begin(), words.end());
    for (auto const& w : words) {
      if (w.size() > max_len) {
        continue;
      }
      auto&       row  = rows[w.size()];
      std::size_t area = 0;
      ++row.words;
      if (!w.empty()) {
        auto res = area_oracle(closure, w, budget.area);
        if (!res.area) {
          for (std::size_t n = w.size(); n <= max_len; ++n) {
            rows[n].exact = false;
          }
          continue;
        }
        area = *res.area;
      }
      if (area > row.max_area || (row.witness.empty() && !w.empty() && area == row.max_area)) {
        row.max_area = area;
        row.witness  = w;
      }
    }
    for (std::size_t n = 1; n <= max_len; ++n) {
      if (rows[n - 1].max_area > rows[n].max_area) {
        rows[n].max_area = rows[n - 1].max_area;
        rows[n].witness  = rows[n - 1].witness;
      }
    }
    return rows;
  }

  std::size_t FiniteModel::act(std::size_t from, Word const& w) const {
    for (Letter x : w) {
      from = _table.at(from).at(column(x));
    }
    return from;
  }

  std::optional<FiniteModel> todd_coxeter(Presentation const& p,
                                          std::size_t         max_cosets) {
    std::size_t const        gens = p.alphabet().size();
    std::size_t const        cols = 2 * gens;
    constexpr std::size_t    none = static_cast<std::size_t>(-1);
    auto col = [](Letter x) {
      return 2 * generator_of(x) + (is_inverse_letter(x) ? 1 : 0);
    };
    auto inv_col = [](std::size_t c) { return c ^ 1U; };

    std::vector<std::vector<std::size_t>> table(1, std::vector<std::size_t>(cols, none));
    std::vector<std::size_t>              parent{0};
    bool                                  overflow = false;

    auto rep = [&](std::size_t c) {
      std::size_t r = c;
      while (parent[r] != r) {
        r = parent[r];
      }
      while (parent[c] != r) {
        auto next = parent[c];
        parent[c] = r;
        c         = next;
      }
      return r;
    };
    auto define = [&](std::size_t c, std::size_t x) {
      if (table.size() >= max_cosets) {
        overflow = true;
        return;
      }
      std::size_t n = table.size();
      table.emplace_back(cols, none);
      parent.push_back(n);
      table[c][x]          = n;
      table[n][inv_col(x)] = c;
    };
    auto coincidence = [&](std::size_t a, std::size_t b) {
      std::vector<std::size_t> queue;
      auto merge = [&](std::size_t k, std::size_t l) {
        k = rep(k);
        l = rep(l);
        if (k == l) {
          return;
        }
        if (k > l) {
          std::swap(k, l);
        }
        parent[l] = k;
        queue.push_back(l);
      };
      merge(a, b);
      for (std::size_t i = 0; i < queue.size(); ++i) {
        std::size_t e = queue[i];
        for (std::size_t x = 0; x < cols; ++x) {
          std::size_t f = table[e][x];
          if (f == none) {
            continue;
          }
          if (table[f][inv_col(x)] == e) {
            table[f][inv_col(x)] = none;
          }
          std::size_t e1 = rep(e), f1 = rep(f);
          if (table[e1][x] != none) {
            merge(f1, table[e1][x]);
          } else if (table[f1][inv_col(x)] != none) {
            merge(e1, table[f1][inv_col(x)]);
          } else {
            table[e1][x]          = f1;
            table[f1][inv_col(x)] = e1;
          }
        }
      }
    };
    auto scan_and_fill = [&](std::size_t c, Word const& r) {
      std::size_t f = c, b = c;
      long        i = 0, j = static_cast<long>(r.size()) - 1;
      while (true) {
        while (i <= j && table[f][col(r[i])] != none) {
          f = table[f][col(r[i])];
          ++i;
        }
        if (i > j) {
          if (f != b) {
            coincidence(f, b);
          }
          return;
        }
        while (j >= i && table[b][inv_col(col(r[j]))] != none) {
          b = table[b][inv_col(col(r[j]))];
          --j;
        }
        if (j < i) {
          coincidence(f, b);
          return;
        }
        if (i == j) {
          table[f][col(r[i])]          = b;
          table[b][inv_col(col(r[i]))] = f;
          return;
        }
        define(f, col(r[i]));
        if (overflow) {
          return;
        }
      }
    };

    for (std::size_t c = 0; c < table.size(); ++c) {
      if (parent[c] != c) {
        continue;
      }
      for (auto const& r : p.relators()) {
        scan_and_fill(c, r);
        if (overflow) {
          return std::nullopt;
        }
        if (parent[c] != c) {
          break;
        }
      }
      for (std::size_t x = 0; x < cols && parent[c] == c; ++x) {
        if (table[c][x] == none) {
          define(c, x);
          if (overflow) {
            return std::nullopt;
          }
        }
      }
    }

    std::vector<std::size_t> number(table.size(), none);
    std::size_t              live = 0;
    for (std::size_t c = 0; c < table.size(); ++c) {
      if (parent[c] == c) {
        number[c] = live++;
      }
    }
    FiniteModel model;
    model._table.assign(live, std::vector<std::size_t>(cols, none));
    for (std::size_t c = 0; c < table.size(); ++c) {
      if (parent[c] != c) {
        continue;
      }
      for (std::size_t x = 0; x < cols; ++x) {
        if (table[c][x] == none) {
          throw std::logic_error("coset table incomplete");
        }
        model._table[number[c]][x] = number[rep(table[c][x])];
      }
    }
    return model;
  }

}  // namespace cgw
