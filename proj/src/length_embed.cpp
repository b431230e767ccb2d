#include "cgw/length_embed.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

namespace cgw {

  std::string_view to_string(AxiomClause c) {
    switch (c) {
      case AxiomClause::identity:
        return "identity";
      case AxiomClause::symmetry:
        return "D1";
      case AxiomClause::subadditivity:
        return "D2";
    }
    return "?";
  }

  AxiomReport check_axioms(LengthSample const& sample) {
    AxiomReport report;
    auto        lookup = [&](std::string const& key, std::string const& what) {
      auto it = sample.length.find(key);
      if (it == sample.length.end()) {
        throw std::out_of_range("sample has no " + what + " (\"" + key + "\")");
      }
      return it->second;
    };

    auto it = sample.length.find(sample.identity);
    if (it == sample.length.end() || it->second != 0) {
      report.violations.push_back({AxiomClause::identity, sample.identity, "",
                                   "identity missing or of nonzero length"});
    }

    std::vector<std::string> core = sample.core;
    if (core.empty()) {
      for (auto const& [key, len] : sample.length) {
        core.push_back(key);
      }
    }
    for (auto const& g : core) {
      auto lg  = lookup(g, "element " + g);
      auto inv = sample.invert(g);
      auto li  = lookup(inv, "inverse of " + g);
      if (lg != li) {
        report.violations.push_back(
            {AxiomClause::symmetry, g, "",
             "l(" + g + ") = " + std::to_string(lg) + " but l(" + inv
                 + ") = " + std::to_string(li)});
      }
    }
    for (auto const& g : core) {
      auto lg = lookup(g, "element " + g);
      for (auto const& h : core) {
        auto lh = lookup(h, "element " + h);
        auto gh = sample.multiply(g, h);
        auto l  = lookup(gh, "product " + g + " * " + h);
        if (l > lg + lh) {
          report.violations.push_back(
              {AxiomClause::subadditivity, g, h,
               "l(" + g + " * " + h + ") = " + std::to_string(l) + " > "
                   + std::to_string(lg) + " + " + std::to_string(lh)});
        }
      }
    }

    for (std::size_t r = 1; r <= sample.complete_radius; ++r) {
      std::size_t count = 0;
      for (auto const& [key, len] : sample.length) {
        count += len <= r ? 1 : 0;
      }
      double c = std::pow(static_cast<double>(count), 1.0 / static_cast<double>(r));
      report.c_by_radius.push_back(c);
      report.fitted_c = std::max(report.fitted_c, c);
    }
    report.warning = report.fitted_c > kImplausibleGrowth;
    return report;
  }

  LengthSample free_group_sample(std::size_t rank, std::size_t radius) {
    Alphabet alphabet;
    for (std::size_t i = 1; i <= rank; ++i) {
      alphabet.add("x_" + std::to_string(i));
    }
    LengthSample s;
    for (auto const& w : all_reduced_words(rank, 2 * radius)) {
      auto key      = format_word(w, alphabet);
      s.length[key] = w.size();
      if (w.size() <= radius) {
        s.core.push_back(key);
      }
    }
    s.identity = format_word(Word{}, alphabet);
    s.multiply = [alphabet](std::string const& g, std::string const& h) {
      return format_word(parse_word(g, alphabet) * parse_word(h, alphabet), alphabet);
    };
    s.invert = [alphabet](std::string const& g) {
      return format_word(inverse(parse_word(g, alphabet)), alphabet);
    };
    s.complete_radius = 2 * radius;
    return s;
  }

  LengthSample cyclic_sample(long radius, std::function<std::size_t(long)> f) {
    LengthSample s;
    for (long i = -2 * radius; i <= 2 * radius; ++i) {
      s.length[std::to_string(i)] = f(std::labs(i));
      if (std::labs(i) <= radius) {
        s.core.push_back(std::to_string(i));
      }
    }
    s.identity = "0";
    s.multiply = [](std::string const& g, std::string const& h) {
      return std::to_string(std::stol(g) + std::stol(h));
    };
    s.invert = [](std::string const& g) { return std::to_string(-std::stol(g)); };
    // For nondecreasing f every element of length <= f(2 radius + 1) - 1 lies
    // in the sample.
    std::size_t beyond = f(2 * radius + 1);
    s.complete_radius  = beyond == 0 ? 0 : beyond - 1;
    return s;
  }

  Alphabet family_alphabet() { return Alphabet{"b_1", "b_2"}; }

  std::string_view to_string(StarStarDefect d) {
    switch (d) {
      case StarStarDefect::none:
        return "pass";
      case StarStarDefect::repeated:
        return "repeated";
      case StarStarDefect::in_own_inverse:
        return "in-own-inverse";
      case StarStarDefect::in_other:
        return "in-other";
    }
    return "?";
  }

  std::size_t star_star_window(std::size_t word_length, double lambda) {
    double t = std::ceil(lambda * static_cast<double>(word_length) - 1e-9);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(t, 0.0)));
  }

  namespace {

    constexpr std::uint64_t kBase = 0x9E3779B97F4A7C15ULL;

    // Hashes of all windows of length t.
    std::vector<std::uint64_t> window_hashes(Word const& w, std::size_t t) {
      std::vector<std::uint64_t> out;
      if (w.size() < t) {
        return out;
      }
      std::uint64_t top = 1;
      for (std::size_t i = 1; i < t; ++i) {
        top *= kBase;
      }
      std::uint64_t h = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i >= t) {
          h -= top * static_cast<std::uint64_t>(w[i - t] + 64);
        }
        h = h * kBase + static_cast<std::uint64_t>(w[i] + 64);
        if (i + 1 >= t) {
          out.push_back(h);
        }
      }
      return out;
    }

    bool same_window(Word const& a, std::size_t i, Word const& b, std::size_t j,
                     std::size_t t) {
      return std::equal(a.begin() + static_cast<long>(i),
                        a.begin() + static_cast<long>(i + t),
                        b.begin() + static_cast<long>(j));
    }

  }  // namespace

  StarStarResult verify_star_star(std::vector<Word> const& words, double lambda) {
    std::vector<Word> inverses;
    for (auto const& w : words) {
      inverses.push_back(inverse(w));
    }
    std::vector<std::size_t> window(words.size());
    for (std::size_t g = 0; g < words.size(); ++g) {
      window[g] = star_star_window(words[g].size(), lambda);
    }
    std::vector<std::size_t> ts(window.begin(), window.end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    for (std::size_t t : ts) {
      // (hash, word, inverse?, position)
      using Entry = std::tuple<std::uint64_t, std::size_t, bool, std::size_t>;
      std::vector<Entry> entries;
      for (std::size_t h = 0; h < words.size(); ++h) {
        for (bool inv : {false, true}) {
          auto hs = window_hashes(inv ? inverses[h] : words[h], t);
          for (std::size_t q = 0; q < hs.size(); ++q) {
            entries.emplace_back(hs[q], h, inv, q);
          }
        }
      }
      std::sort(entries.begin(), entries.end());
      for (std::size_t g = 0; g < words.size(); ++g) {
        if (window[g] != t) {
          continue;
        }
        auto hs = window_hashes(words[g], t);
        for (std::size_t p = 0; p < hs.size(); ++p) {
          auto lo = std::lower_bound(entries.begin(), entries.end(),
                                     Entry{hs[p], 0, false, 0});
          for (auto it = lo; it != entries.end() && std::get<0>(*it) == hs[p]; ++it) {
            auto [hash, h, inv, q] = *it;
            if (h == g && !inv && q == p) {
              continue;
            }
            Word const& other = inv ? inverses[h] : words[h];
            if (!same_window(words[g], p, other, q, t)) {
              continue;
            }
            StarStarResult r;
            r.defect    = h != g ? StarStarDefect::in_other
                          : inv  ? StarStarDefect::in_own_inverse
                                 : StarStarDefect::repeated;
            r.g         = g;
            r.g_pos     = p;
            r.h         = h;
            r.h_pos     = q;
            r.h_inverse = inv;
            r.y         = words[g].subword(p, t);
            return r;
          }
        }
      }
    }
    return {};
  }

  WordFamily generate_family(
      std::vector<std::pair<std::string, std::size_t>> const& lengths,
      FamilyOptions const&                                    options) {
    if (!(options.lambda > 0 && options.lambda <= 1)) {
      throw std::invalid_argument("lambda must lie in (0, 1]");
    }
    WordFamily family;
    family.lambda = options.lambda;
    family.seed   = options.seed;
    if (lengths.empty()) {
      return family;
    }
    std::size_t shortest = lengths.front().second;
    for (auto const& [key, len] : lengths) {
      if (len < options.min_length) {
        throw std::invalid_argument("length of " + key + " is " + std::to_string(len)
                                    + ", below the minimum "
                                    + std::to_string(options.min_length));
      }
      shortest = std::min(shortest, len);
    }
    std::size_t m = 1;
    while (star_star_window(m * shortest, options.lambda) < options.window) {
      ++m;
    }
    family.stretch = static_cast<double>(m + 1);

    std::mt19937_64 rng(options.seed);
    auto            draw = [&](std::size_t n) {
      Word                                   w;
      std::uniform_int_distribution<int>     first(0, 3);
      std::uniform_int_distribution<int>     next(0, 2);
      Letter const letters[] = {1, -1, 2, -2};
      for (std::size_t i = 0; i < n; ++i) {
        if (w.empty()) {
          w.push_back(letters[first(rng)]);
          continue;
        }
        // Skip the letter that would cancel the previous one.
        std::vector<Letter> allowed;
        for (Letter x : letters) {
          if (x != -w.back()) {
            allowed.push_back(x);
          }
        }
        w.push_back(allowed[static_cast<std::size_t>(next(rng))]);
      }
      return w;
    };
    for (auto const& [key, len] : lengths) {
      family.keys.push_back(key);
      family.words.push_back(draw(m * len));
    }
    for (std::size_t redraw = 0;; ++redraw) {
      auto r = verify_star_star(family.words, family.lambda);
      if (r.pass()) {
        return family;
      }
      if (redraw == options.max_redraws) {
        throw std::runtime_error("generate_family: no valid family after "
                                 + std::to_string(redraw) + " redraws");
      }
      std::size_t bad     = std::max(r.g, r.h);
      family.words[bad]   = draw(family.words[bad].size());
    }
  }

  ProductBoundReport product_lower_bound_check(std::vector<Word> const& words,
                                               double                   lambda,
                                               std::size_t              trials,
                                               std::uint64_t            seed,
                                               std::size_t              max_factors) {
    ProductBoundReport report;
    report.threshold = 1 - 2 * lambda;
    if (words.empty() || max_factors == 0) {
      return report;
    }
    std::mt19937_64                            rng(seed);
    std::uniform_int_distribution<std::size_t> count(1, max_factors);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::uniform_int_distribution<int>         sign(0, 1);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      std::vector<std::pair<std::size_t, bool>> factors;
      std::size_t                               s = count(rng);
      while (factors.size() < s) {
        std::size_t g   = pick(rng);
        bool        inv = sign(rng) == 1;
        if (!factors.empty() && factors.back().first == g
            && factors.back().second != inv) {
          continue;
        }
        factors.emplace_back(g, inv);
      }
      Word        product;
      std::size_t total = 0;
      for (auto [g, inv] : factors) {
        product.append(inv ? inverse(words[g]) : words[g]);
        total += words[g].size();
      }
      if (total == 0) {
        continue;
      }
      double ratio = static_cast<double>(reduce(product).size())
                     / static_cast<double>(total);
      ++report.trials;
      if (ratio < report.threshold - 1e-12) {
        ++report.violations;
      }
      if (report.worst.empty() || ratio < report.min_ratio) {
        report.min_ratio = ratio;
        report.worst     = factors;
      }
    }
    return report;
  }

}  // namespace cgw
