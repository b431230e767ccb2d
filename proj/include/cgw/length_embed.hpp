#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgw/words.hpp"

namespace cgw {

  // A finite piece of a length function on a group.  Elements are named by
  // string keys; `multiply` and `invert` are the group oracle.
  struct LengthSample {
    std::map<std::string, std::size_t>                                  length;
    std::string                                                         identity;
    std::function<std::string(std::string const&, std::string const&)> multiply;
    std::function<std::string(std::string const&)>                     invert;
    // Keys on which (D1) and (D2) are checked; empty means all keys.
    std::vector<std::string> core;
    // Ball counts |{g : l(g) <= r}| are exact for r <= complete_radius.
    std::size_t complete_radius = 0;
  };

  enum class AxiomClause { identity, symmetry, subadditivity };
  std::string_view to_string(AxiomClause c);

  struct AxiomViolation {
    AxiomClause clause;
    std::string g;
    std::string h;  // empty unless subadditivity
    std::string message;
  };

  struct AxiomReport {
    std::vector<AxiomViolation> violations;
    // Per radius r = 1..complete_radius: |ball(r)|^(1/r).
    std::vector<double> c_by_radius;
    // Least c with |ball(r)| <= c^r for every sampled radius (1 if none).
    double fitted_c = 1.0;
    bool   warning  = false;  // fitted_c above kImplausibleGrowth
  };

  inline constexpr double kImplausibleGrowth = 64.0;

  // Throws std::out_of_range naming the product (or inverse) that the sample
  // does not contain.
  AxiomReport check_axioms(LengthSample const& sample);

  // Free group of the given rank with l = word length: all reduced words of
  // length <= 2 * radius, checked on those of length <= radius.
  LengthSample free_group_sample(std::size_t rank, std::size_t radius);
  // Z = <g> with l(g^i) = f(|i|): keys "i" for |i| <= 2 * radius, checked for
  // |i| <= radius.
  LengthSample cyclic_sample(long radius, std::function<std::size_t(long)> f);

  // Words over {b_1, b_2}.
  Alphabet family_alphabet();

  struct WordFamily {
    std::vector<std::string> keys;
    std::vector<Word>        words;
    double                   lambda  = 1.0 / 50;
    double                   stretch = 0;  // d with l(g) <= |X_g| < d l(g)
    std::uint64_t            seed    = 0;
  };

  struct FamilyOptions {
    double        lambda     = 1.0 / 50;
    std::size_t   min_length = 100;  // L_min
    // Shortest window length that has to be unique; the word length is
    // scaled so that ceil(lambda |X_g|) reaches it.
    std::size_t   window     = 24;
    std::uint64_t seed       = 1;
    std::size_t   max_redraws = 1000;
  };

  // Seeded random reduced words over {b_1, b_2}, redrawn until the family
  // passes verify_star_star.  |X_g| = m l(g) with one multiplier m for the
  // whole family.  Throws std::invalid_argument if some l(g) < min_length.
  WordFamily generate_family(
      std::vector<std::pair<std::string, std::size_t>> const& lengths,
      FamilyOptions const&                                    options = {});

  enum class StarStarDefect { none, repeated, in_own_inverse, in_other };
  std::string_view to_string(StarStarDefect d);

  struct StarStarResult {
    StarStarDefect defect = StarStarDefect::none;
    std::size_t    g      = 0;  // word containing Y
    std::size_t    g_pos  = 0;
    std::size_t    h      = 0;  // word (or inverse word) with the second occurrence
    std::size_t    h_pos  = 0;  // position in X_h, or in X_h^-1 if h_inverse
    bool           h_inverse = false;
    Word           y;

    bool pass() const noexcept { return defect == StarStarDefect::none; }
  };

  // Threshold length ceil(lambda |X|), at least 1.
  std::size_t star_star_window(std::size_t word_length, double lambda);

  // Checks every subword Y of every X_g with |Y| >= lambda |X_g|.  It is
  // enough to look at |Y| = ceil(lambda |X_g|): a longer offending Y has an
  // offending prefix of that length.
  StarStarResult verify_star_star(std::vector<Word> const& words, double lambda);
  inline StarStarResult verify_star_star(WordFamily const& f) {
    return verify_star_star(f.words, f.lambda);
  }

  struct ProductBoundReport {
    std::size_t trials     = 0;
    double      threshold  = 0;  // 1 - 2 lambda
    double      min_ratio  = 1;
    std::size_t violations = 0;  // trials with ratio < threshold
    // Factors of the tightest product: (word index, inverse).
    std::vector<std::pair<std::size_t, bool>> worst;
  };

  // Random products X_{g_1}^{e_1} ... X_{g_s}^{e_s}, 1 <= s <= max_factors,
  // with no factor followed by its own inverse; ratio = |reduced| / sum |X|.
  ProductBoundReport product_lower_bound_check(std::vector<Word> const& words,
                                               double                   lambda,
                                               std::size_t              trials,
                                               std::uint64_t            seed,
                                               std::size_t max_factors = 6);

}  // namespace cgw
