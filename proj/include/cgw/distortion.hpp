#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cgw/presentation.hpp"
#include "cgw/word_problem.hpp"
#include "cgw/words.hpp"

namespace cgw {

  // E = {(u, v) in F(x) x F(y) : phi(u) = psi(v)} where psi: F(y) -> G is the
  // natural projection onto G = <y | relators>.
  struct EqualizerSpec {
    Presentation      target;
    Alphabet          x;
    std::vector<Word> phi;  // phi[i]: image of x_i, a word over the y's
    std::vector<Word> t;    // phi(x_i) = psi(t_i)
    std::vector<Word> s;    // phi(s_j) = psi(y_j); s_j is a word over the x's
  };

  struct PairElement {
    Word u;
    Word v;

    std::size_t length() const noexcept { return u.size() + v.size(); }
    auto operator<=>(PairElement const&) const = default;
    bool operator==(PairElement const&) const = default;
  };

  PairElement operator*(PairElement const& a, PairElement const& b);
  PairElement inverse(PairElement const& a);

  struct PairHash {
    std::size_t operator()(PairElement const& p) const noexcept;
  };

  enum class GeneratorKind { mixed_x, mixed_y, kernel };
  std::string_view to_string(GeneratorKind kind);

  struct EqualizerGenerator {
    GeneratorKind kind;
    std::size_t   source;  // i for (x_i, t_i), j for (s_j, y_j), k for (1, r_k)
    PairElement   pair;
  };

  Word phi_image(EqualizerSpec const& spec, Word const& u);

  // Throws std::invalid_argument naming the first witness ("t_2", "s_1")
  // whose equality the area oracle cannot certify.
  void verify_witnesses(EqualizerSpec const& spec, AreaBudget budget = {});

  // (x_i, t_i), (s_j, y_j) and (1, r_k) for r_k in the symmetrized relator
  // set (source = index of the relator), skipping any pair equal to an
  // earlier one or to its inverse.
  std::vector<EqualizerGenerator> equalizer_generators(EqualizerSpec const& spec,
                                                       AreaBudget budget = {});

  enum class Membership { in, out, unknown };
  std::string_view to_string(Membership m);

  // With a finite model of G, or a free G, the answer is exact; otherwise
  // only "in" (via a certificate) or "unknown" can be returned.
  Membership membership(EqualizerSpec const& spec,
                        PairElement const&   p,
                        AreaBudget           budget,
                        FiniteModel const*   model = nullptr);

  // A word over the generator list: letter make_letter(i) is generator i.
  PairElement evaluate(std::vector<EqualizerGenerator> const& gens,
                       Word const&                            word);

  struct Expression {
    std::optional<Word>                  word;
    Word                                 residual;  // (t_{i_1} ... t_{i_p})^-1 v
    std::optional<TrivialityCertificate> certificate;
    std::size_t p  = 0;  // |u|
    std::size_t d  = 0;  // kernel factors
    std::size_t c1 = 0;  // max |t_i|
    std::size_t c2 = 0;  // max over factors of 2|w_i| + 1
    // k(1 + c1) + c2 d with k = |u| + |v|.
    std::size_t bound = 0;
  };

  // (u, v) = (x_{i_1}, t_{i_1}) ... (x_{i_p}, t_{i_p})
  //          * prod (w_i(s), w_i) (1, r_{k_i}) (w_i(s), w_i)^-1
  Expression express(EqualizerSpec const&                   spec,
                     std::vector<EqualizerGenerator> const& gens,
                     PairElement const&                     p,
                     AreaBudget                             budget = {});

  // Shortest generator word length of every element reachable with at most
  // `radius` generators.
  std::unordered_map<PairElement, std::size_t, PairHash>
  subgroup_ball(std::vector<EqualizerGenerator> const& gens, std::size_t radius);

  // Least number of kernel letters in a generator word of length at most
  // max_length evaluating to `target`; nullopt if there is none.
  std::optional<std::size_t> min_kernel_factors(
      std::vector<EqualizerGenerator> const& gens,
      PairElement const&                     target,
      std::size_t                            max_length);

  struct DistortionRow {
    std::size_t n       = 0;
    std::size_t members = 0;  // elements of E with |u| + |v| = n
    // Max over members with |u| + |v| <= n of the shortest generator length.
    std::size_t max_length = 0;
    // Max over the same members of the express length.
    std::size_t max_express = 0;
    bool        exact       = true;
  };

  std::vector<DistortionRow> distortion_sample(EqualizerSpec const& spec,
                                               std::size_t          n_max,
                                               AreaBudget           budget,
                                               FiniteModel const*   model = nullptr);

  // H3 = <a, b, c | [a,b] = c, ca = ac, cb = bc>.
  Presentation heisenberg_presentation();

  // Unitriangular integer matrix [[1,x,z],[0,1,y],[0,0,1]].
  struct HeisenbergElement {
    long x = 0;
    long y = 0;
    long z = 0;
    auto operator<=>(HeisenbergElement const&) const = default;
  };
  HeisenbergElement operator*(HeisenbergElement const& g, HeisenbergElement const& h);
  // Image of a word over heisenberg_presentation().
  HeisenbergElement heisenberg_image(Word const& w);

  // Word length of g over {a, b} (c = [a, b] is not a generator here) by
  // breadth-first search in the Cayley graph; nullopt if longer than
  // max_radius.
  std::optional<std::size_t> heisenberg_length(HeisenbergElement const& g,
                                               std::size_t max_radius);

  struct HeisenbergRow {
    std::size_t                n      = 0;
    std::size_t                upper  = 0;  // 4n
    std::optional<std::size_t> length;      // |c^(n^2)| in H3
    bool                       certified = false;
    std::optional<std::size_t> area;  // of c^(n^2) [a^n, b^n]^-1, if measured
    std::string                method;
  };

  // For each n: certifies c^(n^2) [a^n, b^n]^-1 = 1 (area oracle, falling
  // back to collection into a^i b^j c^k form) and measures |c^(n^2)|.
  std::vector<HeisenbergRow> heisenberg_demo(std::size_t n_max,
                                             AreaBudget  budget = {32, 2'000'000, 0});

  // Certificate that c^(n^2) [a^n, b^n]^-1 = 1 built by collection.
  TrivialityCertificate heisenberg_collect_certificate(std::size_t n);

}  // namespace cgw
