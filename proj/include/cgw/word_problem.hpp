#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cgw/presentation.hpp"
#include "cgw/smachine.hpp"
#include "cgw/words.hpp"

namespace cgw {

  // All cyclic shifts of the relators and of their inverses.
  class RelatorClosure {
   public:
    explicit RelatorClosure(Presentation const& p);

    bool contains(Word const& w) const { return _set.count(w) != 0; }
    std::vector<Word> const& words() const noexcept { return _words; }
    // Closure words whose first letter is `x`.
    std::vector<std::size_t> const& starting_with(Letter x) const;
    std::size_t max_length() const noexcept { return _max_length; }
    bool        empty() const noexcept { return _words.empty(); }

   private:
    std::vector<Word>                                   _words;
    std::unordered_set<Word, WordHash>                  _set;
    std::unordered_map<Letter, std::vector<std::size_t>> _by_first;
    std::size_t                                         _max_length = 0;
  };

  // g r g^-1.
  struct ConjugateFactor {
    Word conjugator;
    Word relator;
    bool operator==(ConjugateFactor const&) const = default;
  };

  // u_1 r_1 u_2 r_2 ... u_d r_d u_{d+1}; u.size() == r.size() + 1.
  struct TrivialityCertificate {
    std::vector<Word> u{Word{}};
    std::vector<Word> r;

    std::size_t d() const noexcept { return r.size(); }
    bool operator==(TrivialityCertificate const&) const = default;
  };

  TrivialityCertificate certificate_from_factors(
      std::vector<ConjugateFactor> const& factors);
  std::vector<ConjugateFactor> factors_of(TrivialityCertificate const& c);
  // Free reduction of u_1 r_1 ... u_{d+1}.
  Word evaluate(TrivialityCertificate const& c);
  std::size_t conjugator_length(TrivialityCertificate const& c);

  enum class CertificateDefect {
    none,
    shape,               // u.size() != r.size() + 1
    not_a_relator,       // some r_i outside the closure
    product_mismatch,    // product not freely equal to the word
    conjugators_nontrivial,  // u_1 ... u_{d+1} != 1 freely
    edge_bound           // sum |u_i| > 4e
  };
  std::string_view to_string(CertificateDefect d);

  struct CertificateCheck {
    CertificateDefect          defect = CertificateDefect::none;
    std::optional<std::size_t> index;  // offending r_i, 0-based
    std::string                message;

    bool valid() const noexcept { return defect == CertificateDefect::none; }
  };

  CertificateCheck verify_certificate(TrivialityCertificate const& c,
                                      RelatorClosure const&        closure,
                                      Word const&                  w,
                                      std::optional<std::size_t>   edges = {});
  CertificateCheck verify_certificate(TrivialityCertificate const& c,
                                      Presentation const&          p,
                                      Word const&                  w,
                                      std::optional<std::size_t>   edges = {});

  struct AreaBudget {
    std::size_t max_area    = 32;
    std::size_t max_visited = 1'000'000;
    // Cyclic words longer than this are not expanded; 0 means no cap.
    std::size_t max_length = 0;
  };

  struct AreaResult {
    Word                                 word;
    std::optional<std::size_t>           area;
    std::optional<TrivialityCertificate> certificate;
    std::size_t                          visited       = 0;
    std::size_t                          frontier_peak = 0;
    // True when the search space under max_area (and max_length) was
    // exhausted without reaching the empty word.
    bool exhausted = false;
  };

  // A* over cyclic words; a move inserts a closure word at a letter boundary
  // where it cancels at least one letter, then reduces cyclically.  The
  // heuristic ceil(|w| / max relator length) is consistent, so the first
  // goal popped has minimal area.
  AreaResult area_oracle(Presentation const& p,
                         Word const&         w,
                         AreaBudget          budget = {});
  AreaResult area_oracle(RelatorClosure const& closure,
                         Word const&           w,
                         AreaBudget            budget = {});

  // Keeps w = (product of recorded factors) * current() in the free group
  // while the current word is rewritten.
  class DerivationBuilder {
   public:
    DerivationBuilder(Presentation const& p, Word w);

    Word const& current() const noexcept { return _current; }
    Word const& start() const noexcept { return _start; }
    std::vector<ConjugateFactor> const& factors() const noexcept {
      return _factors;
    }

    // Replaces current()[pos, pos+len) by y.  x y^-1 must be a conjugate of a
    // closure word; throws std::invalid_argument otherwise.
    void replace(std::size_t pos, std::size_t len, Word const& y);
    // Same, but x y^-1 may be any word the area oracle certifies trivial.
    void rewrite(std::size_t pos, std::size_t len, Word const& y,
                 AreaBudget budget = {8, 100000, 0});
    // Replaces current() by its free reduction (no factors).
    void reduce_current();

    // Requires current() to be freely trivial.
    TrivialityCertificate finish() const;

   private:
    void push(Word const& conjugator, Word const& relation);

    Presentation const&                               _p;
    RelatorClosure                                    _closure;
    Word                                              _start;
    Word                                              _current;
    std::vector<ConjugateFactor>                      _factors;
    std::unordered_map<Word, std::vector<ConjugateFactor>, WordHash> _cache;
  };

  // Repeatedly rewrites the leftmost adjacent pair x y for which swap(x, y)
  // returns a replacement, freely reducing after each step.
  using PairSwap = std::function<std::optional<Word>(Letter, Letter)>;
  void collect(DerivationBuilder& b, PairSwap const& swap,
               std::size_t max_steps = 1'000'000);

  // Certificate that K(start) = 1 in p = compile_gns(machine, N), where the
  // trace runs from start to the accept word.  Each step contributes, per
  // copy, one factor per rule part and per tape letter outside the parts,
  // plus one k-commutation per k-letter; the hub closes the disc.
  TrivialityCertificate certificate_from_smachine_trace(
      SMachine const&         machine,
      Presentation const&     p,
      ComputationTrace const& trace);

  // Rewrites a certificate over `from` into one over `to` (same generator
  // names) by expanding every relator of `from` that is not a closure word
  // of `to` with a certificate found by the area oracle.
  TrivialityCertificate translate_certificate(TrivialityCertificate const& c,
                                              Presentation const&          from,
                                              Presentation const&          to,
                                              AreaBudget budget = {12, 200000, 0});

  struct DehnRow {
    std::size_t n        = 0;
    std::size_t max_area = 0;
    std::size_t words    = 0;  // trivial cyclic words of length exactly n found
    Word        witness;
    // False when enumeration or some area search was truncated; max_area is
    // then a lower bound.
    bool exact = true;
  };

  struct DehnBudget {
    std::size_t max_visited = 200000;
    AreaBudget  area{32, 200000, 0};
  };

  // Trivial cyclic words are enumerated by splicing closure words into
  // trivial words, starting from the empty word, with intermediate length
  // capped at max_len + max relator length; each is then measured with the
  // area oracle.  Row n reports the maximum over lengths <= n.
  std::vector<DehnRow> dehn_sample(Presentation const& p,
                                   std::size_t         max_len,
                                   DehnBudget          budget = {});

  // Regular permutation representation of a finite group obtained by coset
  // enumeration over the trivial subgroup.
  class FiniteModel {
   public:
    std::size_t order() const noexcept { return _table.size(); }
    // Coset reached from coset `from` by reading w.
    std::size_t act(std::size_t from, Word const& w) const;
    std::size_t element(Word const& w) const { return act(0, w); }
    bool        is_trivial(Word const& w) const { return element(w) == 0; }

   private:
    friend std::optional<FiniteModel> todd_coxeter(Presentation const&, std::size_t);
    std::size_t column(Letter x) const {
      return 2 * generator_of(x) + (is_inverse_letter(x) ? 1 : 0);
    }
    std::vector<std::vector<std::size_t>> _table;
  };

  // Felsch-free HLT enumeration; nullopt if more than max_cosets cosets are
  // ever defined.
  std::optional<FiniteModel> todd_coxeter(Presentation const& p,
                                          std::size_t         max_cosets = 100000);

}  // namespace cgw
