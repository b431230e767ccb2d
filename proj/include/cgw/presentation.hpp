#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cgw/smachine.hpp"
#include "cgw/turing.hpp"
#include "cgw/words.hpp"

namespace cgw {

  enum class Role { tape, state, k, rule, rho, b, other };

  std::string_view to_string(Role role);
  Role             role_from_string(std::string_view text);

  struct GeneratorInfo {
    Role role = Role::other;
    // 1..N for letters copied into the N disjoint alphabets, 0 if shared.
    std::size_t copy = 0;
    // Name without the copy suffix.
    std::string base;
    bool operator==(GeneratorInfo const&) const = default;
  };

  // Name of the copy-th copy of a base letter: "x#copy".
  std::string copy_name(std::string_view base, std::size_t copy);
  std::string k_name(std::size_t i);

  // Finite presentation <X | R> with role-tagged generators.  Relators are
  // stored freely and cyclically reduced; relations written as equalities
  // u = v are stored as u v^-1.
  class Presentation {
   public:
    std::size_t add_generator(std::string const& name,
                              Role               role,
                              std::size_t        copy = 0,
                              std::string        base = {});
    // Throws std::invalid_argument unless `r` is nonempty, cyclically
    // reduced and over declared generators.
    void add_relator(Word r);
    void add_relation(Word const& lhs, Word const& rhs);

    Alphabet const&                   alphabet() const noexcept { return _alphabet; }
    std::vector<GeneratorInfo> const& generators() const noexcept { return _info; }
    std::vector<Word> const&          relators() const noexcept { return _relators; }
    GeneratorInfo const& info(std::size_t g) const { return _info.at(g); }

    std::size_t count(Role role) const;
    Letter      letter(std::string_view name) const {
      return _alphabet.letter(name);
    }
    Word        parse(std::string_view text) const {
      return parse_word(text, _alphabet);
    }
    std::string format(Word const& w) const { return format_word(w, _alphabet); }

    std::size_t copies = 1;
    std::string source;

    bool operator==(Presentation const&) const = default;

   private:
    Alphabet                   _alphabet;
    std::vector<GeneratorInfo> _info;
    std::vector<Word>          _relators;
  };

  // Relators as formatted strings, sorted; generators as sorted
  // (name, role, copy) triples.  Equal summaries mean equal presentations up
  // to the order of generators and relators.
  struct PresentationShape {
    std::vector<std::string> generators;
    std::vector<std::string> relators;
    bool operator==(PresentationShape const&) const = default;
  };
  PresentationShape shape_of(Presentation const& p);

  // K(w) = k_1 w^(1) k_2 w^(2) ... k_N w^(N).
  struct HubWord {
    Word        word;
    std::size_t copies      = 0;
    std::size_t base_length = 0;
  };

  // Builds K(w) for w over `base`, interning the copied letters "x#i" and the
  // letters k_1..k_N into `target`.
  HubWord hub_word(Word const&     w,
                   Alphabet const& base,
                   std::size_t     copies,
                   Alphabet&       target);

  inline constexpr std::size_t kDefaultCopies = 28;

  // G_{m,n}: per copy q_i^{r_j} = a_j q_i, a r = r a, plus k r = r k and the
  // hub K(q_1 ... q_n).  The rule letters r_j and the k-letters are shared by
  // all copies.  Generator count N(1 + n + m) + m; relator count
  // N(nm + m^2 + m) + 1.
  Presentation compile_gmn(std::size_t m,
                           std::size_t n,
                           std::size_t copies = kDefaultCopies);

  // The S-machine whose group G_N(S) is G_{m,n}: classes {▷}, {q_1}, ...,
  // {q_n}; rule r_j = [q_1 -> a_j q_1, ..., q_n -> a_j q_n]; accept word
  // ▷ q_1 ... q_n.
  SMachine gmn_machine(std::size_t m, std::size_t n);

  // G(M): (u q v)^r = u' q' v' per transition, a r = r a, k r = r k, hub
  // K(W_0).  x^r means r x r^-1.
  Presentation compile_gm(TuringMachine const& tm,
                          std::size_t          copies = kDefaultCopies);

  // G_N(S): U_i^r = V_i for every part of every rule, a r = r a, k r = r k,
  // hub K(W_0).  Delimiter letters are erased.
  Presentation compile_gns(SMachine const& machine,
                           std::size_t     copies = kDefaultCopies);

  // Image of an admissible word of `machine` in copy `copy` of
  // compile_gns(machine, N); delimiter letters are dropped.
  Word gns_copy(SMachine const&       machine,
                Presentation const&   p,
                Word const&           w,
                std::size_t           copy);
  // K(w) inside compile_gns(machine, N).
  Word gns_hub(SMachine const&       machine,
               Presentation const&   p,
               AdmissibleWord const& w);

  // H_{m,n}: adds rho and b_1..b_m with rho k = k rho, rho q = q rho,
  // rho a = a rho (all copies), a^rho = a b, a b = b a and q b = b q (first
  // copy).  `b_count` must equal the number of first-copy tape letters.
  Presentation compile_hmn(Presentation const& base, std::size_t b_count);

  // Renames letters of `w` from `from` to `to` by generator name.
  Word transfer(Word const& w, Alphabet const& from, Alphabet const& to);

}  // namespace cgw
