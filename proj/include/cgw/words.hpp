#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cgw {

  class WordError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A letter is a signed generator index: generator g is stored as g + 1 and
  // its formal inverse as -(g + 1).  Zero is never a valid letter.
  using Letter = std::int32_t;

  constexpr Letter make_letter(std::size_t generator, bool inverse = false) {
    auto x = static_cast<Letter>(generator + 1);
    return inverse ? -x : x;
  }

  constexpr std::size_t generator_of(Letter x) {
    return static_cast<std::size_t>(x < 0 ? -x : x) - 1;
  }

  constexpr bool is_inverse_letter(Letter x) { return x < 0; }

  // Ordered list of generator names.  Every generator carries a formal
  // inverse, so the pairing x <-> x^-1 is a fixed-point free involution.
  class Alphabet {
   public:
    Alphabet() = default;
    Alphabet(std::initializer_list<std::string> names);

    // Throws WordError on duplicates.
    std::size_t add(std::string const& name);
    // Returns the index of `name`, adding it if absent.
    std::size_t intern(std::string const& name);

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index(std::string_view name) const;

    std::string const& name(std::size_t generator) const {
      return _names.at(generator);
    }
    std::size_t size() const noexcept { return _names.size(); }
    std::vector<std::string> const& names() const noexcept { return _names; }

    Letter letter(std::string_view name, bool inverse = false) const {
      return make_letter(index(name), inverse);
    }

    bool operator==(Alphabet const& that) const {
      return _names == that._names;
    }

   private:
    std::vector<std::string>                     _names;
    std::unordered_map<std::string, std::size_t> _index;
  };

  // A finite sequence of letters.  Words are not reduced implicitly; the
  // group operations below (operator*, conjugate, substitute, ...) always
  // return freely reduced words.
  class Word {
   public:
    using value_type     = Letter;
    using const_iterator = std::vector<Letter>::const_iterator;

    Word() = default;
    Word(std::initializer_list<Letter> letters) : _letters(letters) {}
    explicit Word(std::vector<Letter> letters) : _letters(std::move(letters)) {}
    template <typename It>
    Word(It first, It last) : _letters(first, last) {}

    std::size_t size() const noexcept { return _letters.size(); }
    bool        empty() const noexcept { return _letters.empty(); }
    Letter      operator[](std::size_t i) const { return _letters[i]; }
    Letter      front() const { return _letters.front(); }
    Letter      back() const { return _letters.back(); }

    const_iterator begin() const noexcept { return _letters.begin(); }
    const_iterator end() const noexcept { return _letters.end(); }

    void push_back(Letter x) { _letters.push_back(x); }
    void pop_back() { _letters.pop_back(); }
    void append(Word const& w) {
      _letters.insert(_letters.end(), w.begin(), w.end());
    }

    std::vector<Letter> const& letters() const noexcept { return _letters; }

    // Substring [pos, pos + len).
    Word subword(std::size_t pos, std::size_t len) const;

    auto operator<=>(Word const&) const = default;
    bool operator==(Word const&) const  = default;

   private:
    std::vector<Letter> _letters;
  };

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

  bool is_reduced(Word const& w);
  Word reduce(Word const& w);
  Word inverse(Word const& w);
  Word concat(Word const& u, Word const& v);

  // Reduced product u * v.
  Word operator*(Word const& u, Word const& v);
  Word power(Word const& w, long exponent);

  // The conjugate u w u^-1, reduced.
  Word conjugate(Word const& w, Word const& u);
  // [a, b] = a b a^-1 b^-1, reduced.
  Word commutator(Word const& a, Word const& b);

  // Rotation by k letters: w[k..] w[..k].
  Word rotate(Word const& w, std::size_t k);

  struct CyclicReduction {
    Word core;
    // w = conjugator * core * conjugator^-1 freely.
    Word conjugator;
  };
  CyclicReduction cyclic_reduction(Word const& w);
  Word            cyclically_reduce(Word const& w);
  bool            is_cyclically_reduced(Word const& w);

  // Homomorphic image of w; `images[g]` is the image of generator g.  Throws
  // WordError naming the first generator of w without an image.
  using Substitution = std::vector<std::optional<Word>>;
  Word substitute(Word const&          w,
                  Substitution const&  images,
                  Alphabet const*      names = nullptr);

  // Start offsets of `pattern` (and of pattern^-1 if requested) in `target`.
  std::vector<std::size_t> find_occurrences(Word const& pattern,
                                            Word const& target,
                                            bool        include_inverses);

  // Cyclic shifts of w and of w^-1, deduplicated and sorted.  The input is
  // cyclically reduced first.
  std::vector<Word> cyclic_shifts_and_inverses(Word const& w);

  // Least rotation of the cyclically reduced word w or of w^-1 (lex order on
  // letters).  Two cyclically reduced words have equal keys iff they are
  // conjugate up to inversion in the free group.
  Word cyclic_canonical_form(Word const& w);

  // Every reduced word of length <= max_length over generators 0..rank-1,
  // shortest first.
  std::vector<Word> all_reduced_words(std::size_t rank, std::size_t max_length);

  // Text format: whitespace separated generator names, inverse marked by a
  // trailing "^-1"; "x^n" is accepted as shorthand for n copies.  The empty
  // word is written "ε" ("<empty>" and the empty string also parse).
  Word        parse_word(std::string_view text, Alphabet const& alphabet);
  // As above, adding unknown names to `alphabet`.
  Word        parse_word_extending(std::string_view text, Alphabet& alphabet);
  std::string format_word(Word const& w, Alphabet const& alphabet);

  inline constexpr std::string_view kEmptyWordText = "ε";

}  // namespace cgw
