#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "cgw/words.hpp"

using namespace cgw;

namespace {

  Alphabet const ab{"a", "b"};

  Word w(char const* text) { return parse_word(text, ab); }

  // Independent reduction: repeated deletion of the first cancelling pair.
  Word slow_reduce(Word x) {
    for (;;) {
      auto const& l = x.letters();
      std::size_t i = 0;
      while (i + 1 < l.size() && l[i] != -l[i + 1]) {
        ++i;
      }
      if (i + 1 >= l.size()) {
        return x;
      }
      std::vector<Letter> rest(l.begin(), l.begin() + static_cast<long>(i));
      rest.insert(rest.end(), l.begin() + static_cast<long>(i) + 2, l.end());
      x = Word(rest);
    }
  }

}  // namespace

TEST_CASE("reduce") {
  CHECK(reduce(w("a a^-1 b")) == w("b"));
  CHECK(reduce(Word{}) == Word{});
  CHECK(reduce(w("a b b^-1 a^-1 a")) == w("a"));
  CHECK(is_reduced(w("a b a^-1")));
  CHECK_FALSE(is_reduced(w("a b b^-1")));
}

TEST_CASE("reduce agrees with pairwise deletion on random words") {
  std::mt19937                    rng(7);
  std::uniform_int_distribution<> letter(0, 3), len(0, 14);
  Letter const                    letters[] = {1, -1, 2, -2};
  for (int trial = 0; trial < 2000; ++trial) {
    Word x;
    for (int i = len(rng); i > 0; --i) {
      x.push_back(letters[letter(rng)]);
    }
    auto r = reduce(x);
    CHECK(r == slow_reduce(x));
    CHECK(is_reduced(r));
    CHECK(reduce(concat(x, inverse(x))).empty());
  }
}

TEST_CASE("conjugate") {
  CHECK(conjugate(w("a"), Word{}) == w("a"));
  CHECK(conjugate(w("a"), w("b")) == w("b a b^-1"));
  CHECK(conjugate(w("a"), w("a")) == w("a"));
  CHECK(commutator(w("a"), w("b")) == w("a b a^-1 b^-1"));
}

TEST_CASE("substitute") {
  Alphabet ys{"y_1", "y_2", "s_1", "s_2"};
  auto     y = [&](char const* t) { return parse_word(t, ys); };
  Substitution images{y("s_1"), y("s_2"), std::nullopt, std::nullopt};
  CHECK(substitute(y("y_1 y_2"), images) == y("s_1 s_2"));
  CHECK(substitute(y("y_1 y_1^-1"), images) == Word{});
  Substitution to_ab{w("a b"), std::nullopt};
  CHECK(substitute(w("a^-1"), to_ab) == w("b^-1 a^-1"));
  CHECK_THROWS_AS(substitute(w("b"), to_ab, &ab), WordError);
}

TEST_CASE("find_occurrences") {
  CHECK(find_occurrences(w("a b"), w("a b a b"), false) == std::vector<std::size_t>{0, 2});
  CHECK(find_occurrences(w("a b"), w("b a^-1"), true).empty());
  CHECK(find_occurrences(w("a"), w("a^-1"), true) == std::vector<std::size_t>{0});
  CHECK(find_occurrences(w("a"), w("a^-1"), false).empty());
}

TEST_CASE("cyclic_shifts_and_inverses") {
  auto s = cyclic_shifts_and_inverses(w("a b"));
  CHECK(s.size() == 4);
  for (char const* t : {"a b", "b a", "b^-1 a^-1", "a^-1 b^-1"}) {
    CHECK(std::count(s.begin(), s.end(), w(t)) == 1);
  }
  CHECK(cyclic_shifts_and_inverses(w("a")).size() == 2);
  CHECK(cyclic_shifts_and_inverses(w("a b a b")).size() == 4);
}

TEST_CASE("cyclic reduction and canonical form") {
  auto cr = cyclic_reduction(w("b a b a b^-1"));
  CHECK(cr.core == w("a b a"));
  CHECK(reduce(concat(concat(cr.conjugator, cr.core), inverse(cr.conjugator)))
        == w("b a b a b^-1"));
  CHECK(cyclically_reduce(w("a b a^-1")) == w("b"));
  CHECK(cyclic_canonical_form(w("b a")) == cyclic_canonical_form(w("a^-1 b^-1")));
  CHECK(cyclic_canonical_form(w("a a b")) != cyclic_canonical_form(w("a b b")));
}

TEST_CASE("all_reduced_words counts 1 + 4 + 12 + 36") {
  auto all = all_reduced_words(2, 3);
  CHECK(all.size() == 53);
  CHECK(all.front().empty());
  CHECK(std::is_sorted(all.begin(), all.end(),
                       [](Word const& x, Word const& y) { return x.size() < y.size(); }));
}

TEST_CASE("text format") {
  CHECK(parse_word("a^3 b^-1", ab) == w("a a a b^-1"));
  CHECK(parse_word("<empty>", ab).empty());
  CHECK(parse_word("", ab).empty());
  CHECK(format_word(Word{}, ab) == "ε");
  CHECK(format_word(w("a b^-1"), ab) == "a b^-1");
  CHECK_THROWS_AS(parse_word("c", ab), WordError);
  Alphabet grow;
  CHECK(parse_word_extending("x y x^-1", grow).size() == 3);
  CHECK(grow.size() == 2);
}
