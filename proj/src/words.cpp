#include "cgw/words.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace cgw {

  Alphabet::Alphabet(std::initializer_list<std::string> names) {
    for (auto const& n : names) {
      add(n);
    }
  }

  std::size_t Alphabet::add(std::string const& name) {
    if (name.empty()) {
      throw WordError("empty generator name");
    }
    if (_index.count(name) != 0) {
      throw WordError("duplicate generator name \"" + name + "\"");
    }
    _index.emplace(name, _names.size());
    _names.push_back(name);
    return _names.size() - 1;
  }

  std::size_t Alphabet::intern(std::string const& name) {
    auto it = _index.find(name);
    return it != _index.end() ? it->second : add(name);
  }

  std::optional<std::size_t> Alphabet::find(std::string_view name) const {
    auto it = _index.find(std::string(name));
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t Alphabet::index(std::string_view name) const {
    auto i = find(name);
    if (!i) {
      throw WordError("unknown generator \"" + std::string(name) + "\"");
    }
    return *i;
  }

  Word Word::subword(std::size_t pos, std::size_t len) const {
    return Word(_letters.begin() + pos, _letters.begin() + pos + len);
  }

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    // FNV-1a over the letters.
    std::uint64_t h = 1469598103934665603ULL;
    for (Letter x : w) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

  bool is_reduced(Word const& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == -w[i - 1]) {
        return false;
      }
    }
    return true;
  }

  Word reduce(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter x : w) {
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return Word(std::move(out));
  }

  Word inverse(Word const& w) {
    std::vector<Letter> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      out[w.size() - 1 - i] = -w[i];
    }
    return Word(std::move(out));
  }

  Word concat(Word const& u, Word const& v) {
    Word out = u;
    out.append(v);
    return out;
  }

  Word operator*(Word const& u, Word const& v) {
    return reduce(concat(u, v));
  }

  Word power(Word const& w, long exponent) {
    Word base = exponent < 0 ? inverse(w) : w;
    Word out;
    for (long i = 0; i < std::labs(exponent); ++i) {
      out.append(base);
    }
    return reduce(out);
  }

  Word conjugate(Word const& w, Word const& u) {
    return reduce(concat(concat(u, w), inverse(u)));
  }

  Word commutator(Word const& a, Word const& b) {
    return reduce(concat(concat(a, b), concat(inverse(a), inverse(b))));
  }

  Word rotate(Word const& w, std::size_t k) {
    if (w.empty()) {
      return w;
    }
    k %= w.size();
    std::vector<Letter> out(w.begin() + k, w.end());
    out.insert(out.end(), w.begin(), w.begin() + k);
    return Word(std::move(out));
  }

  CyclicReduction cyclic_reduction(Word const& w) {
    Word        r = reduce(w);
    std::size_t i = 0;
    std::size_t j = r.size();
    while (j - i >= 2 && r[i] == -r[j - 1]) {
      ++i;
      --j;
    }
    return {r.subword(i, j - i), r.subword(0, i)};
  }

  Word cyclically_reduce(Word const& w) {
    return cyclic_reduction(w).core;
  }

  bool is_cyclically_reduced(Word const& w) {
    return is_reduced(w) && (w.size() < 2 || w.front() != -w.back());
  }

  Word substitute(Word const&         w,
                  Substitution const& images,
                  Alphabet const*     names) {
    Word out;
    for (Letter x : w) {
      auto g = generator_of(x);
      if (g >= images.size() || !images[g]) {
        std::string label = names != nullptr && g < names->size()
                                ? names->name(g)
                                : "#" + std::to_string(g);
        throw WordError("no image for generator \"" + label + "\"");
      }
      out.append(is_inverse_letter(x) ? inverse(*images[g]) : *images[g]);
    }
    return reduce(out);
  }

  namespace {
    void occurrences_into(Word const&               pattern,
                          Word const&               target,
                          std::vector<std::size_t>& out) {
      if (pattern.size() > target.size()) {
        return;
      }
      auto last = target.size() - pattern.size();
      for (std::size_t i = 0; i <= last; ++i) {
        if (std::equal(pattern.begin(), pattern.end(), target.begin() + i)) {
          out.push_back(i);
        }
      }
    }
  }  // namespace

  std::vector<std::size_t> find_occurrences(Word const& pattern,
                                            Word const& target,
                                            bool        include_inverses) {
    if (pattern.empty()) {
      throw WordError("find_occurrences: empty pattern");
    }
    std::vector<std::size_t> out;
    occurrences_into(pattern, target, out);
    if (include_inverses) {
      Word inv = inverse(pattern);
      if (inv != pattern) {
        occurrences_into(inv, target, out);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
  }

  std::vector<Word> cyclic_shifts_and_inverses(Word const& w) {
    Word              core = cyclically_reduce(w);
    std::vector<Word> out;
    Word              inv = inverse(core);
    for (std::size_t k = 0; k < core.size(); ++k) {
      out.push_back(rotate(core, k));
      out.push_back(rotate(inv, k));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  namespace {
    // Booth's algorithm: offset of the lexicographically least rotation.
    std::size_t least_rotation(Word const& w) {
      std::size_t const  n = w.size();
      std::vector<long>  fail(2 * n, -1);
      std::size_t        k = 0;
      auto               at = [&](std::size_t i) { return w[i % n]; };
      for (std::size_t j = 1; j < 2 * n; ++j) {
        Letter sj = at(j);
        long   i  = fail[j - k - 1];
        while (i != -1 && sj != at(k + i + 1)) {
          if (sj < at(k + i + 1)) {
            k = j - i - 1;
          }
          i = fail[i];
        }
        if (sj != at(k + i + 1)) {
          if (sj < at(k)) {
            k = j;
          }
          fail[j - k] = -1;
        } else {
          fail[j - k] = i + 1;
        }
      }
      return k % n;
    }
  }  // namespace

  Word cyclic_canonical_form(Word const& w) {
    Word core = cyclically_reduce(w);
    if (core.empty()) {
      return core;
    }
    Word a = rotate(core, least_rotation(core));
    Word inv = inverse(core);
    Word b = rotate(inv, least_rotation(inv));
    return std::min(a, b);
  }

  std::vector<Word> all_reduced_words(std::size_t rank, std::size_t max_length) {
    std::vector<Word> out{Word{}};
    for (std::size_t begin = 0, len = 0; len < max_length; ++len) {
      std::size_t end = out.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t g = 0; g < rank; ++g) {
          for (bool inv : {false, true}) {
            Letter x = make_letter(g, inv);
            if (!out[i].empty() && out[i].back() == -x) {
              continue;
            }
            Word w = out[i];
            w.push_back(x);
            out.push_back(std::move(w));
          }
        }
      }
      begin = end;
    }
    return out;
  }

  namespace {
    template <typename Lookup>
    Word parse_with(std::string_view text, Lookup&& lookup) {
      Word               out;
      std::istringstream in{std::string(text)};
      std::string        token;
      while (in >> token) {
        if (token == kEmptyWordText || token == "<empty>") {
          continue;
        }
        long        exponent = 1;
        std::string name     = token;
        auto        caret    = token.rfind('^');
        if (caret != std::string::npos && caret > 0) {
          auto digits = std::string_view(token).substr(caret + 1);
          auto [ptr, ec] = std::from_chars(
              digits.data(), digits.data() + digits.size(), exponent);
          if (ec != std::errc() || ptr != digits.data() + digits.size()
              || digits.empty()) {
            throw WordError("malformed exponent in \"" + token + "\"");
          }
          name = token.substr(0, caret);
        }
        Letter x = make_letter(lookup(name));
        for (long i = 0; i < std::labs(exponent); ++i) {
          out.push_back(exponent < 0 ? -x : x);
        }
      }
      return out;
    }
  }  // namespace

  Word parse_word(std::string_view text, Alphabet const& alphabet) {
    return parse_with(
        text, [&](std::string const& name) { return alphabet.index(name); });
  }

  Word parse_word_extending(std::string_view text, Alphabet& alphabet) {
    return parse_with(
        text, [&](std::string const& name) { return alphabet.intern(name); });
  }

  std::string format_word(Word const& w, Alphabet const& alphabet) {
    if (w.empty()) {
      return std::string(kEmptyWordText);
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += alphabet.name(generator_of(w[i]));
      if (is_inverse_letter(w[i])) {
        out += "^-1";
      }
    }
    return out;
  }

}  // namespace cgw
