#pragma once

// Words over the two-letter alphabet {x0, x1}, the shuffle Hopf algebra on
// them, and the word classes generated by "at most one doubled letter".
//
// String format used everywhere (tests, CLI, serialization): ASCII '0'/'1',
// leftmost character = leftmost letter, empty string = empty word.

#include "zigzag/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zigzag {

struct Word {
  // letter i sits in bit i; 0 = x0, 1 = x1
  std::uint32_t bits = 0;
  std::uint32_t len = 0;

  static constexpr std::uint32_t max_len = 31;

  Word() = default;
  Word(std::uint32_t b, std::uint32_t l) : bits(b), len(l) {}

  static Word parse(const std::string& s) {
    if (s.size() > max_len) throw std::invalid_argument("word too long: " + s);
    Word w;
    w.len = static_cast<std::uint32_t>(s.size());
    for (std::uint32_t i = 0; i < w.len; ++i) {
      if (s[i] == '1')
        w.bits |= (1u << i);
      else if (s[i] != '0')
        throw std::invalid_argument("word characters must be '0' or '1': " + s);
    }
    return w;
  }

  std::string str() const {
    std::string s(len, '0');
    for (std::uint32_t i = 0; i < len; ++i)
      if (letter(i)) s[i] = '1';
    return s;
  }

  bool empty() const { return len == 0; }
  int letter(std::uint32_t i) const { return static_cast<int>((bits >> i) & 1u); }
  int first() const { return letter(0); }
  int last() const { return letter(len - 1); }

  Word append(int b) const {
    if (len >= max_len) throw std::length_error("word length limit");
    Word w = *this;
    if (b) w.bits |= (1u << len);
    ++w.len;
    return w;
  }

  Word concat(const Word& o) const {
    if (len + o.len > max_len) throw std::length_error("word length limit");
    Word w;
    w.len = len + o.len;
    w.bits = bits | (o.bits << len);
    return w;
  }

  Word prefix(std::uint32_t n) const { return Word(bits & ((n >= 32 ? 0xffffffffu : (1u << n) - 1u)), n); }
  Word suffix_from(std::uint32_t pos) const { return Word(bits >> pos, len - pos); }
  Word drop_first() const { return suffix_from(1); }
  Word drop_last() const { return prefix(len - 1); }

  Word reversed() const {
    Word w;
    w.len = len;
    for (std::uint32_t i = 0; i < len; ++i)
      if (letter(i)) w.bits |= (1u << (len - 1 - i));
    return w;
  }

  // x0 <-> x1
  Word swapped() const {
    Word w;
    w.len = len;
    w.bits = (~bits) & (len >= 32 ? 0xffffffffu : ((1u << len) - 1u));
    return w;
  }

  bool operator==(const Word& o) const { return len == o.len && bits == o.bits; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  // graded order: weight first, then lexicographic with x0 < x1
  bool operator<(const Word& o) const {
    if (len != o.len) return len < o.len;
    for (std::uint32_t i = 0; i < len; ++i) {
      int a = letter(i), b = o.letter(i);
      if (a != b) return a < b;
    }
    return false;
  }
};

// alternating word of given first letter and length, e.g. alt(0,3) = "010"
inline Word alternating_word(int first, std::uint32_t length) {
  Word w;
  for (std::uint32_t i = 0; i < length; ++i) w = w.append((first + i) % 2);
  return w;
}

inline Word x0_word() { return Word(0, 1); }
inline Word x1_word() { return Word(1, 1); }

// ---------------------------------------------------------------------------
// WordPoly: finite rational combinations of words (no zero coefficients kept)

struct WordPoly {
  std::map<Word, Rational> terms;

  void add(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  Rational coeff(const Word& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? Rational(0) : it->second;
  }

  bool operator==(const WordPoly& o) const { return terms == o.terms; }

  WordPoly& operator+=(const WordPoly& o) {
    for (const auto& [w, c] : o.terms) add(w, c);
    return *this;
  }

  Rational total_mass() const {
    Rational m = 0;
    for (const auto& [w, c] : terms) m += c;
    return m;
  }
};

// shuffle product, by the left recursion
//   x_i w sh x_j w' = x_i (w sh x_j w') + x_j (x_i w sh w')
inline WordPoly shuffle(const Word& u, const Word& v) {
  WordPoly r;
  if (u.empty()) {
    r.add(v, 1);
    return r;
  }
  if (v.empty()) {
    r.add(u, 1);
    return r;
  }
  Word head_u = Word(static_cast<std::uint32_t>(u.first()), 1);
  Word head_v = Word(static_cast<std::uint32_t>(v.first()), 1);
  for (const auto& [w, c] : shuffle(u.drop_first(), v).terms) r.add(head_u.concat(w), c);
  for (const auto& [w, c] : shuffle(u, v.drop_first()).terms) r.add(head_v.concat(w), c);
  return r;
}

inline WordPoly shuffle(const WordPoly& a, const WordPoly& b) {
  WordPoly r;
  for (const auto& [u, cu] : a.terms)
    for (const auto& [v, cv] : b.terms)
      for (const auto& [w, c] : shuffle(u, v).terms) r.add(w, c * cu * cv);
  return r;
}

// all |w|+1 splittings w = u v, left to right
inline std::vector<std::pair<Word, Word>> deconcatenations(const Word& w) {
  std::vector<std::pair<Word, Word>> out;
  out.reserve(w.len + 1);
  for (std::uint32_t i = 0; i <= w.len; ++i) out.emplace_back(w.prefix(i), w.suffix_from(i));
  return out;
}

struct SignedWord {
  int sign;
  Word word;
};

// antipode: w -> (-1)^|w| reverse(w)
inline SignedWord antipode(const Word& w) { return {(w.len % 2 == 0) ? 1 : -1, w.reversed()}; }

// ---------------------------------------------------------------------------
// Hoffman word classes.
//
// Mode B0: words with no "11", no "000" and at most one "00" survive the
// quotient; the level counts the (overlapping) "00" occurrences. Mode B1 is
// the letter-swapped mirror (no "00", no "111", at most one "11").

enum class AlphabetMode { B0, B1 };

enum class HoffmanVariant {
  B0_level0,
  B0_level1,
  B1_level0,
  B1_level1,
  ideal_IH,
  ideal_IHhat,
  other
};

struct HoffmanClass {
  HoffmanVariant variant = HoffmanVariant::other;
  int level = 0;  // meaningful for non-ideal words
  std::optional<int> first_letter, last_letter;

  bool in_ideal() const {
    return variant == HoffmanVariant::ideal_IH || variant == HoffmanVariant::ideal_IHhat;
  }
};

inline HoffmanClass classify(const Word& w, AlphabetMode mode) {
  const int d = (mode == AlphabetMode::B0) ? 0 : 1;  // letter whose double is allowed once
  int doubles = 0, bad_doubles = 0;
  bool triple = false;
  for (std::uint32_t i = 0; i + 1 < w.len; ++i) {
    if (w.letter(i) == w.letter(i + 1)) {
      if (w.letter(i) == d) {
        ++doubles;
        if (i + 2 < w.len && w.letter(i + 2) == d) triple = true;
      } else {
        ++bad_doubles;
      }
    }
  }
  HoffmanClass hc;
  if (bad_doubles > 0 || triple || doubles > 1) {
    hc.variant = (mode == AlphabetMode::B0) ? HoffmanVariant::ideal_IH : HoffmanVariant::ideal_IHhat;
    return hc;
  }
  hc.level = doubles;
  if (mode == AlphabetMode::B0)
    hc.variant = doubles ? HoffmanVariant::B0_level1 : HoffmanVariant::B0_level0;
  else
    hc.variant = doubles ? HoffmanVariant::B1_level1 : HoffmanVariant::B1_level0;
  if (!w.empty()) {
    hc.first_letter = w.first();
    hc.last_letter = w.last();
  }
  return hc;
}

// Basis words of one weight, level-0 block first, each block in lexicographic
// order. Constructive; the brute-force filter through classify() is the test
// oracle for this.
inline std::vector<Word> enumerate_basis(AlphabetMode mode, int weight) {
  if (weight < 0) throw std::invalid_argument("enumerate_basis: negative weight");
  std::vector<Word> level0, level1;
  const auto n = static_cast<std::uint32_t>(weight);
  if (weight == 0) {
    level0.push_back(Word{});
  } else {
    level0.push_back(alternating_word(0, n));
    level0.push_back(alternating_word(1, n));
  }
  if (weight >= 2) {
    const int d = (mode == AlphabetMode::B0) ? 0 : 1;
    for (std::uint32_t p = 0; p + 1 < n; ++p) {
      // doubled letter at positions p, p+1; alternating on both sides
      Word w;
      for (std::uint32_t i = 0; i < n; ++i) {
        int letter;
        if (i <= p)
          letter = (d + (p - i)) % 2 == 0 ? d : 1 - d;
        else
          letter = (i - (p + 1)) % 2 == 0 ? d : 1 - d;
        w = w.append(letter);
      }
      level1.push_back(w);
    }
    std::sort(level1.begin(), level1.end());
  }
  std::sort(level0.begin(), level0.end());
  std::vector<Word> out = std::move(level0);
  out.insert(out.end(), level1.begin(), level1.end());
  return out;
}

// every basis word of weight <= cutoff, in (level, lex) order per weight
inline std::vector<Word> enumerate_basis_upto(AlphabetMode mode, int cutoff) {
  std::vector<Word> out;
  for (int n = 0; n <= cutoff; ++n) {
    auto ws = enumerate_basis(mode, n);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

// all 2^n words of a given weight, lexicographic
inline std::vector<Word> all_words(int weight) {
  std::vector<Word> out;
  const auto n = static_cast<std::uint32_t>(weight);
  std::vector<Word> cur{Word{}};
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    next.reserve(cur.size() * 2);
    for (const auto& w : cur) {
      next.push_back(w.append(0));
      next.push_back(w.append(1));
    }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

}  // namespace zigzag
