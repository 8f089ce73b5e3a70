#include "zigzag/word.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace zigzag;

namespace {

Word W(const char* s) { return Word::parse(s); }

WordPoly poly_of(std::initializer_list<std::pair<const char*, int>> terms) {
  WordPoly p;
  for (auto& [s, c] : terms) p.add(W(s), c);
  return p;
}

Word random_word(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  int n = len(rng);
  Word w;
  for (int i = 0; i < n; ++i) w = w.append(static_cast<int>(rng() & 1u));
  return w;
}

}  // namespace

TEST_CASE("word string round trip and basic structure") {
  CHECK(W("").empty());
  CHECK(W("0101").str() == "0101");
  CHECK(W("0101").reversed().str() == "1010");
  CHECK(W("001").swapped().str() == "110");
  CHECK(W("01").concat(W("10")).str() == "0110");
  CHECK(W("0110").drop_first().str() == "110");
  CHECK(W("0110").drop_last().str() == "011");
  Word w = W("01101");
  CHECK(w.reversed().reversed() == w);
}

TEST_CASE("shuffle products") {
  CHECK(shuffle(W("0"), W("1")) == poly_of({{"01", 1}, {"10", 1}}));
  CHECK(shuffle(W("0"), W("0")) == poly_of({{"00", 2}}));
  CHECK(shuffle(W("01"), W("0")) == poly_of({{"010", 1}, {"001", 2}}));
  // total coefficient mass is binomial(|u|+|v|, |u|)
  CHECK(shuffle(W("0101"), W("011")).total_mass() == Rational(binomial(7, 4)));
}

TEST_CASE("shuffle is commutative and associative") {
  // exhaustive on short words
  for (int la = 0; la <= 3; ++la)
    for (int lb = 0; la + lb <= 5; ++lb)
      for (const auto& u : all_words(la))
        for (const auto& v : all_words(lb)) CHECK(shuffle(u, v) == shuffle(v, u));

  std::mt19937 rng(7);
  for (int it = 0; it < 40; ++it) {
    Word a = random_word(rng, 3), b = random_word(rng, 3), c = random_word(rng, 2);
    if (a.len + b.len + c.len > 8) continue;
    WordPoly ab = shuffle(a, b), bc = shuffle(b, c);
    WordPoly left, right;
    for (const auto& [w, q] : ab.terms)
      for (const auto& [x, r] : shuffle(w, c).terms) left.add(x, q * r);
    for (const auto& [w, q] : bc.terms)
      for (const auto& [x, r] : shuffle(a, w).terms) right.add(x, q * r);
    CHECK(left == right);
  }
}

TEST_CASE("deconcatenations") {
  auto d = deconcatenations(W("01"));
  REQUIRE(d.size() == 3);
  CHECK(d[0].first.str() == "");
  CHECK(d[0].second.str() == "01");
  CHECK(d[1].first.str() == "0");
  CHECK(d[1].second.str() == "1");
  CHECK(d[2].first.str() == "01");
  CHECK(d[2].second.str() == "");
  CHECK(deconcatenations(W("")).size() == 1);
  CHECK(deconcatenations(W("010")).size() == 4);
}

TEST_CASE("Hopf compatibility of shuffle and deconcatenation") {
  // Delta(u sh v) = Delta(u) sh Delta(v), as maps into pairs of words
  using PairPoly = std::map<std::pair<Word, Word>, Rational>;
  auto add = [](PairPoly& p, const Word& a, const Word& b, const Rational& c) {
    auto key = std::make_pair(a, b);
    p[key] += c;
    if (p[key] == 0) p.erase(key);
  };
  for (int la = 0; la <= 3; ++la)
    for (int lb = 0; la + lb <= 6; ++lb)
      for (const auto& u : all_words(la))
        for (const auto& v : all_words(lb)) {
          PairPoly lhs, rhs;
          for (const auto& [w, c] : shuffle(u, v).terms)
            for (const auto& [w1, w2] : deconcatenations(w)) add(lhs, w1, w2, c);
          for (const auto& [u1, u2] : deconcatenations(u))
            for (const auto& [v1, v2] : deconcatenations(v))
              for (const auto& [a, ca] : shuffle(u1, v1).terms)
                for (const auto& [b, cb] : shuffle(u2, v2).terms) add(rhs, a, b, ca * cb);
          CHECK(lhs == rhs);
        }
}

TEST_CASE("antipode") {
  auto a = antipode(W("01"));
  CHECK(a.sign == 1);
  CHECK(a.word.str() == "10");
  a = antipode(W("0"));
  CHECK(a.sign == -1);
  CHECK(a.word.str() == "0");
  a = antipode(W("011"));
  CHECK(a.sign == -1);
  CHECK(a.word.str() == "110");
}

TEST_CASE("classify") {
  CHECK(classify(W("11"), AlphabetMode::B0).variant == HoffmanVariant::ideal_IH);
  auto c = classify(W("0100"), AlphabetMode::B0);
  CHECK(c.variant == HoffmanVariant::B0_level1);
  CHECK(c.first_letter == 0);
  CHECK(c.last_letter == 0);
  CHECK(classify(W("00100"), AlphabetMode::B0).variant == HoffmanVariant::ideal_IH);
  CHECK(classify(W("000"), AlphabetMode::B0).variant == HoffmanVariant::ideal_IH);
  CHECK(classify(W("00"), AlphabetMode::B1).variant == HoffmanVariant::ideal_IHhat);
  CHECK(classify(W("0101"), AlphabetMode::B0).level == 0);
  CHECK(classify(W(""), AlphabetMode::B0).variant == HoffmanVariant::B0_level0);
  CHECK_FALSE(classify(W(""), AlphabetMode::B0).first_letter.has_value());
}

TEST_CASE("classify is stable under reversal and letter-swap duality") {
  std::mt19937 rng(11);
  for (int it = 0; it < 400; ++it) {
    Word w = random_word(rng, 12);
    auto c = classify(w, AlphabetMode::B0);
    auto cr = classify(w.reversed(), AlphabetMode::B0);
    CHECK(c.in_ideal() == cr.in_ideal());
    CHECK(c.level == cr.level);
    auto cs = classify(w.swapped(), AlphabetMode::B1);
    CHECK(c.in_ideal() == cs.in_ideal());
    CHECK(c.level == cs.level);
  }
}

TEST_CASE("enumerate_basis") {
  auto b0 = enumerate_basis(AlphabetMode::B0, 0);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0].empty());

  auto b2 = enumerate_basis(AlphabetMode::B0, 2);
  REQUIRE(b2.size() == 3);
  CHECK(b2[0].str() == "01");
  CHECK(b2[1].str() == "10");
  CHECK(b2[2].str() == "00");

  auto b3 = enumerate_basis(AlphabetMode::B0, 3);
  REQUIRE(b3.size() == 4);
  CHECK(b3[0].str() == "010");
  CHECK(b3[1].str() == "101");
  CHECK(b3[2].str() == "001");
  CHECK(b3[3].str() == "100");
}

TEST_CASE("basis counts match the brute-force filter") {
  for (int n = 0; n <= 14; ++n) {
    auto basis = enumerate_basis(AlphabetMode::B0, n);
    std::size_t brute = 0;
    for (const auto& w : all_words(n))
      if (!classify(w, AlphabetMode::B0).in_ideal()) ++brute;
    CHECK(basis.size() == brute);
    // and the constructed words really are basis words, without duplicates
    std::set<std::string> seen;
    for (const auto& w : basis) {
      CHECK_FALSE(classify(w, AlphabetMode::B0).in_ideal());
      CHECK(seen.insert(w.str()).second);
    }
    auto basis1 = enumerate_basis(AlphabetMode::B1, n);
    std::size_t brute1 = 0;
    for (const auto& w : all_words(n))
      if (!classify(w, AlphabetMode::B1).in_ideal()) ++brute1;
    CHECK(basis1.size() == brute1);
  }
}
