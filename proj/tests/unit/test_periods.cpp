#include "zigzag/periods.hpp"
#include "zigzag/polylog.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace zigzag;

namespace {

const SeriesBundle& bundle13() {
  static SeriesBundle b = SeriesBundle::build(13);
  return b;
}

Rational coefficient_of(const PeriodResult& p) {
  REQUIRE(p.symbolic.terms().size() == 1);
  return p.symbolic.terms().begin()->second;
}

}  // namespace

TEST_CASE("closed form values") {
  CHECK(coefficient_of(closed_form(3)) == 6);
  CHECK(coefficient_of(closed_form(4)) == 20);
  CHECK(coefficient_of(closed_form(5)) == Rational(441, 8));
  CHECK(coefficient_of(closed_form(6)) == 168);
  CHECK(coefficient_of(closed_form(7)) == Rational(33759, 64));
  CHECK(coefficient_of(closed_form(8)) == 1716);
  CHECK_THROWS_AS(closed_form(2), std::invalid_argument);
}

TEST_CASE("period extraction from S agrees with the closed form exactly") {
  const auto& b = bundle13();
  for (int n = 3; n <= 8; ++n) {
    PeriodResult from_s = period_from_S(b, n);
    PeriodResult closed = closed_form(n);
    INFO("n = " << n);
    CHECK(is_single_odd_zeta(from_s.symbolic, n));
    CHECK(from_s.symbolic == closed.symbolic);
  }
}

TEST_CASE("specific extracted values") {
  const auto& b = bundle13();
  CHECK(coefficient_of(period_from_S(b, 3)) == 6);
  CHECK(coefficient_of(period_from_S(b, 4)) == 20);
  CHECK(coefficient_of(period_from_S(b, 5)) == Rational(441, 8));
}

TEST_CASE("cutoff guard") {
  const auto& b = bundle13();
  CHECK_THROWS_AS(period_from_S(b, 9), CutoffTooSmall);
  SeriesBundle small = SeriesBundle::build(5);
  CHECK_THROWS_AS(period_from_S(small, 5), CutoffTooSmall);
  CHECK_NOTHROW(period_from_S(small, 4));
}

TEST_CASE("denominator structure by parity") {
  for (int n = 3; n <= 8; ++n) {
    Rational q = coefficient_of(closed_form(n));
    Int den = denominator(q);
    if (n % 2 == 0) {
      CHECK(den == 1);  // even loop orders are integers, no 2-powers below
    } else {
      // denominator divides 2^{2n-4}
      Int pow2 = Int(1) << (2 * n - 4);
      CHECK(pow2 % den == 0);
    }
  }
}

TEST_CASE("reg_value_at_zero matches period_from_S") {
  const auto& b = bundle13();
  for (int n = 3; n <= 8; ++n) {
    Word w = period_f_word(n);
    CHECK(w.len == static_cast<std::uint32_t>(n - 2));
    CHECK(w.last() == 1);
    CHECK(reg_value_at_zero(b, w) == period_from_S(b, n).symbolic);
  }
  CHECK_THROWS_AS(reg_value_at_zero(b, Word::parse("10")), std::invalid_argument);  // ends in x0
  CHECK_THROWS_AS(reg_value_at_zero(b, Word::parse("110101")), std::invalid_argument);
}

TEST_CASE("periods carry no unknowns") {
  const auto& b = bundle13();
  for (int n = 3; n <= 8; ++n) CHECK_FALSE(period_from_S(b, n).symbolic.has_unknowns());
}

TEST_CASE("numeric limit of f at the origin recovers the period") {
  SeriesBundle b = SeriesBundle::build(10);
  SvEvaluator ev(b);
  for (int n : {3, 4}) {
    Real limit = f2w_value_at_zero(ev, period_f_word(n));
    long double truth = closed_form(n).numeric_value;
    INFO("n = " << n);
    CHECK(fabsl(limit - truth) < 1e-6L);
  }
}
