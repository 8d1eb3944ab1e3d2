#include <doctest.h>

#include <cmath>

#include "ugkms/number.hpp"

using ugkms::Number;

TEST_CASE("parse rationals and decimals exactly") {
  CHECK(Number::parse("3/4") == Number::rational(3, 4));
  CHECK(Number::parse("-6/8").str() == "-3/4");
  CHECK(Number::parse("0.25") == Number::rational(1, 4));
  CHECK(Number::parse("0585") == Number(585));
  CHECK(Number::parse("1e-3") == Number::rational(1, 1000));
  CHECK(Number::parse(" 2.5E1 ") == Number(25));
  CHECK(Number::parse("0.1").is_exact());
  CHECK_THROWS_AS(Number::parse("1/0"), ugkms::NumberParseError);
  CHECK_THROWS_AS(Number::parse("abc"), ugkms::NumberParseError);
  CHECK_THROWS_AS(Number::parse(""), ugkms::NumberParseError);
}

TEST_CASE("exact arithmetic stays exact, floats are contagious") {
  Number a = Number::rational(1, 3);
  Number b = a + a * Number(2);
  CHECK(b.is_exact());
  CHECK(b == Number(1));
  Number f = a + Number(0.5);
  CHECK_FALSE(f.is_exact());
  CHECK(f.to_double() == doctest::Approx(5.0 / 6));
}

TEST_CASE("printing") {
  CHECK(Number::rational(2, 4).str() == "1/2");
  CHECK(Number(7).str() == "7");
  CHECK(Number(std::sqrt(2.0) - 1).str() == "0.414213562373");
  CHECK(Number(0.125).str() == "0.125");
}

TEST_CASE("powers") {
  CHECK(ugkms::pow_int(Number::rational(2, 3), 3) == Number::rational(8, 27));
  CHECK(ugkms::pow_int(Number(2), -2) == Number::rational(1, 4));
  CHECK(ugkms::pow_real(Number(2), Number(-2)) == Number::rational(1, 4));
  CHECK(ugkms::pow_real(Number(2), Number(-2)).is_exact());
  Number r = ugkms::pow_real(Number(2), Number::rational(-1, 2));
  CHECK_FALSE(r.is_exact());
  CHECK(r.to_double() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(ugkms::pow_real(Number(2), Number::rational(1, 2), ugkms::NumericMode::Exact), ugkms::InexactError);
}

TEST_CASE("comparisons under the exact/tolerance policy") {
  CHECK(ugkms::approx_equal(Number::rational(1, 3), Number::rational(1, 3), 0));
  CHECK_FALSE(ugkms::approx_equal(Number::rational(1, 3), Number::parse("0.333333333333"), 0));
  CHECK(ugkms::approx_equal(Number(1.0 / 3), Number::rational(1, 3), 1e-12));
  CHECK(ugkms::approx_geq(Number(0.0), Number(1e-13), 1e-12));
  CHECK_FALSE(ugkms::approx_geq(Number(0), Number::rational(1, 1000000), 1e-3));
  CHECK(Number::rational(1, 2) < Number(0.6));
}
