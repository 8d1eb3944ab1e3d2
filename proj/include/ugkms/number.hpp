#pragma once

// Dual-mode scalar: exact rationals (GMP) or doubles.
//
// Arithmetic between two exact values stays exact; any operation touching a
// float operand produces a float. Irrational quantities only enter through
// pow_real(), which callers may forbid by requesting NumericMode::Exact.

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace ugkms {

enum class NumericMode { Auto, Exact };

class InexactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumberParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Number {
 public:
  Number() : value_(mpq_class(0)) {}
  Number(int v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Number(long v) : value_(mpq_class(v)) {}  // NOLINT
  Number(mpq_class v) : value_(std::move(v)) { std::get<mpq_class>(value_).canonicalize(); }  // NOLINT
  Number(double v) : value_(v) {}  // NOLINT

  static Number rational(long num, long den);

  /// Accepts `p/q`, integers and decimals (with optional exponent); all of
  /// these are parsed exactly.
  static Number parse(std::string_view text);

  [[nodiscard]] bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  [[nodiscard]] const mpq_class& exact() const;
  [[nodiscard]] double to_double() const;

  [[nodiscard]] int sign() const;
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] Number abs() const;

  /// Rationals print as `p/q` (or `p`); floats with 12 significant digits.
  [[nodiscard]] std::string str() const;

  Number& operator+=(const Number& o);
  Number& operator-=(const Number& o);
  Number& operator*=(const Number& o);
  Number& operator/=(const Number& o);

  friend Number operator+(Number a, const Number& b) { return a += b; }
  friend Number operator-(Number a, const Number& b) { return a -= b; }
  friend Number operator*(Number a, const Number& b) { return a *= b; }
  friend Number operator/(Number a, const Number& b) { return a /= b; }
  friend Number operator-(const Number& a) { return Number(0) - a; }

  /// Numeric comparison (exact when both are exact).
  friend std::partial_ordering operator<=>(const Number& a, const Number& b);
  friend bool operator==(const Number& a, const Number& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

 private:
  std::variant<mpq_class, double> value_;
};

/// base^exponent for an integer exponent; exact when base is exact.
Number pow_int(const Number& base, long exponent);

/// base^exponent for a real exponent. Exact when the exponent is an integer
/// and the base is exact; otherwise a float, which throws InexactError
/// under NumericMode::Exact.
Number pow_real(const Number& base, const Number& exponent, NumericMode mode = NumericMode::Auto);

/// Equality test used by verifiers: exact comparison when both operands are
/// exact, |a-b| <= tol otherwise.
bool approx_equal(const Number& a, const Number& b, double tol);

/// a >= b with the same exact/tolerance policy.
bool approx_geq(const Number& a, const Number& b, double tol);

std::string format_double(double v);

}  // namespace ugkms
