#include "ugkms/number.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace ugkms {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

mpq_class parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp = s.substr(epos + 1);
    bool exp_negative = false;
    if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
      exp_negative = exp.front() == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 6) throw NumberParseError("bad exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, epos);
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw NumberParseError("empty number '" + std::string(text) + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw NumberParseError("not a number: '" + std::string(text) + "'");
  }
  mpz_class digits(std::string(int_part) + std::string(frac_part) + (int_part.empty() && frac_part.empty() ? "0" : ""), 10);
  exponent -= static_cast<long>(frac_part.size());
  mpq_class out;
  if (exponent >= 0) {
    out = mpq_class(digits * pow10(static_cast<unsigned long>(exponent)));
  } else {
    out = mpq_class(digits, pow10(static_cast<unsigned long>(-exponent)));
  }
  out.canonicalize();
  return negative ? mpq_class(-out) : out;
}

}  // namespace

Number Number::rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Number(q);
}

Number Number::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw NumberParseError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) throw NumberParseError("not a rational: '" + std::string(text) + "'");
    mpz_class d(std::string{den}, 10);
    if (d == 0) throw NumberParseError("zero denominator in '" + std::string(text) + "'");
    mpz_class n(std::string{num}, 10);
    if (negative) n = -n;
    return Number(mpq_class(n, d));
  }
  return Number(parse_decimal(text));
}

const mpq_class& Number::exact() const {
  if (!is_exact()) throw InexactError("value " + str() + " is not an exact rational");
  return std::get<mpq_class>(value_);
}

double Number::to_double() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_d();
  return std::get<double>(value_);
}

int Number::sign() const {
  if (is_exact()) return sgn(std::get<mpq_class>(value_));
  double v = std::get<double>(value_);
  return (v > 0) - (v < 0);
}

Number Number::abs() const {
  if (is_exact()) return Number(mpq_class(::abs(std::get<mpq_class>(value_))));
  return Number(std::fabs(std::get<double>(value_)));
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string Number::str() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_str();
  return format_double(std::get<double>(value_));
}

Number& Number::operator+=(const Number& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() + o.to_double();
  }
  return *this;
}

Number& Number::operator-=(const Number& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() - o.to_double();
  }
  return *this;
}

Number& Number::operator*=(const Number& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() * o.to_double();
  }
  return *this;
}

Number& Number::operator/=(const Number& o) {
  if (is_exact() && o.is_exact()) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() / o.to_double();
  }
  return *this;
}

std::partial_ordering operator<=>(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  return a.to_double() <=> b.to_double();
}

Number pow_int(const Number& base, long exponent) {
  if (exponent < 0) return Number(1) / pow_int(base, -exponent);
  if (!base.is_exact()) return Number(std::pow(base.to_double(), static_cast<double>(exponent)));
  mpq_class b = base.exact();
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Number(mpq_class(num, den));
}

Number pow_real(const Number& base, const Number& exponent, NumericMode mode) {
  if (base.is_exact() && exponent.is_exact() && exponent.exact().get_den() == 1 &&
      exponent.exact().get_num().fits_slong_p()) {
    return pow_int(base, exponent.exact().get_num().get_si());
  }
  if (mode == NumericMode::Exact) {
    throw InexactError(base.str() + "^" + exponent.str() + " is not rational");
  }
  return Number(std::pow(base.to_double(), exponent.to_double()));
}

bool approx_equal(const Number& a, const Number& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::fabs(a.to_double() - b.to_double()) <= tol;
}

bool approx_geq(const Number& a, const Number& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a >= b;
  return a.to_double() >= b.to_double() - tol;
}

}  // namespace ugkms
