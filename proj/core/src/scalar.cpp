#include "qfla/scalar.hpp"

#include <cctype>
#include <ostream>

#include "qfla/error.hpp"

namespace qfla {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

}  // namespace

Scalar::Scalar(long num, long den) {
  if (den == 0) throw ParseError("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_part = text.substr(0, slash);
  if (!is_integer_literal(num_part)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpq_class q;
  q.get_num() = parse_integer(num_part);
  if (slash == std::string_view::npos) {
    q.get_den() = 1;
  } else {
    const auto den_part = text.substr(slash + 1);
    if (!is_integer_literal(den_part)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    q.get_den() = parse_integer(den_part);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Scalar(mpq_class(1) / value_);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

Scalar Scalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Scalar(mpq_class(num, den));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

bool exact_root(const Scalar& q, unsigned long k, Scalar& root) {
  if (k == 0) return false;
  if (q.sign() < 0 && k % 2 == 0) return false;
  mpz_class num = q.numerator();
  const bool negative = num < 0;
  if (negative) num = -num;
  mpz_class den = q.denominator();
  mpz_class rn;
  mpz_class rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) == 0) return false;
  if (negative) rn = -rn;
  root = Scalar(mpq_class(rn, rd));
  return true;
}

}  // namespace qfla
