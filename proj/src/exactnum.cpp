#include "biclosed/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <ostream>

namespace biclosed {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw ArithmeticError("malformed integer '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

std::size_t hash_mpz(const mpz_class& z) {
  // Two residues keep collisions rare without touching limb layout.
  const auto r1 = mpz_fdiv_ui(z.get_mpz_t(), 4294967291UL);
  const auto r2 = mpz_fdiv_ui(z.get_mpz_t(), 2147483647UL);
  return (static_cast<std::size_t>(r1) << 1) ^ (static_cast<std::size_t>(r2) * 0x9e3779b97f4a7c15ULL) ^
         static_cast<std::size_t>(sgn(z) + 1);
}

}  // namespace

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(mpq_class(parse_integer(text)));
  mpz_class num = parse_integer(trim(text.substr(0, slash)));
  mpz_class den = parse_integer(trim(text.substr(slash + 1)));
  if (den == 0) throw ArithmeticError("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(num, den));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t Rational::hash() const {
  return hash_mpz(value_.get_num()) * 31 + hash_mpz(value_.get_den());
}

QuadScalar QuadScalar::golden() { return {Rational(1, 2), Rational(1, 2)}; }

QuadScalar QuadScalar::parse(std::string_view text) {
  text = trim(text);
  const auto marker = text.find("*r5");
  if (marker == std::string_view::npos) return QuadScalar(Rational::parse(text));
  if (!trim(text.substr(marker + 3)).empty())
    throw ArithmeticError("trailing characters in '" + std::string(text) + "'");
  // The rational part ends at the last '+' or '-' that is not a leading sign
  // and does not directly follow another sign.
  std::string_view head = text.substr(0, marker);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '+' && head[i - 1] != '-' &&
        head[i - 1] != '/') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {Rational(0), Rational::parse(head)};
  Rational a = Rational::parse(head.substr(0, split));
  std::string_view b_text = trim(head.substr(split));
  if (b_text.front() == '+') b_text.remove_prefix(1);
  return {a, Rational::parse(b_text)};
}

int QuadScalar::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the dominant of a^2 and 5 b^2 decides.
  const Rational lhs = a_ * a_;
  const Rational rhs = Rational(5) * b_ * b_;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;  // unreachable for rational a, b since sqrt 5 is irrational
}

double QuadScalar::to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(5.0); }

std::string QuadScalar::to_string() const { return a_.to_string() + "+" + b_.to_string() + "*r5"; }

std::size_t QuadScalar::hash() const { return a_.hash() * 1000003 ^ b_.hash(); }

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  if (b_.is_zero() && o.b_.is_zero()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + Rational(5) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  if (o.b_.is_zero()) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  // 1 / (c + d r5) = (c - d r5) / (c^2 - 5 d^2)
  const Rational norm = o.a_ * o.a_ - Rational(5) * o.b_ * o.b_;
  *this *= QuadScalar(o.a_ / norm, -o.b_ / norm);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }
std::ostream& operator<<(std::ostream& os, const QuadScalar& x) { return os << x.to_string(); }

}  // namespace biclosed
