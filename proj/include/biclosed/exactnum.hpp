#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

namespace biclosed {

/// Raised for division by zero and malformed scalar strings.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  static Rational parse(std::string_view text);

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }
  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when q = 1.
  std::string to_string() const;
  std::size_t hash() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

 private:
  mpq_class value_;
};

/// Element a + b*sqrt(5) of Q(sqrt 5). Equality is componentwise.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(long value) : a_(value) {}              // NOLINT(google-explicit-constructor)
  QuadScalar(int value) : a_(value) {}               // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a) : a_(std::move(a)) {}       // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  /// The golden ratio (1 + sqrt 5) / 2.
  static QuadScalar golden();
  static QuadScalar parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  /// Exact sign: compares a^2 with 5 b^2 when the parts disagree in sign.
  int sign() const;
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  double to_double() const;

  /// "a+b*r5" with both parts in rational form.
  std::string to_string() const;
  std::size_t hash() const;

  QuadScalar operator-() const { return {-a_, -b_}; }
  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }
  friend bool operator<(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadScalar& x, const QuadScalar& y) { return y < x; }
  friend bool operator<=(const QuadScalar& x, const QuadScalar& y) { return !(y < x); }
  friend bool operator>=(const QuadScalar& x, const QuadScalar& y) { return !(x < y); }

 private:
  Rational a_;
  Rational b_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, const QuadScalar& x);

inline int sign(const Rational& x) { return x.sign(); }
inline int sign(const QuadScalar& x) { return x.sign(); }
inline std::string to_string(const Rational& x) { return x.to_string(); }
inline std::string to_string(const QuadScalar& x) { return x.to_string(); }
inline double to_double(const Rational& x) { return x.to_double(); }
inline double to_double(const QuadScalar& x) { return x.to_double(); }

template <class S>
S parse_scalar(std::string_view text);
template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return Rational::parse(text); }
template <>
inline QuadScalar parse_scalar<QuadScalar>(std::string_view text) { return QuadScalar::parse(text); }

/// Any exact ordered field usable by the rest of the library.
template <class S>
concept ExactScalar = requires(const S& x, const S& y) {
  { x + y } -> std::convertible_to<S>;
  { x * y } -> std::convertible_to<S>;
  { x / y } -> std::convertible_to<S>;
  { sign(x) } -> std::convertible_to<int>;
  { to_string(x) } -> std::convertible_to<std::string>;
};

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

/// Lexicographic order on coordinate vectors (shorter vectors first).
template <class S>
struct VecLess {
  bool operator()(const Vec<S>& u, const Vec<S>& v) const {
    if (u.size() != v.size()) return u.size() < v.size();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (u[i] < v[i]) return true;
      if (v[i] < u[i]) return false;
    }
    return false;
  }
};

template <class S>
bool is_zero_vector(const Vec<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (sign(v[i]) != 0) return false;
  return true;
}

template <class S>
S dot(const Vec<S>& u, const Vec<S>& v) {
  S acc(0);
  for (Eigen::Index i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

}  // namespace biclosed

namespace Eigen {

template <>
struct NumTraits<biclosed::Rational> : GenericNumTraits<biclosed::Rational> {
  using Real = biclosed::Rational;
  using NonInteger = biclosed::Rational;
  using Literal = biclosed::Rational;
  using Nested = biclosed::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<biclosed::QuadScalar> : GenericNumTraits<biclosed::QuadScalar> {
  using Real = biclosed::QuadScalar;
  using NonInteger = biclosed::QuadScalar;
  using Literal = biclosed::QuadScalar;
  using Nested = biclosed::QuadScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 24
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
