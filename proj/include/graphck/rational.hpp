#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace graphck {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (graph files, path strings, scalar literals).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that violates a semantic constraint
/// (dangling edge endpoints, duplicate ids, unknown vertices, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its stated domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed.  Seeing this means a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

/// Exact rational on int64 numerator/denominator, always reduced, den > 0.
/// Intermediate arithmetic runs in 128 bits; a result that does not fit in
/// 64 bits after reduction throws.  Coefficients in this project live on
/// small lattices and inclusion-exclusion signs, so the fixed width is never
/// reached in practice but the failure mode is loud rather than silent.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw PreconditionError("Rational: zero denominator");
    assign(static_cast<__int128>(n), static_cast<__int128>(d));
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(static_cast<__int128>(a.num_) * b.den_ +
                        static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_, wide_tag{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(static_cast<__int128>(a.num_) * b.den_ -
                        static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_, wide_tag{});
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(static_cast<__int128>(a.num_) * b.num_,
                    static_cast<__int128>(a.den_) * b.den_, wide_tag{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw PreconditionError("Rational: division by zero");
    return Rational(static_cast<__int128>(a.num_) * b.den_,
                    static_cast<__int128>(a.den_) * b.num_, wide_tag{});
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

 private:
  struct wide_tag {};
  Rational(__int128 n, __int128 d, wide_tag) { assign(n, d); }

  void assign(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    __int128 g = detail::gcd128(n, d);
    n /= g;
    d /= g;
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw Error("Rational: value exceeds 64-bit range");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Gaussian rational a + bi with exact components.
struct Scalar {
  Rational re{};
  Rational im{};

  Scalar() = default;
  Scalar(Rational r) : re(r) {}  // NOLINT: implicit by design
  Scalar(std::int64_t r) : re(r) {}  // NOLINT
  Scalar(Rational r, Rational i) : re(r), im(i) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  Scalar conj() const { return Scalar(re, -im); }

  /// Squared modulus re^2 + im^2, exact.
  Rational norm2() const { return re * re + im * im; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.re + b.re, a.im + b.im);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.re - b.re, a.im - b.im);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

}  // namespace graphck
