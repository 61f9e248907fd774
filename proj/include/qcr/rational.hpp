// rational.hpp — exact rational and rational-complex scalars.
//
// All symbolic-grade checks in this library run on these types; doubles are
// produced only by explicit conversion.  Numerators/denominators live in a
// signed 128-bit integer; every operation normalizes by gcd and throws
// qcr::OverflowError instead of wrapping.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcr {

using int128 = __int128;

struct OverflowError : std::overflow_error {
  explicit OverflowError(const char* what) : std::overflow_error(what) {}
};

namespace detail {

inline int128 checked_add(int128 a, int128 b) {
  int128 r = int128(static_cast<unsigned __int128>(a) + static_cast<unsigned __int128>(b));
  if ((b > 0 && r < a) || (b < 0 && r > a)) throw OverflowError("int128 add overflow");
  return r;
}

inline int128 checked_mul(int128 a, int128 b) {
  if (a == 0 || b == 0) return 0;
  int128 r = int128(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b));
  if (r / b != a) throw OverflowError("int128 mul overflow");
  return r;
}

inline int128 checked_neg(int128 a) {
  int128 r = -a;
  if (a != 0 && ((a < 0) == (r < 0))) throw OverflowError("int128 negate overflow");
  return r;
}

inline int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string int128_to_string(int128 v);

}  // namespace detail

// Exact rational with den > 0 and gcd(num, den) == 1 after every operation.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(int n) : num_(n), den_(1) {}        // NOLINT
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
  Rational(int128 n, int128 d) : num_(n), den_(d) { normalize(); }

  static Rational from_double(double x);            // exact base-2 expansion
  static Rational parse(const std::string& text);   // "3", "-3/4", "0.7", "1e-3"

  int128 num() const { return num_; }
  int128 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  Rational operator-() const {
    Rational r;
    r.num_ = detail::checked_neg(num_);
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    // a/b + c/d = (a d' + c b') / lcm, with b = g b', d = g d'
    int128 g = detail::gcd128(den_, o.den_);
    int128 bp = den_ / g, dp = o.den_ / g;
    num_ = detail::checked_add(detail::checked_mul(num_, dp), detail::checked_mul(o.num_, bp));
    den_ = detail::checked_mul(den_, dp);
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    int128 g1 = detail::gcd128(num_, o.den_);
    int128 g2 = detail::gcd128(o.num_, den_);
    num_ = detail::checked_mul(num_ / g1, o.num_ / g2);
    den_ = detail::checked_mul(den_ / g2, o.den_ / g1);
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("Rational division by zero");
    return *this *= Rational(o.den_, o.num_);
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return detail::checked_mul(a.num_, b.den_) < detail::checked_mul(b.num_, a.den_);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational with zero denominator");
    if (den_ < 0) {
      num_ = detail::checked_neg(num_);
      den_ = detail::checked_neg(den_);
    }
    int128 g = detail::gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  int128 num_, den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Gaussian rational a + b i.
struct RationalComplex {
  Rational re, im;

  RationalComplex() = default;
  RationalComplex(Rational r) : re(std::move(r)) {}  // NOLINT
  RationalComplex(long long r) : re(r) {}            // NOLINT
  RationalComplex(int r) : re(r) {}                  // NOLINT
  RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static RationalComplex i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  RationalComplex operator-() const { return {-re, -im}; }
  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  RationalComplex& operator/=(const RationalComplex& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (n.is_zero()) throw std::domain_error("RationalComplex division by zero");
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
  friend RationalComplex operator/(RationalComplex a, const RationalComplex& b) { return a /= b; }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }

  std::string to_string() const;
};

inline RationalComplex conj(const RationalComplex& c) { return {c.re, -c.im}; }
inline Rational abs2(const RationalComplex& c) { return c.re * c.re + c.im * c.im; }
inline Rational real(const RationalComplex& c) { return c.re; }
inline Rational imag(const RationalComplex& c) { return c.im; }

// For Eigen interop (adjoint() etc. on exact matrices).
inline Rational conj(const Rational& r) { return r; }
inline Rational real(const Rational& r) { return r; }
inline Rational imag(const Rational&) { return Rational(0); }
inline Rational abs2(const Rational& r) { return r * r; }

}  // namespace qcr
