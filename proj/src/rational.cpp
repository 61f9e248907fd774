#include "qcr/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace qcr {

namespace detail {

std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // Avoid negating INT128_MIN: peel digits from the negative value.
  std::string digits;
  while (v != 0) {
    int d = static_cast<int>(v % 10);
    v /= 10;
    digits.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
  }
  if (neg) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

}  // namespace detail

std::string Rational::to_string() const {
  std::string s = detail::int128_to_string(num_);
  if (den_ != 1) s += "/" + detail::int128_to_string(den_);
  return s;
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("Rational::from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  int128 m = static_cast<int128>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m, 1);
  while (exp > 0) {
    r *= Rational(2);
    --exp;
  }
  while (exp < 0) {
    r /= Rational(2);
    ++exp;
  }
  return r;
}

Rational Rational::parse(const std::string& text) {
  std::string s = text;
  // strip whitespace
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '\t') t.push_back(c);
  if (t.empty()) throw std::invalid_argument("Rational::parse: empty string");

  auto parse_int = [](const std::string& u) -> int128 {
    if (u.empty()) throw std::invalid_argument("Rational::parse: empty integer");
    std::size_t i = 0;
    bool neg = false;
    if (u[i] == '+' || u[i] == '-') {
      neg = u[i] == '-';
      ++i;
    }
    if (i == u.size()) throw std::invalid_argument("Rational::parse: sign without digits");
    int128 v = 0;
    for (; i < u.size(); ++i) {
      if (u[i] < '0' || u[i] > '9')
        throw std::invalid_argument("Rational::parse: bad digit in '" + u + "'");
      v = detail::checked_add(detail::checked_mul(v, 10), u[i] - '0');
    }
    return neg ? -v : v;
  };

  if (auto slash = t.find('/'); slash != std::string::npos) {
    return Rational(parse_int(t.substr(0, slash)), parse_int(t.substr(slash + 1)));
  }

  // decimal with optional exponent: [-]a[.b][e[-]k]
  long long e10 = 0;
  if (auto epos = t.find_first_of("eE"); epos != std::string::npos) {
    e10 = static_cast<long long>(parse_int(t.substr(epos + 1)));
    t = t.substr(0, epos);
  }
  std::string digits = t;
  long long frac_len = 0;
  if (auto dot = t.find('.'); dot != std::string::npos) {
    frac_len = static_cast<long long>(t.size() - dot - 1);
    digits = t.substr(0, dot) + t.substr(dot + 1);
  }
  if (digits == "-" || digits == "+" || digits.empty())
    throw std::invalid_argument("Rational::parse: no digits in '" + text + "'");
  Rational r(parse_int(digits), 1);
  long long shift = e10 - frac_len;
  for (long long i = 0; i < (shift > 0 ? shift : -shift); ++i) {
    if (shift > 0)
      r *= Rational(10);
    else
      r /= Rational(10);
  }
  return r;
}

std::string RationalComplex::to_string() const {
  if (im.is_zero()) return re.to_string();
  std::string s = "(" + re.to_string();
  s += im.sign() < 0 ? "-" : "+";
  s += qcr::abs(im).to_string() + "i)";
  return s;
}

}  // namespace qcr
