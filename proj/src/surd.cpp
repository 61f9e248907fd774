#include "qcr/surd.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcr {

namespace {

// m = s²·r with r squarefree; returns {s, r}.  Trial division is fine at the
// radicand sizes produced by factorial norm ratios.
std::pair<std::int64_t, std::int64_t> split_square(std::int64_t m) {
  std::int64_t s = 1, r = 1;
  for (std::int64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) r *= p;
  }
  r *= m;  // leftover prime
  return {s, r};
}

}  // namespace

SurdSum SurdSum::sqrt_of(std::int64_t m) {
  if (m < 0) throw std::domain_error("SurdSum::sqrt_of: negative radicand");
  if (m == 0) return SurdSum();
  auto [s, r] = split_square(m);
  SurdSum out;
  out.terms_[r] = RationalComplex(Rational(s));
  return out;
}

SurdSum operator*(const SurdSum& a, const SurdSum& b) {
  SurdSum out;
  for (const auto& [ra, ca] : a.terms_) {
    for (const auto& [rb, cb] : b.terms_) {
      // √ra·√rb = g·√(ra rb / g²) with g = gcd(ra, rb) since both squarefree.
      std::int64_t g = std::gcd(ra, rb);
      std::int64_t rad = (ra / g) * (rb / g);
      RationalComplex c = ca * cb * RationalComplex(Rational(g));
      out.add_term(rad, c);
    }
  }
  return out;
}

std::complex<double> SurdSum::to_complex() const {
  std::complex<double> z = 0.0;
  for (const auto& [rad, c] : terms_) {
    double w = std::sqrt(static_cast<double>(rad));
    z += std::complex<double>(c.re.to_double(), c.im.to_double()) * w;
  }
  return z;
}

std::string SurdSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [rad, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += c.to_string();
    if (rad != 1) s += "*sqrt(" + std::to_string(rad) + ")";
  }
  return s;
}

}  // namespace qcr
