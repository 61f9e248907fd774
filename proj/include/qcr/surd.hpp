// surd.hpp — exact arithmetic in Q(i) extended by square roots of integers.
//
// A SurdSum is a finite sum  Σ_r c_r·√r  with r positive squarefree and c_r a
// Gaussian rational.  Closed under +, −, ×, conjugation; equality is exact.
// Matrix entries of the reduced operators on the orthonormal Hermite basis
// live here: each is a rational coefficient times √(integer norm ratio).

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "qcr/rational.hpp"

namespace qcr {

class SurdSum {
 public:
  SurdSum() = default;
  SurdSum(Rational r) { set(1, RationalComplex(std::move(r))); }       // NOLINT
  SurdSum(RationalComplex c) { set(1, std::move(c)); }                 // NOLINT
  SurdSum(long long n) { set(1, RationalComplex(Rational(n))); }       // NOLINT

  // √m for integer m ≥ 0, reduced so the stored radicand is squarefree.
  static SurdSum sqrt_of(std::int64_t m);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }
  RationalComplex rational_part() const {
    auto it = terms_.find(1);
    return it == terms_.end() ? RationalComplex() : it->second;
  }

  SurdSum operator-() const {
    SurdSum r;
    for (const auto& [rad, c] : terms_) r.terms_.emplace(rad, -c);
    return r;
  }

  SurdSum& operator+=(const SurdSum& o) {
    for (const auto& [rad, c] : o.terms_) add_term(rad, c);
    return *this;
  }
  SurdSum& operator-=(const SurdSum& o) {
    for (const auto& [rad, c] : o.terms_) add_term(rad, -c);
    return *this;
  }
  SurdSum& operator*=(const SurdSum& o) { return *this = *this * o; }

  friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
  friend SurdSum operator-(SurdSum a, const SurdSum& b) { return a -= b; }
  friend SurdSum operator*(const SurdSum& a, const SurdSum& b);

  friend bool operator==(const SurdSum& a, const SurdSum& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const SurdSum& a, const SurdSum& b) { return !(a == b); }

  friend SurdSum conj(const SurdSum& s) {
    SurdSum r;
    for (const auto& [rad, c] : s.terms_) r.terms_.emplace(rad, conj(c));
    return r;
  }

  std::complex<double> to_complex() const;
  std::string to_string() const;

  const std::map<std::int64_t, RationalComplex>& terms() const { return terms_; }

 private:
  void set(std::int64_t rad, RationalComplex c) {
    if (!c.is_zero()) terms_[rad] = std::move(c);
  }
  void add_term(std::int64_t rad, const RationalComplex& c) {
    auto it = terms_.find(rad);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(rad, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<std::int64_t, RationalComplex> terms_;  // squarefree radicand -> coefficient
};

}  // namespace qcr
