// weyl.hpp — exact noncommutative polynomial operators.
//
// Elements are finite sums  c · z^α z̄^β ξ^γ λ^κ x^τ ∂_z^μ ∂_z̄^ν ∂_x^σ  with
// Gaussian-rational coefficients, kept in normal form: every multiplication
// operator to the left of every derivative, terms ordered graded-lex.  The
// only nontrivial relations are [∂_w, w] = 1 for matching variable pairs;
// ξ and λ are central scalar symbols.
//
// This is enough to build the tangential CR fields of a quadric, Fourier-reduce
// them, take weighted formal adjoints, and prove the commutator identities by
// exact normal-form equality.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcr/quadric.hpp"
#include "qcr/rational.hpp"

namespace qcr {

enum class VarKind : std::uint8_t {
  Z = 0,      // z_j            (multiplication)
  Zbar = 1,   // z̄_j            (multiplication)
  Xi = 2,     // ξ_ℓ            (central symbol)
  Lambda = 3, // λ_j            (central symbol)
  X = 4,      // x_ℓ            (multiplication)
  Dz = 5,     // ∂/∂z_j
  Dzbar = 6,  // ∂/∂z̄_j
  Dx = 7,     // ∂/∂x_ℓ
};

inline bool is_derivative(VarKind k) { return k >= VarKind::Dz; }

// Packed variable id: kind in the high byte, 1-based index in the low byte.
using VarKey = std::uint16_t;
inline VarKey var_key(VarKind k, int index) {
  return static_cast<VarKey>((static_cast<unsigned>(k) << 8) | static_cast<unsigned>(index));
}
inline VarKind key_kind(VarKey k) { return static_cast<VarKind>(k >> 8); }
inline int key_index(VarKey k) { return k & 0xff; }

// Commuting exponent record of one normal-form word, sorted by key.
class Monomial {
 public:
  Monomial() = default;

  int exponent(VarKey k) const;
  void set_exponent(VarKey k, int e);
  int degree() const;
  bool empty() const { return vars_.empty(); }
  const std::vector<std::pair<VarKey, int>>& entries() const { return vars_; }

  bool has_kind(VarKind kind) const;

  // graded-lex: total degree first, then earlier variable with the larger
  // exponent wins.
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return vars_ == o.vars_; }

 private:
  std::vector<std::pair<VarKey, int>> vars_;
};

class WeylElement {
 public:
  using TermMap = std::map<Monomial, RationalComplex>;

  WeylElement() = default;

  static WeylElement constant(RationalComplex c);
  static WeylElement variable(VarKind kind, int index);
  static WeylElement z(int j) { return variable(VarKind::Z, j); }
  static WeylElement zbar(int j) { return variable(VarKind::Zbar, j); }
  static WeylElement xi(int l = 1) { return variable(VarKind::Xi, l); }
  static WeylElement lambda(int j) { return variable(VarKind::Lambda, j); }
  static WeylElement x(int l = 1) { return variable(VarKind::X, l); }
  static WeylElement dz(int j) { return variable(VarKind::Dz, j); }
  static WeylElement dzbar(int j) { return variable(VarKind::Dzbar, j); }
  static WeylElement dx(int l = 1) { return variable(VarKind::Dx, l); }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool has_kind(VarKind kind) const;

  WeylElement operator-() const;
  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }

  // Normal-ordering product: derivatives of the left factor are commuted past
  // the multiplications of the right factor with [∂_w, w] = 1.
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend WeylElement operator*(const RationalComplex& c, const WeylElement& e);

  WeylElement pow(int k) const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

  // ∂_x ↦ i·ξ (partial Fourier transform with kernel e^{-i<x,ξ>}).
  // Requires no multiplication-by-x factors.
  WeylElement fourier_reduce() const;

  // Formal adjoint for <u,v> = ∫ u v̄ e^{|z|²}: antilinear, product-reversing,
  // generated by z ↦ z̄, ξ ↦ ξ, λ ↦ λ, ∂_z ↦ -∂_z̄ - z, ∂_z̄ ↦ -∂_z - z̄.
  // Requires x and ∂_x free.
  WeylElement formal_adjoint() const;

  // e^{|z|²}∘(this)∘e^{-|z|²}: the operator induced on Hermite coefficients,
  // i.e. ∂_z ↦ ∂_z - z̄ and ∂_z̄ ↦ ∂_z̄ - z.
  WeylElement gaussian_conjugate() const;

  // Substitute numeric values for the ξ (resp. λ) symbols.
  WeylElement substitute_xi(const std::vector<Rational>& values) const;
  WeylElement substitute_lambda(const std::vector<Rational>& values) const;

  // Largest possible raise of total Hermite degree over all terms
  // (= number of z/z̄ multiplications per term).
  int max_degree_raise() const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const RationalComplex& c);
  TermMap terms_;
};

WeylElement commutator(const WeylElement& a, const WeylElement& b);

// --- CR fields and identities -------------------------------------------------

// L_j = ∂_{z_j} + i Σ_{ℓ,k} h^ℓ_{jk} z̄_k ∂_{x_ℓ}   (conjugate = false)
// L̄_j = ∂_{z̄_j} - i Σ_{ℓ,k} h^ℓ_{kj} z_k ∂_{x_ℓ}   (conjugate = true)
WeylElement cr_field(const QuadricSpec& spec, int j, bool conjugate);

// true iff [L̄_j, L̄_k] = 0 exactly for all j, k.
bool check_integrability(const QuadricSpec& spec);

// The reduced (0,1)-component operators at a rational λ vector:
//   dbar_j = ∂_{z̄_j} + λ_j z_j,     delta_j = adjoint(dbar_j).
WeylElement reduced_dbar(const std::vector<Rational>& lambda, int j);
WeylElement reduced_delta(const std::vector<Rational>& lambda, int j);

struct IdentityCheck {
  std::string identity;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass = true;
  void add(std::string identity, const WeylElement& expected, const WeylElement& computed);
};

// Exact commutator identities of the reduced complex:
//  * diagonalized, symbolic λ:  [dbar_k, delta_j] = (-1 + 2λ_j)·δ_{jk}
//  * d = 1 with diagonal form:  [dbar_j, delta_j] = -1 + 2 ε_j ξ  (ε_j = h_jj)
//  * original coordinates, symbolic ξ: [dbar_k, delta_j] = 2 h^ξ_{jk} - δ_{jk}
IdentityReport verify_commutation_identities(const QuadricSpec& spec);

// --- operators between form degrees --------------------------------------------

// A first-order operator sending q_in-forms to q_out-forms, stored as a sparse
// matrix of WeylElements over (target component, source component).
struct FormOperator {
  int n = 0;
  int degree_in = 0;
  int degree_out = 0;
  std::map<std::pair<int, int>, WeylElement> components;

  int source_count() const { return component_count(degree_in); }
  int target_count() const { return component_count(degree_out); }
  int component_count(int degree) const;

  // lex-ordered pairs (k<j): (0,1),(0,2),...,(1,2),... as (0,2)-component ids
  static int pair_id(int k, int j, int n);
};

// v ↦ (dbar_j v)_j, scalar → (0,1).
FormOperator dbar_on_scalars(const std::vector<Rational>& lambda);
// v ↦ (dbar_k v_j - dbar_j v_k)_{k<j}, (0,1) → (0,2).
FormOperator dbar_on_oneforms(const std::vector<Rational>& lambda);
// v ↦ Σ_j delta_j v_j, (0,1) → scalar.
FormOperator delta_on_oneforms(const std::vector<Rational>& lambda);

}  // namespace qcr
