// fock.hpp — truncated orthonormal basis of L²(Cⁿ, e^{|z|²}) and exact
// operator assembly on it.
//
// Basis functions are v_α = (Π_j H_{p_j,q_j}(z_j, z̄_j)) e^{-|z|²}, normalized;
// H_{p,q} are the complex Hermite (Itô) polynomials, orthogonal under the
// Gaussian with ‖H_{p,q}‖² = π p! q!.  On the polynomial part the ladder rules
//    ∂_z H_{p,q} = p H_{p-1,q}          z  H_{p,q} = H_{p+1,q} + q H_{p,q-1}
//    ∂_z̄ H_{p,q} = q H_{p,q-1}          z̄  H_{p,q} = H_{p,q+1} + p H_{p-1,q}
// make every polynomial-coefficient operator an exact sparse matrix.  The
// quadrature oracle in the test suite validates these rules independently.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcr/surd.hpp"
#include "qcr/weyl.hpp"

namespace qcr {

struct BasisIndex {
  std::vector<std::pair<int, int>> pq;  // (p_j, q_j) per variable

  int degree() const {
    int t = 0;
    for (const auto& [p, q] : pq) t += p + q;
    return t;
  }
  bool operator==(const BasisIndex& o) const { return pq == o.pq; }
  bool operator<(const BasisIndex& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    return pq < o.pq;  // graded, then lex on the flattened tuple
  }
};

enum class NumericMode { Exact, Floating };

// Number of 2n-tuples of nonnegative integers with sum ≤ N; throws when the
// count exceeds `cap`.
std::uint64_t basis_dimension(int n, int N, std::uint64_t cap = (1u << 22));

class TruncatedBasis {
 public:
  static TruncatedBasis build(int n, int N, NumericMode mode = NumericMode::Floating,
                              std::uint64_t cap = (1u << 22));

  int n() const { return n_; }
  int max_degree() const { return N_; }
  NumericMode mode() const { return mode_; }
  int dim() const { return static_cast<int>(list_.size()); }
  const BasisIndex& at(int i) const { return list_[static_cast<std::size_t>(i)]; }
  const std::vector<BasisIndex>& indices() const { return list_; }
  // -1 when absent
  int position(const BasisIndex& b) const {
    auto it = pos_.find(b);
    return it == pos_.end() ? -1 : it->second;
  }

 private:
  int n_ = 0, N_ = 0;
  NumericMode mode_ = NumericMode::Floating;
  std::vector<BasisIndex> list_;
  std::map<BasisIndex, int> pos_;
};

// Sparse matrix of a reduced operator between truncated bases.  Exact entries
// are SurdSums (rational multiples of square roots of integer norm ratios);
// floating entries are complex doubles.
template <typename Scalar>
struct OperatorMatrix {
  int rows = 0, cols = 0;
  std::map<std::pair<int, int>, Scalar> entries;

  std::string name;              // which operator
  Eigen::VectorXd xi;            // conormal it was built at (may be empty)
  std::vector<double> lambda;    // reduced diagonal used

  Scalar at(int r, int c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? Scalar() : it->second;
  }
  void add(int r, int c, const Scalar& v);

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.cols != b.rows)
      throw DimensionError("OperatorMatrix product: " + std::to_string(a.cols) +
                           " != " + std::to_string(b.rows));
    OperatorMatrix out;
    out.rows = a.rows;
    out.cols = b.cols;
    for (const auto& [rc_b, vb] : b.entries)
      for (const auto& [rc_a, va] : a.entries)
        if (rc_a.second == rc_b.first) out.add(rc_a.first, rc_b.second, va * vb);
    return out;
  }
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out = a;
    for (const auto& [rc, v] : b.entries) out.add(rc.first, rc.second, Scalar() - v);
    return out;
  }
};

template <typename Scalar>
void OperatorMatrix<Scalar>::add(int r, int c, const Scalar& v) {
  auto key = std::make_pair(r, c);
  auto it = entries.find(key);
  if (it == entries.end()) {
    if (!(v == Scalar())) entries.emplace(key, v);
    return;
  }
  it->second = it->second + v;
  if (it->second == Scalar()) entries.erase(it);
}

using OperatorMatrixX = OperatorMatrix<SurdSum>;
using OperatorMatrixD = OperatorMatrix<std::complex<double>>;

// Matrix of `op` (acting on weighted functions v = w e^{-|z|²}) in the
// orthonormal basis, domain B_N, codomain B_{N+1}.  `op` must carry no ξ/λ/x
// symbols and may raise total degree by at most one.
template <typename Scalar>
OperatorMatrix<Scalar> assemble(const WeylElement& op, const TruncatedBasis& domain);

// Block assembly of a FormOperator; domain components are copies of B_N,
// target components copies of B_{N+1}, component-major layout.
template <typename Scalar>
OperatorMatrix<Scalar> assemble_blocks(const FormOperator& op, const TruncatedBasis& domain);

// δ-assembly at truncation N equals the conjugate transpose of the
// ∂̄-assembly at truncation N+1 on the compatible block (rows of the former
// against the nested codomain prefix of the latter).
bool adjoint_pair_consistent(const OperatorMatrixX& dbar_hi, const OperatorMatrixX& delta_lo,
                             int dim_dom_lo, int dim_cod_lo);
bool adjoint_pair_consistent(const OperatorMatrixD& dbar_hi, const OperatorMatrixD& delta_lo,
                             int dim_dom_lo, int dim_cod_lo, double rel_tol);

// Coordinate text export: one "row col re im" line per stored entry, row-major.
std::string export_coordinate(const OperatorMatrixD& m);
std::string export_coordinate(const OperatorMatrixX& m);

Eigen::SparseMatrix<std::complex<double>> to_sparse(const OperatorMatrixD& m);

}  // namespace qcr
