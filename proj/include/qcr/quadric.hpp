// quadric.hpp — quadric CR submanifolds of C^{n+d} and their Levi forms.
//
// A quadric of type (n,d) is { Im z_ℓ = H_ℓ(z) } with H_ℓ hermitian forms on
// C^n.  The Levi matrix along a conormal ξ is h^ξ = Σ_ℓ ξ_ℓ H_ℓ; its signature
// drives everything else in this library.  Specs are stored with exact
// rational-complex entries; doubles appear only through explicit views.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qcr/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<qcr::Rational> : GenericNumTraits<qcr::Rational> {
  typedef qcr::Rational Real;
  typedef qcr::Rational NonInteger;
  typedef qcr::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 10,
    MulCost = 10
  };
  static inline Real epsilon() { return qcr::Rational(0); }
  static inline Real dummy_precision() { return qcr::Rational(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<qcr::RationalComplex> : GenericNumTraits<qcr::RationalComplex> {
  typedef qcr::Rational Real;
  typedef qcr::RationalComplex NonInteger;
  typedef qcr::RationalComplex Nested;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 20,
    MulCost = 40
  };
  static inline Real epsilon() { return qcr::Rational(0); }
  static inline Real dummy_precision() { return qcr::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qcr {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};
struct DimensionError : Error {
  using Error::Error;
};
struct EigensolverError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using MatrixQC = DenseMatrix<RationalComplex>;

// Hermitian n×n matrix over an exact or floating complex scalar.
template <typename Scalar>
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(int n) : m_(DenseMatrix<Scalar>::Zero(n, n)) {}
  explicit HermitianMatrix(DenseMatrix<Scalar> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
      throw DimensionError("HermitianMatrix: " + std::to_string(m_.rows()) + "x" +
                           std::to_string(m_.cols()) + " is not square");
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const DenseMatrix<Scalar>& mat() const { return m_; }
  DenseMatrix<Scalar>& mat() { return m_; }
  const Scalar& operator()(int j, int k) const { return m_(j, k); }
  Scalar& operator()(int j, int k) { return m_(j, k); }

  // First (j,k) with entry(j,k) != conj(entry(k,j)), if any.
  std::optional<std::pair<int, int>> hermitian_defect() const {
    for (int j = 0; j < dim(); ++j)
      for (int k = j; k < dim(); ++k)
        if (m_(j, k) != conj(m_(k, j))) return std::make_pair(j, k);
    return std::nullopt;
  }

 private:
  DenseMatrix<Scalar> m_;
};

using HermitianMatrixQ = HermitianMatrix<RationalComplex>;
using HermitianMatrixD = HermitianMatrix<std::complex<double>>;

// Conormal direction ξ ∈ R^d.  Stored exactly; decimal strings such as "0.7"
// parse to 7/10, doubles convert by their exact binary expansion.
class Conormal {
 public:
  Conormal() = default;
  explicit Conormal(std::vector<Rational> xi) : xi_(std::move(xi)) {}
  static Conormal of(std::initializer_list<Rational> xi) { return Conormal(std::vector<Rational>(xi)); }
  static Conormal from_doubles(const Eigen::VectorXd& v) {
    std::vector<Rational> xi(v.size());
    for (int i = 0; i < v.size(); ++i) xi[static_cast<std::size_t>(i)] = Rational::from_double(v[i]);
    return Conormal(std::move(xi));
  }

  int dim() const { return static_cast<int>(xi_.size()); }
  const Rational& operator[](int l) const { return xi_[static_cast<std::size_t>(l)]; }
  const std::vector<Rational>& values() const { return xi_; }
  bool is_zero() const {
    for (const auto& x : xi_)
      if (!x.is_zero()) return false;
    return true;
  }
  Eigen::VectorXd as_doubles() const {
    Eigen::VectorXd v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = xi_[static_cast<std::size_t>(i)].to_double();
    return v;
  }

 private:
  std::vector<Rational> xi_;
};

struct QuadricSpec {
  int n = 0;  // CR dimension
  int d = 0;  // CR codimension
  std::vector<HermitianMatrixQ> forms;

  void validate() const;
  HermitianMatrixD form_d(int l) const;
};

struct LeviSpectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  int n_pos = 0, n_zero = 0, n_neg = 0;
  double zero_tolerance = 0.0;
};

struct PseudoconcavityCertificate {
  int q = 0;
  double grid_spacing = 0.0;
  double lipschitz_bound = 0.0;
  bool certified = false;
  std::string reason;                    // set when rejected without sampling
  std::vector<Eigen::VectorXd> witnesses;  // failing conormals, grid order
  std::size_t samples = 0;
};

// --- Levi form operations ---------------------------------------------------

// h^ξ = Σ_ℓ ξ_ℓ H_ℓ, exact.
HermitianMatrixQ levi_matrix(const QuadricSpec& spec, const Conormal& xi);
// Same with a floating conormal (sphere scans).
HermitianMatrixD levi_matrix_d(const QuadricSpec& spec, const Eigen::VectorXd& xi);

// Eigenvalues of h^ξ sorted ascending plus the signature under zero_tolerance.
// zero_tolerance < 0 selects the default 1e-10·‖h^ξ‖.
LeviSpectrum levi_spectrum(const QuadricSpec& spec, const Conormal& xi, double zero_tolerance = -1.0);
LeviSpectrum levi_spectrum_d(const QuadricSpec& spec, const Eigen::VectorXd& xi,
                             double zero_tolerance = -1.0);

// min(n_pos, n_neg) of the Levi spectrum at ξ.
int pseudoconcavity_at(const QuadricSpec& spec, const Conormal& xi);
int pseudoconcavity_at_d(const QuadricSpec& spec, const Eigen::VectorXd& xi);

// Unitary U with U* h^ξ U diagonal, eigenvalues ascending.
std::pair<Eigen::MatrixXcd, LeviSpectrum> diagonalize_levi(const QuadricSpec& spec,
                                                           const Conormal& xi);

// Sound sphere certificate: samples the unit sphere in R^d at covering radius
// ≤ grid_spacing and demands eigenvalue margins > L·grid_spacing where
// L = Σ_ℓ‖H_ℓ‖ (eigenvalues of h^ξ are L-Lipschitz in ξ).  d=1 degenerates to
// ξ = ±1 with no margin requirement.
PseudoconcavityCertificate certify_pseudoconcavity(const QuadricSpec& spec, int q,
                                                   double grid_spacing, int threads = 0);

// --- Balancing weights (§-style convex combinations) ------------------------

// a_j ≥ 0 with a_k = 0, Σ a_j = 1, Σ a_j λ_j = 0, supported on the first
// negative/positive pair (r, s) excluding k.  k = 0 excludes nothing.
template <typename Scalar>
std::vector<Scalar> balancing_weights(const std::vector<Scalar>& lambda, int k);

// c supported on {1, n} with Σ c = 1, Σ c λ = 0; needs λ₁ < 0 < λₙ.
template <typename Scalar>
std::vector<Scalar> function_weights(const std::vector<Scalar>& lambda);

// --- Point membership --------------------------------------------------------

// true iff Im(w_ℓ) = Σ_{ij} h^ℓ_{ij} z_i z̄_j for all ℓ, within 1e-12.
bool membership(const QuadricSpec& spec, const Eigen::VectorXcd& z, const Eigen::VectorXcd& w);

// --- JSON I/O ----------------------------------------------------------------

// {"n":…, "d":…, "forms":[{"re":[[…]], "im":[[…]]}, …]} with "im" optional.
// Entries may be integers, "p/q" / decimal strings, or doubles (converted by
// exact binary expansion).  Rejects non-Hermitian forms naming the first
// offending (j,k).
QuadricSpec load_quadric_json(const std::string& path);
QuadricSpec parse_quadric_json(const std::string& text);
std::string quadric_to_json(const QuadricSpec& spec);

// Shared fixtures: the type-(4,1) hypersurface with Levi signature (2,2) in
// the labeling that reproduces the reduced operators of this library, and its
// literal-sign variant; the anticommuting type-(4,2) pair with (h^ξ)² = |ξ|²·Id.
QuadricSpec example_hypersurface_41();
QuadricSpec example_hypersurface_41_flipped();
QuadricSpec example_clifford_42();

}  // namespace qcr
