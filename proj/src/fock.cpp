#include "qcr/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcr {

std::uint64_t basis_dimension(int n, int N, std::uint64_t cap) {
  if (n < 1 || N < 0) throw PreconditionError("basis_dimension: need n >= 1, N >= 0");
  // C(N + 2n, 2n), guarded against the cap.
  std::uint64_t v = 1;
  for (int i = 1; i <= 2 * n; ++i) {
    v = v * static_cast<std::uint64_t>(N + i) / static_cast<std::uint64_t>(i);
    if (v > (std::uint64_t(1) << 50))
      throw Error("basis_dimension: overflow; raise the cap or lower N");
  }
  if (v > cap)
    throw Error("basis_dimension: dimension " + std::to_string(v) + " exceeds cap " +
                std::to_string(cap) + "; required cap >= " + std::to_string(v));
  return v;
}

TruncatedBasis TruncatedBasis::build(int n, int N, NumericMode mode, std::uint64_t cap) {
  std::uint64_t dim = basis_dimension(n, N, cap);
  TruncatedBasis b;
  b.n_ = n;
  b.N_ = N;
  b.mode_ = mode;
  b.list_.reserve(dim);

  // Graded lexicographic enumeration of 2n-tuples (p_1,q_1,...,p_n,q_n).
  std::vector<int> flat(static_cast<std::size_t>(2 * n), 0);
  auto emit = [&]() {
    BasisIndex idx;
    idx.pq.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      idx.pq[static_cast<std::size_t>(j)] = {flat[static_cast<std::size_t>(2 * j)],
                                             flat[static_cast<std::size_t>(2 * j + 1)]};
    b.pos_.emplace(idx, static_cast<int>(b.list_.size()));
    b.list_.push_back(std::move(idx));
  };
  // enumerate tuples of fixed total degree t in lex order, t = 0..N
  for (int t = 0; t <= N; ++t) {
    std::fill(flat.begin(), flat.end(), 0);
    // recursive descent emulated with an explicit stack over positions
    std::vector<int> rem(static_cast<std::size_t>(2 * n) + 1, 0);
    // simple recursive lambda
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
      if (pos + 1 == flat.size()) {
        flat[pos] = left;
        emit();
        flat[pos] = 0;
        return;
      }
      for (int v = 0; v <= left; ++v) {
        flat[pos] = v;
        self(self, pos + 1, left - v);
      }
      flat[pos] = 0;
    };
    rec(rec, 0, t);
  }
  return b;
}

namespace {

// Exact coefficients of (gaussian-conjugated) op applied to Π H_{p_j,q_j}.
using HermiteCoeffs = std::map<BasisIndex, RationalComplex>;

void ladder_step(HermiteCoeffs& st, VarKind kind, int var /*0-based*/) {
  HermiteCoeffs out;
  auto bump = [&out](BasisIndex idx, int var, int dp, int dq, const RationalComplex& c) {
    if (c.is_zero()) return;
    auto& [p, q] = idx.pq[static_cast<std::size_t>(var)];
    p += dp;
    q += dq;
    auto it = out.find(idx);
    if (it == out.end())
      out.emplace(std::move(idx), c);
    else {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto& [idx, c] : st) {
    const auto [p, q] = idx.pq[static_cast<std::size_t>(var)];
    switch (kind) {
      case VarKind::Dz:
        if (p > 0) bump(idx, var, -1, 0, c * RationalComplex(Rational(p)));
        break;
      case VarKind::Dzbar:
        if (q > 0) bump(idx, var, 0, -1, c * RationalComplex(Rational(q)));
        break;
      case VarKind::Z:
        bump(idx, var, 1, 0, c);
        if (q > 0) bump(idx, var, 0, -1, c * RationalComplex(Rational(q)));
        break;
      case VarKind::Zbar:
        bump(idx, var, 0, 1, c);
        if (p > 0) bump(idx, var, -1, 0, c * RationalComplex(Rational(p)));
        break;
      default:
        throw Error("ladder_step: unsupported variable kind");
    }
  }
  st = std::move(out);
}

HermiteCoeffs apply_on_hermite(const WeylElement& opw, const BasisIndex& alpha) {
  HermiteCoeffs out;
  for (const auto& [mono, coeff] : opw.terms()) {
    HermiteCoeffs st;
    st.emplace(alpha, coeff);
    // normal form is (multiplications)·(derivatives); apply right-to-left,
    // i.e. walk the sorted exponent list backwards
    const auto& ent = mono.entries();
    for (auto it = ent.rbegin(); it != ent.rend() && !st.empty(); ++it) {
      VarKind kind = key_kind(it->first);
      int var = key_index(it->first) - 1;
      switch (kind) {
        case VarKind::Z:
        case VarKind::Zbar:
        case VarKind::Dz:
        case VarKind::Dzbar:
          for (int e = 0; e < it->second && !st.empty(); ++e) ladder_step(st, kind, var);
          break;
        default:
          throw Error("assemble: operator still carries " + std::string(
                          kind == VarKind::Xi      ? "xi"
                          : kind == VarKind::Lambda ? "lambda"
                                                    : "x") +
                      " symbols; substitute numeric values first");
      }
    }
    for (const auto& [idx, c] : st) {
      auto it = out.find(idx);
      if (it == out.end())
        out.emplace(idx, c);
      else {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

// ‖H_β‖/‖H_α‖ as an exact ratio of factorial products, slot by slot.
Rational norm_ratio_sq(const BasisIndex& alpha, const BasisIndex& beta) {
  Rational r(1);
  for (std::size_t j = 0; j < alpha.pq.size(); ++j) {
    auto grow = [&r](int from, int to) {
      for (int t = from + 1; t <= to; ++t) r *= Rational(t);
      for (int t = to + 1; t <= from; ++t) r /= Rational(t);
    };
    grow(alpha.pq[j].first, beta.pq[j].first);
    grow(alpha.pq[j].second, beta.pq[j].second);
  }
  return r;
}

template <typename Scalar>
Scalar scale_entry(const RationalComplex& coeff, const Rational& ratio_sq);

template <>
SurdSum scale_entry<SurdSum>(const RationalComplex& coeff, const Rational& ratio_sq) {
  // √(a/b) = √(a·b)/b with a·b a (possibly large) integer radicand
  std::int64_t num = static_cast<std::int64_t>(ratio_sq.num());
  std::int64_t den = static_cast<std::int64_t>(ratio_sq.den());
  SurdSum s = SurdSum(coeff) * SurdSum::sqrt_of(num * den);
  return s * SurdSum(Rational(1, den));
}

template <>
std::complex<double> scale_entry<std::complex<double>>(const RationalComplex& coeff,
                                                       const Rational& ratio_sq) {
  double w = std::sqrt(ratio_sq.to_double());
  return std::complex<double>(coeff.re.to_double(), coeff.im.to_double()) * w;
}

}  // namespace

template <typename Scalar>
OperatorMatrix<Scalar> assemble(const WeylElement& op, const TruncatedBasis& domain) {
  if (op.has_kind(VarKind::Xi) || op.has_kind(VarKind::Lambda))
    throw PreconditionError("assemble: substitute numeric xi/lambda before assembly");
  if (op.has_kind(VarKind::X) || op.has_kind(VarKind::Dx))
    throw PreconditionError("assemble: operator must be Fourier-reduced (no x, no d/dx)");

  const WeylElement opw = op.gaussian_conjugate();
  int raise = opw.max_degree_raise();
  if (raise > 1)
    throw Error("assemble: operator raises total degree by " + std::to_string(raise) +
                "; not representable with codomain B_{N+1}");

  TruncatedBasis codomain =
      TruncatedBasis::build(domain.n(), domain.max_degree() + 1, domain.mode());

  OperatorMatrix<Scalar> m;
  m.rows = codomain.dim();
  m.cols = domain.dim();
  for (int col = 0; col < domain.dim(); ++col) {
    HermiteCoeffs coeffs = apply_on_hermite(opw, domain.at(col));
    for (const auto& [beta, c] : coeffs) {
      int row = codomain.position(beta);
      if (row < 0)
        throw Error("assemble: image escapes codomain truncation");  // cannot happen if raise<=1
      m.entries.emplace(std::make_pair(row, col),
                        scale_entry<Scalar>(c, norm_ratio_sq(domain.at(col), beta)));
    }
  }
  return m;
}

template OperatorMatrixX assemble<SurdSum>(const WeylElement&, const TruncatedBasis&);
template OperatorMatrixD assemble<std::complex<double>>(const WeylElement&, const TruncatedBasis&);

template <typename Scalar>
OperatorMatrix<Scalar> assemble_blocks(const FormOperator& op, const TruncatedBasis& domain) {
  TruncatedBasis codomain =
      TruncatedBasis::build(domain.n(), domain.max_degree() + 1, domain.mode());
  const int bc = domain.dim(), br = codomain.dim();
  OperatorMatrix<Scalar> m;
  m.rows = op.target_count() * br;
  m.cols = op.source_count() * bc;
  for (const auto& [ts, el] : op.components) {
    OperatorMatrix<Scalar> blk = assemble<Scalar>(el, domain);
    for (const auto& [rc, v] : blk.entries)
      m.entries.emplace(std::make_pair(ts.first * br + rc.first, ts.second * bc + rc.second), v);
  }
  return m;
}

template OperatorMatrixX assemble_blocks<SurdSum>(const FormOperator&, const TruncatedBasis&);
template OperatorMatrixD assemble_blocks<std::complex<double>>(const FormOperator&,
                                                               const TruncatedBasis&);

bool adjoint_pair_consistent(const OperatorMatrixX& dbar_hi, const OperatorMatrixX& delta_lo,
                             int dim_dom_lo, int dim_cod_lo) {
  // delta_lo(β,α) must equal conj(dbar_hi(α,β)) for α < dim_dom_lo, β < dim_cod_lo
  for (const auto& [rc, v] : delta_lo.entries) {
    if (rc.first >= dim_cod_lo || rc.second >= dim_dom_lo) return false;
    if (v != conj(dbar_hi.at(rc.second, rc.first))) return false;
  }
  for (const auto& [rc, v] : dbar_hi.entries) {
    if (rc.first >= dim_dom_lo || rc.second >= dim_cod_lo) continue;
    if (delta_lo.at(rc.second, rc.first) != conj(v)) return false;
  }
  return true;
}

bool adjoint_pair_consistent(const OperatorMatrixD& dbar_hi, const OperatorMatrixD& delta_lo,
                             int dim_dom_lo, int dim_cod_lo, double rel_tol) {
  double scale = 0.0;
  for (const auto& [rc, v] : delta_lo.entries) scale = std::max(scale, std::abs(v));
  for (const auto& [rc, v] : delta_lo.entries) {
    if (rc.first >= dim_cod_lo || rc.second >= dim_dom_lo) return false;
    if (std::abs(v - std::conj(dbar_hi.at(rc.second, rc.first))) > rel_tol * scale) return false;
  }
  for (const auto& [rc, v] : dbar_hi.entries) {
    if (rc.first >= dim_dom_lo || rc.second >= dim_cod_lo) continue;
    if (std::abs(delta_lo.at(rc.second, rc.first) - std::conj(v)) > rel_tol * scale) return false;
  }
  return true;
}

std::string export_coordinate(const OperatorMatrixD& m) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& [rc, v] : m.entries)
    os << rc.first << " " << rc.second << " " << v.real() << " " << v.imag() << "\n";
  return os.str();
}

std::string export_coordinate(const OperatorMatrixX& m) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& [rc, v] : m.entries) {
    std::complex<double> z = v.to_complex();
    os << rc.first << " " << rc.second << " " << z.real() << " " << z.imag() << "\n";
  }
  return os.str();
}

Eigen::SparseMatrix<std::complex<double>> to_sparse(const OperatorMatrixD& m) {
  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  trip.reserve(m.entries.size());
  for (const auto& [rc, v] : m.entries) trip.emplace_back(rc.first, rc.second, v);
  Eigen::SparseMatrix<std::complex<double>> s(m.rows, m.cols);
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

}  // namespace qcr
