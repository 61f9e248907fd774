#include "qcr/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace qcr {

void QuadricSpec::validate() const {
  if (n < 1 || d < 1)
    throw DimensionError("QuadricSpec: need n >= 1 and d >= 1, got n=" + std::to_string(n) +
                         " d=" + std::to_string(d));
  if (static_cast<int>(forms.size()) != d)
    throw DimensionError("QuadricSpec: " + std::to_string(forms.size()) + " forms for d=" +
                         std::to_string(d));
  for (int l = 0; l < d; ++l) {
    if (forms[static_cast<std::size_t>(l)].dim() != n)
      throw DimensionError("QuadricSpec: form " + std::to_string(l) + " has dim " +
                           std::to_string(forms[static_cast<std::size_t>(l)].dim()) + ", expected " +
                           std::to_string(n));
    if (auto jk = forms[static_cast<std::size_t>(l)].hermitian_defect())
      throw Error("QuadricSpec: form " + std::to_string(l) + " not hermitian at (j=" +
                  std::to_string(jk->first) + ",k=" + std::to_string(jk->second) + ")");
  }
}

HermitianMatrixD QuadricSpec::form_d(int l) const {
  const auto& f = forms[static_cast<std::size_t>(l)];
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      m(j, k) = std::complex<double>(f(j, k).re.to_double(), f(j, k).im.to_double());
  return HermitianMatrixD(std::move(m));
}

HermitianMatrixQ levi_matrix(const QuadricSpec& spec, const Conormal& xi) {
  if (xi.dim() != spec.d)
    throw DimensionError("levi_matrix: conormal has length " + std::to_string(xi.dim()) +
                         ", spec has d=" + std::to_string(spec.d));
  MatrixQC m = MatrixQC::Constant(spec.n, spec.n, RationalComplex());
  for (int l = 0; l < spec.d; ++l) {
    const RationalComplex w(xi[l]);
    for (int j = 0; j < spec.n; ++j)
      for (int k = 0; k < spec.n; ++k) m(j, k) += w * spec.forms[static_cast<std::size_t>(l)](j, k);
  }
  return HermitianMatrixQ(std::move(m));
}

HermitianMatrixD levi_matrix_d(const QuadricSpec& spec, const Eigen::VectorXd& xi) {
  if (xi.size() != spec.d)
    throw DimensionError("levi_matrix_d: conormal has length " + std::to_string(xi.size()) +
                         ", spec has d=" + std::to_string(spec.d));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(spec.n, spec.n);
  for (int l = 0; l < spec.d; ++l) m += xi[l] * spec.form_d(l).mat();
  return HermitianMatrixD(std::move(m));
}

namespace {

LeviSpectrum spectrum_of(const Eigen::MatrixXcd& h, double zero_tolerance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw EigensolverError("levi_spectrum: eigensolver did not converge (n=" +
                           std::to_string(h.rows()) + ", info=" + std::to_string(es.info()) + ")");
  LeviSpectrum s;
  s.eigenvalues = es.eigenvalues();
  double opnorm = 0.0;
  for (int i = 0; i < s.eigenvalues.size(); ++i)
    opnorm = std::max(opnorm, std::abs(s.eigenvalues[i]));
  s.zero_tolerance = zero_tolerance >= 0 ? zero_tolerance : 1e-10 * opnorm;
  for (int i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues[i] > s.zero_tolerance)
      ++s.n_pos;
    else if (s.eigenvalues[i] < -s.zero_tolerance)
      ++s.n_neg;
    else
      ++s.n_zero;
  }
  return s;
}

}  // namespace

LeviSpectrum levi_spectrum(const QuadricSpec& spec, const Conormal& xi, double zero_tolerance) {
  if (xi.is_zero()) throw PreconditionError("levi_spectrum: conormal must be nonzero");
  return spectrum_of(levi_matrix_d(spec, xi.as_doubles()).mat(), zero_tolerance);
}

LeviSpectrum levi_spectrum_d(const QuadricSpec& spec, const Eigen::VectorXd& xi,
                             double zero_tolerance) {
  if (xi.norm() == 0.0) throw PreconditionError("levi_spectrum: conormal must be nonzero");
  return spectrum_of(levi_matrix_d(spec, xi).mat(), zero_tolerance);
}

int pseudoconcavity_at(const QuadricSpec& spec, const Conormal& xi) {
  LeviSpectrum s = levi_spectrum(spec, xi);
  return std::min(s.n_pos, s.n_neg);
}

int pseudoconcavity_at_d(const QuadricSpec& spec, const Eigen::VectorXd& xi) {
  LeviSpectrum s = levi_spectrum_d(spec, xi);
  return std::min(s.n_pos, s.n_neg);
}

std::pair<Eigen::MatrixXcd, LeviSpectrum> diagonalize_levi(const QuadricSpec& spec,
                                                           const Conormal& xi) {
  if (xi.is_zero()) throw PreconditionError("diagonalize_levi: conormal must be nonzero");
  Eigen::MatrixXcd h = levi_matrix_d(spec, xi.as_doubles()).mat();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw EigensolverError("diagonalize_levi: eigensolver did not converge (n=" +
                           std::to_string(h.rows()) + ")");
  LeviSpectrum s;
  s.eigenvalues = es.eigenvalues();
  double opnorm = s.eigenvalues.size() ? std::max(std::abs(s.eigenvalues[0]),
                                                  std::abs(s.eigenvalues[s.eigenvalues.size() - 1]))
                                       : 0.0;
  s.zero_tolerance = 1e-10 * opnorm;
  for (int i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues[i] > s.zero_tolerance)
      ++s.n_pos;
    else if (s.eigenvalues[i] < -s.zero_tolerance)
      ++s.n_neg;
    else
      ++s.n_zero;
  }
  return {es.eigenvectors(), s};
}

// --- sphere certification ----------------------------------------------------

namespace {

std::vector<Eigen::VectorXd> sphere_grid(int d, double spacing) {
  std::vector<Eigen::VectorXd> pts;
  if (d == 2) {
    // Equally spaced directions; covering radius π/m ≤ spacing/2.
    int m = std::max(4, static_cast<int>(std::ceil(2.0 * M_PI / spacing)));
    pts.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      double th = 2.0 * M_PI * i / m;
      Eigen::VectorXd v(2);
      v << std::cos(th), std::sin(th);
      pts.push_back(v);
    }
  } else if (d == 3) {
    // Latitude rings at meridian step ≤ spacing/2, longitudinal step ≤ spacing/2;
    // chordal covering radius ≤ spacing/√2 < spacing.
    int nlat = std::max(3, static_cast<int>(std::ceil(2.0 * M_PI / spacing)) + 1);
    for (int i = 0; i < nlat; ++i) {
      double phi = M_PI * i / (nlat - 1);
      double s = std::sin(phi);
      int nlon = std::max(1, static_cast<int>(std::ceil(4.0 * M_PI * s / spacing)));
      for (int j = 0; j < nlon; ++j) {
        double th = 2.0 * M_PI * j / nlon;
        Eigen::VectorXd v(3);
        v << s * std::cos(th), s * std::sin(th), std::cos(phi);
        pts.push_back(v);
      }
    }
  } else {
    throw Error("certify_pseudoconcavity: sphere sampling implemented for d <= 3, got d=" +
                std::to_string(d));
  }
  return pts;
}

int env_threads() {
  if (const char* env = std::getenv("QCR_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

PseudoconcavityCertificate certify_pseudoconcavity(const QuadricSpec& spec, int q,
                                                   double grid_spacing, int threads) {
  if (q < 0 || grid_spacing <= 0.0)
    throw PreconditionError("certify_pseudoconcavity: need q >= 0 and grid_spacing > 0");
  PseudoconcavityCertificate cert;
  cert.q = q;
  cert.grid_spacing = grid_spacing;

  if (q == 0) {
    cert.certified = true;
    cert.reason = "q=0 holds vacuously";
    return cert;
  }
  if (q > spec.n / 2) {
    cert.certified = false;
    cert.reason = "q=" + std::to_string(q) + " exceeds floor(n/2)=" + std::to_string(spec.n / 2) +
                  "; min(n_pos,n_neg) <= n/2 always";
    return cert;
  }

  double lipschitz = 0.0;
  for (int l = 0; l < spec.d; ++l) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(spec.form_d(l).mat(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw EigensolverError("certify: form eigensolve failed");
    double nrm = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      nrm = std::max(nrm, std::abs(es.eigenvalues()[i]));
    lipschitz += nrm;
  }
  cert.lipschitz_bound = lipschitz;

  if (spec.d == 1) {
    // Every conormal is a positive multiple of ±1; signature is scale-invariant.
    for (double s : {1.0, -1.0}) {
      Eigen::VectorXd xi(1);
      xi << s;
      LeviSpectrum sp = levi_spectrum_d(spec, xi);
      ++cert.samples;
      if (std::min(sp.n_pos, sp.n_neg) < q) cert.witnesses.push_back(xi);
    }
    cert.certified = cert.witnesses.empty();
    return cert;
  }

  const double margin = lipschitz * grid_spacing;
  std::vector<Eigen::VectorXd> grid = sphere_grid(spec.d, grid_spacing);
  cert.samples = grid.size();

  // A sample passes when at least q eigenvalues sit above +margin and at least
  // q below −margin; Weyl's inequality then covers the whole covering ball.
  std::vector<char> fail(grid.size(), 0);
  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Eigen::MatrixXcd h = levi_matrix_d(spec, grid[i]).mat();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) {
        fail[i] = 1;
        continue;
      }
      const auto& ev = es.eigenvalues();
      const int n = spec.n;
      bool ok = ev[q - 1] < -margin && ev[n - q] > margin;
      fail[i] = ok ? 0 : 1;
    }
  };

  int nthreads = threads > 0 ? threads : env_threads();
  nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(grid.size())));
  if (nthreads == 1) {
    run(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (grid.size() + static_cast<std::size_t>(nthreads) - 1) /
                        static_cast<std::size_t>(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      std::size_t lo = static_cast<std::size_t>(t) * chunk;
      std::size_t hi = std::min(grid.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(run, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < grid.size(); ++i)
    if (fail[i]) cert.witnesses.push_back(grid[i]);
  cert.certified = cert.witnesses.empty();
  return cert;
}

// --- weights ------------------------------------------------------------------

template <typename Scalar>
std::vector<Scalar> balancing_weights(const std::vector<Scalar>& lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  const Scalar zero(0);
  int r = 0, s = 0;  // 1-based
  for (int j = 1; j <= n && r == 0; ++j)
    if (j != k && lambda[static_cast<std::size_t>(j - 1)] < zero) r = j;
  for (int j = 1; j <= n && s == 0; ++j)
    if (j != k && lambda[static_cast<std::size_t>(j - 1)] > zero) s = j;
  if (r == 0 || s == 0)
    throw PreconditionError("balancing_weights: insufficient signature excluding k=" +
                            std::to_string(k));
  std::vector<Scalar> a(static_cast<std::size_t>(n), zero);
  const Scalar lr = lambda[static_cast<std::size_t>(r - 1)];
  const Scalar ls = lambda[static_cast<std::size_t>(s - 1)];
  const Scalar den = ls - lr;
  a[static_cast<std::size_t>(r - 1)] = ls / den;
  a[static_cast<std::size_t>(s - 1)] = (zero - lr) / den;
  return a;
}

template <typename Scalar>
std::vector<Scalar> function_weights(const std::vector<Scalar>& lambda) {
  const int n = static_cast<int>(lambda.size());
  const Scalar zero(0);
  if (n < 2 || !(lambda.front() < zero) || !(lambda.back() > zero))
    throw PreconditionError("function_weights: Levi form not indefinite");
  std::vector<Scalar> c(static_cast<std::size_t>(n), zero);
  const Scalar l1 = lambda.front();
  const Scalar ln = lambda.back();
  const Scalar den = ln - l1;
  c.front() = ln / den;
  c.back() = (zero - l1) / den;
  return c;
}

template std::vector<Rational> balancing_weights<Rational>(const std::vector<Rational>&, int);
template std::vector<double> balancing_weights<double>(const std::vector<double>&, int);
template std::vector<Rational> function_weights<Rational>(const std::vector<Rational>&);
template std::vector<double> function_weights<double>(const std::vector<double>&);

// --- membership ----------------------------------------------------------------

bool membership(const QuadricSpec& spec, const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) {
  if (z.size() != spec.n || w.size() != spec.d)
    throw DimensionError("membership: z has length " + std::to_string(z.size()) + " (need n=" +
                         std::to_string(spec.n) + "), w has length " + std::to_string(w.size()) +
                         " (need d=" + std::to_string(spec.d) + ")");
  for (int l = 0; l < spec.d; ++l) {
    Eigen::MatrixXcd h = spec.form_d(l).mat();
    std::complex<double> v = 0.0;
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j) v += h(i, j) * z[i] * std::conj(z[j]);
    if (std::abs(w[l].imag() - v.real()) > 1e-12) return false;
  }
  return true;
}

// --- JSON ------------------------------------------------------------------------

namespace {

Rational entry_to_rational(const nlohmann::json& v, const char* where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_float()) return Rational::from_double(v.get<double>());
  throw Error(std::string("quadric json: ") + where + " entry must be a number or a string");
}

MatrixQC parse_matrix(const nlohmann::json& rows, int n, const char* where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw Error(std::string("quadric json: ") + where + " must be an n x n array");
  MatrixQC m = MatrixQC::Constant(n, n, RationalComplex());
  for (int j = 0; j < n; ++j) {
    const auto& row = rows[static_cast<std::size_t>(j)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error(std::string("quadric json: ") + where + " row " + std::to_string(j) +
                  " must have n entries");
    for (int k = 0; k < n; ++k)
      m(j, k) = RationalComplex(entry_to_rational(row[static_cast<std::size_t>(k)], where));
  }
  return m;
}

}  // namespace

QuadricSpec parse_quadric_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  QuadricSpec spec;
  if (!j.contains("n") || !j.contains("d") || !j.contains("forms"))
    throw Error("quadric json: need keys n, d, forms");
  spec.n = j["n"].get<int>();
  spec.d = j["d"].get<int>();
  if (spec.n < 1 || spec.d < 1) throw Error("quadric json: need n >= 1 and d >= 1");
  const auto& forms = j["forms"];
  if (!forms.is_array() || static_cast<int>(forms.size()) != spec.d)
    throw Error("quadric json: forms must be an array of length d=" + std::to_string(spec.d));
  for (int l = 0; l < spec.d; ++l) {
    const auto& f = forms[static_cast<std::size_t>(l)];
    if (!f.contains("re")) throw Error("quadric json: form " + std::to_string(l) + " missing re");
    MatrixQC re = parse_matrix(f["re"], spec.n, "re");
    MatrixQC m = re;
    if (f.contains("im")) {
      MatrixQC im = parse_matrix(f["im"], spec.n, "im");
      for (int a = 0; a < spec.n; ++a)
        for (int b = 0; b < spec.n; ++b)
          m(a, b) = RationalComplex(re(a, b).re, im(a, b).re);
    }
    HermitianMatrixQ hm(std::move(m));
    if (auto jk = hm.hermitian_defect())
      throw Error("quadric json: form " + std::to_string(l) + " not hermitian at (j=" +
                  std::to_string(jk->first) + ",k=" + std::to_string(jk->second) + ")");
    spec.forms.push_back(std::move(hm));
  }
  spec.validate();
  return spec;
}

QuadricSpec load_quadric_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open quadric spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quadric_json(ss.str());
}

std::string quadric_to_json(const QuadricSpec& spec) {
  nlohmann::ordered_json j;
  j["n"] = spec.n;
  j["d"] = spec.d;
  j["forms"] = nlohmann::ordered_json::array();
  for (const auto& f : spec.forms) {
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    bool has_im = false;
    for (int a = 0; a < spec.n; ++a) {
      nlohmann::ordered_json rrow = nlohmann::ordered_json::array();
      nlohmann::ordered_json irow = nlohmann::ordered_json::array();
      for (int b = 0; b < spec.n; ++b) {
        rrow.push_back(f(a, b).re.to_string());
        irow.push_back(f(a, b).im.to_string());
        if (!f(a, b).im.is_zero()) has_im = true;
      }
      re.push_back(rrow);
      im.push_back(irow);
    }
    nlohmann::ordered_json form;
    form["re"] = re;
    if (has_im) form["im"] = im;
    j["forms"].push_back(form);
  }
  return j.dump(2);
}

// --- fixtures ----------------------------------------------------------------------

QuadricSpec example_hypersurface_41() {
  QuadricSpec s;
  s.n = 4;
  s.d = 1;
  MatrixQC m = MatrixQC::Constant(4, 4, RationalComplex());
  m(0, 0) = RationalComplex(Rational(-1));
  m(1, 1) = RationalComplex(Rational(-1));
  m(2, 2) = RationalComplex(Rational(1));
  m(3, 3) = RationalComplex(Rational(1));
  s.forms.emplace_back(std::move(m));
  return s;
}

QuadricSpec example_hypersurface_41_flipped() {
  QuadricSpec s;
  s.n = 4;
  s.d = 1;
  MatrixQC m = MatrixQC::Constant(4, 4, RationalComplex());
  m(0, 0) = RationalComplex(Rational(1));
  m(1, 1) = RationalComplex(Rational(1));
  m(2, 2) = RationalComplex(Rational(-1));
  m(3, 3) = RationalComplex(Rational(-1));
  s.forms.emplace_back(std::move(m));
  return s;
}

QuadricSpec example_clifford_42() {
  QuadricSpec s;
  s.n = 4;
  s.d = 2;
  MatrixQC h1 = MatrixQC::Constant(4, 4, RationalComplex());
  h1(0, 0) = RationalComplex(Rational(1));
  h1(1, 1) = RationalComplex(Rational(1));
  h1(2, 2) = RationalComplex(Rational(-1));
  h1(3, 3) = RationalComplex(Rational(-1));
  MatrixQC h2 = MatrixQC::Constant(4, 4, RationalComplex());
  h2(0, 2) = RationalComplex(Rational(1));
  h2(1, 3) = RationalComplex(Rational(1));
  h2(2, 0) = RationalComplex(Rational(1));
  h2(3, 1) = RationalComplex(Rational(1));
  s.forms.emplace_back(std::move(h1));
  s.forms.emplace_back(std::move(h2));
  return s;
}

}  // namespace qcr
