#include "qcr/weyl.hpp"

#include <algorithm>

namespace qcr {

// --- Monomial -------------------------------------------------------------------

int Monomial::exponent(VarKey k) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), k,
                             [](const auto& p, VarKey key) { return p.first < key; });
  return (it != vars_.end() && it->first == k) ? it->second : 0;
}

void Monomial::set_exponent(VarKey k, int e) {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), k,
                             [](const auto& p, VarKey key) { return p.first < key; });
  if (it != vars_.end() && it->first == k) {
    if (e == 0)
      vars_.erase(it);
    else
      it->second = e;
  } else if (e != 0) {
    vars_.insert(it, {k, e});
  }
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [k, e] : vars_) d += e;
  return d;
}

bool Monomial::has_kind(VarKind kind) const {
  for (const auto& [k, e] : vars_)
    if (key_kind(k) == kind) return true;
  return false;
}

bool Monomial::operator<(const Monomial& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da < db;
  auto ia = vars_.begin(), ib = o.vars_.begin();
  while (ia != vars_.end() && ib != o.vars_.end()) {
    if (ia->first != ib->first) return ia->first > ib->first;  // earlier variable present => larger
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return false;  // equal (same degree, exhausted together)
}

// --- WeylElement -----------------------------------------------------------------

void WeylElement::add_term(const Monomial& m, const RationalComplex& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

WeylElement WeylElement::constant(RationalComplex c) {
  WeylElement e;
  e.add_term(Monomial(), c);
  return e;
}

WeylElement WeylElement::variable(VarKind kind, int index) {
  if (index < 1 || index > 255) throw Error("WeylElement: variable index out of range");
  Monomial m;
  m.set_exponent(var_key(kind, index), 1);
  WeylElement e;
  e.add_term(m, RationalComplex(Rational(1)));
  return e;
}

bool WeylElement::has_kind(VarKind kind) const {
  for (const auto& [m, c] : terms_)
    if (m.has_kind(kind)) return true;
  return false;
}

WeylElement WeylElement::operator-() const {
  WeylElement e;
  for (const auto& [m, c] : terms_) e.terms_.emplace(m, -c);
  return e;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

namespace {

Rational factorial(int k) {
  int128 f = 1;
  for (int i = 2; i <= k; ++i) f = detail::checked_mul(f, i);
  return Rational(f, 1);
}

Rational binomial(int m, int i) {
  if (i < 0 || i > m) return Rational(0);
  int128 v = 1;
  for (int t = 0; t < i; ++t) {
    v = detail::checked_mul(v, m - t);
    v /= (t + 1);  // product of t+1 consecutive integers is divisible by (t+1)!
  }
  return Rational(v, 1);
}

VarKey partner_of(VarKey deriv) {
  switch (key_kind(deriv)) {
    case VarKind::Dz:
      return var_key(VarKind::Z, key_index(deriv));
    case VarKind::Dzbar:
      return var_key(VarKind::Zbar, key_index(deriv));
    case VarKind::Dx:
      return var_key(VarKind::X, key_index(deriv));
    default:
      return 0;
  }
}

}  // namespace

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  WeylElement out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const RationalComplex coeff = ca * cb;

      // Variables where a derivative of `a` meets a matching multiplication
      // of `b`; everything else just adds exponents.
      struct ActivePair {
        VarKey deriv, mult;
        int m, k;
      };
      std::vector<ActivePair> pairs;
      for (const auto& [key, exp] : ma.entries()) {
        if (!is_derivative(key_kind(key))) continue;
        VarKey p = partner_of(key);
        int k = mb.exponent(p);
        if (k > 0) pairs.push_back({key, p, exp, k});
      }

      Monomial base;
      for (const auto& [key, exp] : ma.entries()) base.set_exponent(key, exp);
      for (const auto& [key, exp] : mb.entries())
        base.set_exponent(key, base.exponent(key) + exp);

      if (pairs.empty()) {
        out.add_term(base, coeff);
        continue;
      }

      // ∂^m w^k = Σ_i  C(m,i) C(k,i) i!  w^{k-i} ∂^{m-i}, independently per pair.
      std::vector<int> idx(pairs.size(), 0);
      while (true) {
        RationalComplex c = coeff;
        Monomial m = base;
        for (std::size_t t = 0; t < pairs.size(); ++t) {
          int i = idx[t];
          if (i > 0) {
            c *= RationalComplex(binomial(pairs[t].m, i) * binomial(pairs[t].k, i) * factorial(i));
            m.set_exponent(pairs[t].deriv, m.exponent(pairs[t].deriv) - i);
            m.set_exponent(pairs[t].mult, m.exponent(pairs[t].mult) - i);
          }
        }
        out.add_term(m, c);

        std::size_t t = 0;
        for (; t < pairs.size(); ++t) {
          if (idx[t] < std::min(pairs[t].m, pairs[t].k)) {
            ++idx[t];
            std::fill(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(t), 0);
            break;
          }
        }
        if (t == pairs.size()) break;
      }
    }
  }
  return out;
}

WeylElement operator*(const RationalComplex& c, const WeylElement& e) {
  WeylElement out;
  if (c.is_zero()) return out;
  for (const auto& [m, v] : e.terms_) out.terms_.emplace(m, c * v);
  return out;
}

WeylElement WeylElement::pow(int k) const {
  WeylElement r = constant(RationalComplex(Rational(1)));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

WeylElement commutator(const WeylElement& a, const WeylElement& b) { return a * b - b * a; }

WeylElement WeylElement::fourier_reduce() const {
  WeylElement out;
  const RationalComplex iu = RationalComplex::i();
  for (const auto& [m, c] : terms_) {
    if (m.has_kind(VarKind::X))
      throw PreconditionError("fourier_reduce: x-dependent coefficient not reducible");
    Monomial r;
    RationalComplex coeff = c;
    for (const auto& [key, exp] : m.entries()) {
      if (key_kind(key) == VarKind::Dx) {
        VarKey xik = var_key(VarKind::Xi, key_index(key));
        r.set_exponent(xik, r.exponent(xik) + exp);
        for (int t = 0; t < exp; ++t) coeff *= iu;
      } else {
        r.set_exponent(key, r.exponent(key) + exp);
      }
    }
    out.add_term(r, coeff);
  }
  return out;
}

WeylElement WeylElement::formal_adjoint() const {
  WeylElement out;
  for (const auto& [m, c] : terms_) {
    if (m.has_kind(VarKind::X) || m.has_kind(VarKind::Dx))
      throw PreconditionError("formal_adjoint: reduce x-derivatives first");

    // adjoint(c·M·D) = conj(c) · adjoint(D) · adjoint(M); the adjoint factors
    // of D commute among themselves, M is a plain z ↔ z̄ swap.
    WeylElement term = constant(conj(c));
    Monomial madj;
    for (const auto& [key, exp] : m.entries()) {
      switch (key_kind(key)) {
        case VarKind::Z:
          madj.set_exponent(var_key(VarKind::Zbar, key_index(key)), exp);
          break;
        case VarKind::Zbar:
          madj.set_exponent(var_key(VarKind::Z, key_index(key)), exp);
          break;
        case VarKind::Xi:
        case VarKind::Lambda:
          madj.set_exponent(key, exp);
          break;
        case VarKind::Dz:
          term = term * (-dzbar(key_index(key)) - z(key_index(key))).pow(exp);
          break;
        case VarKind::Dzbar:
          term = term * (-dz(key_index(key)) - zbar(key_index(key))).pow(exp);
          break;
        default:
          break;
      }
    }
    WeylElement madj_el;
    madj_el.add_term(madj, RationalComplex(Rational(1)));
    out += term * madj_el;
  }
  return out;
}

WeylElement WeylElement::gaussian_conjugate() const {
  WeylElement out;
  for (const auto& [m, c] : terms_) {
    if (m.has_kind(VarKind::X) || m.has_kind(VarKind::Dx))
      throw PreconditionError("gaussian_conjugate: reduce x-derivatives first");
    Monomial mult;
    WeylElement dpart = constant(RationalComplex(Rational(1)));
    for (const auto& [key, exp] : m.entries()) {
      switch (key_kind(key)) {
        case VarKind::Dz:
          dpart = dpart * (dz(key_index(key)) - zbar(key_index(key))).pow(exp);
          break;
        case VarKind::Dzbar:
          dpart = dpart * (dzbar(key_index(key)) - z(key_index(key))).pow(exp);
          break;
        default:
          mult.set_exponent(key, exp);
          break;
      }
    }
    WeylElement mult_el;
    mult_el.add_term(mult, c);
    out += mult_el * dpart;
  }
  return out;
}

namespace {

RationalComplex power_of(const Rational& v, int e) {
  RationalComplex r{Rational(1)};
  for (int i = 0; i < e; ++i) r *= RationalComplex(v);
  return r;
}

}  // namespace

WeylElement WeylElement::substitute_xi(const std::vector<Rational>& values) const {
  WeylElement out;
  for (const auto& [m, c] : terms_) {
    Monomial r;
    RationalComplex coeff = c;
    for (const auto& [key, exp] : m.entries()) {
      if (key_kind(key) == VarKind::Xi) {
        int l = key_index(key);
        if (l < 1 || l > static_cast<int>(values.size()))
          throw DimensionError("substitute_xi: no value for xi(" + std::to_string(l) + ")");
        coeff *= power_of(values[static_cast<std::size_t>(l - 1)], exp);
      } else {
        r.set_exponent(key, exp);
      }
    }
    out.add_term(r, coeff);
  }
  return out;
}

WeylElement WeylElement::substitute_lambda(const std::vector<Rational>& values) const {
  WeylElement out;
  for (const auto& [m, c] : terms_) {
    Monomial r;
    RationalComplex coeff = c;
    for (const auto& [key, exp] : m.entries()) {
      if (key_kind(key) == VarKind::Lambda) {
        int j = key_index(key);
        if (j < 1 || j > static_cast<int>(values.size()))
          throw DimensionError("substitute_lambda: no value for lambda(" + std::to_string(j) + ")");
        coeff *= power_of(values[static_cast<std::size_t>(j - 1)], exp);
      } else {
        r.set_exponent(key, exp);
      }
    }
    out.add_term(r, coeff);
  }
  return out;
}

int WeylElement::max_degree_raise() const {
  int raise = 0;
  for (const auto& [m, c] : terms_) {
    int r = 0;
    for (const auto& [key, exp] : m.entries()) {
      VarKind k = key_kind(key);
      if (k == VarKind::Z || k == VarKind::Zbar) r += exp;
    }
    raise = std::max(raise, r);
  }
  return raise;
}

std::string WeylElement::to_string() const {
  if (terms_.empty()) return "0";
  // display order: scalars first, then multiplications, then derivatives
  static const char* names[] = {"z", "zbar", "xi", "lambda", "x", "dz", "dzbar", "dx"};
  static const int display_rank[] = {2, 3, 0, 1, 4, 5, 6, 7};

  std::string s;
  bool first_term = true;
  for (const auto& [m, c] : terms_) {
    if (!first_term) s += " + ";
    first_term = false;

    std::vector<std::pair<VarKey, int>> ent(m.entries().begin(), m.entries().end());
    std::stable_sort(ent.begin(), ent.end(), [](const auto& a, const auto& b) {
      int ra = display_rank[static_cast<int>(key_kind(a.first))];
      int rb = display_rank[static_cast<int>(key_kind(b.first))];
      if (ra != rb) return ra < rb;
      return key_index(a.first) < key_index(b.first);
    });

    const bool unit = (c == RationalComplex(Rational(1)));
    std::string factors;
    for (const auto& [key, exp] : ent) {
      if (!factors.empty()) factors += "*";
      factors += names[static_cast<int>(key_kind(key))];
      factors += "(" + std::to_string(key_index(key)) + ")";
      if (exp != 1) factors += "^" + std::to_string(exp);
    }
    if (factors.empty()) {
      s += c.to_string();
    } else if (unit) {
      s += factors;
    } else {
      s += c.to_string() + "*" + factors;
    }
  }
  return s;
}

// --- CR fields --------------------------------------------------------------------

WeylElement cr_field(const QuadricSpec& spec, int j, bool conjugate) {
  spec.validate();
  if (j < 1 || j > spec.n)
    throw Error("cr_field: index j=" + std::to_string(j) + " out of range 1.." +
                std::to_string(spec.n));
  const RationalComplex iu = RationalComplex::i();
  if (conjugate) {
    WeylElement e = WeylElement::dzbar(j);
    for (int l = 1; l <= spec.d; ++l)
      for (int k = 1; k <= spec.n; ++k) {
        RationalComplex h = spec.forms[static_cast<std::size_t>(l - 1)](k - 1, j - 1);
        if (h.is_zero()) continue;
        e -= (iu * h) * (WeylElement::z(k) * WeylElement::dx(l));
      }
    return e;
  }
  WeylElement e = WeylElement::dz(j);
  for (int l = 1; l <= spec.d; ++l)
    for (int k = 1; k <= spec.n; ++k) {
      RationalComplex h = spec.forms[static_cast<std::size_t>(l - 1)](j - 1, k - 1);
      if (h.is_zero()) continue;
      e += (iu * h) * (WeylElement::zbar(k) * WeylElement::dx(l));
    }
  return e;
}

bool check_integrability(const QuadricSpec& spec) {
  std::vector<WeylElement> fields;
  fields.reserve(static_cast<std::size_t>(spec.n));
  for (int j = 1; j <= spec.n; ++j) fields.push_back(cr_field(spec, j, true));
  for (int j = 0; j < spec.n; ++j)
    for (int k = j + 1; k < spec.n; ++k)
      if (!commutator(fields[static_cast<std::size_t>(j)], fields[static_cast<std::size_t>(k)])
               .is_zero())
        return false;
  return true;
}

WeylElement reduced_dbar(const std::vector<Rational>& lambda, int j) {
  if (j < 1 || j > static_cast<int>(lambda.size()))
    throw Error("reduced_dbar: index out of range");
  return WeylElement::dzbar(j) +
         RationalComplex(lambda[static_cast<std::size_t>(j - 1)]) * WeylElement::z(j);
}

WeylElement reduced_delta(const std::vector<Rational>& lambda, int j) {
  return reduced_dbar(lambda, j).formal_adjoint();
}

void IdentityReport::add(std::string identity, const WeylElement& expected,
                         const WeylElement& computed) {
  IdentityCheck c;
  c.identity = std::move(identity);
  c.expected = expected.to_string();
  c.computed = computed.to_string();
  c.pass = expected == computed;
  all_pass = all_pass && c.pass;
  checks.push_back(std::move(c));
}

IdentityReport verify_commutation_identities(const QuadricSpec& spec) {
  spec.validate();
  IdentityReport report;
  const WeylElement one = WeylElement::constant(RationalComplex(Rational(1)));
  const WeylElement two = WeylElement::constant(RationalComplex(Rational(2)));

  // Diagonalized form with opaque λ symbols: [dbar_k, delta_j] = (-1+2λ_j) δ_{jk}.
  std::vector<WeylElement> dbar(static_cast<std::size_t>(spec.n));
  std::vector<WeylElement> delta(static_cast<std::size_t>(spec.n));
  for (int j = 1; j <= spec.n; ++j) {
    WeylElement db = WeylElement::dzbar(j) + WeylElement::lambda(j) * WeylElement::z(j);
    dbar[static_cast<std::size_t>(j - 1)] = db;
    delta[static_cast<std::size_t>(j - 1)] = db.formal_adjoint();
  }
  for (int k = 1; k <= spec.n; ++k)
    for (int j = 1; j <= spec.n; ++j) {
      WeylElement expected;
      if (j == k) expected = two * WeylElement::lambda(j) - one;
      report.add("[dbar_" + std::to_string(k) + ", delta_" + std::to_string(j) + "] (diagonal)",
                 expected,
                 commutator(dbar[static_cast<std::size_t>(k - 1)],
                            delta[static_cast<std::size_t>(j - 1)]));
    }

  // d = 1, diagonal form: [dbar_j, delta_j] = -1 + 2 ε_j ξ with ε_j the diagonal.
  bool diagonal_d1 = spec.d == 1;
  if (diagonal_d1) {
    for (int a = 0; a < spec.n && diagonal_d1; ++a)
      for (int b = 0; b < spec.n && diagonal_d1; ++b)
        if (a != b && !spec.forms[0](a, b).is_zero()) diagonal_d1 = false;
  }
  if (diagonal_d1) {
    for (int j = 1; j <= spec.n; ++j) {
      RationalComplex eps = spec.forms[0](j - 1, j - 1);
      WeylElement db =
          WeylElement::dzbar(j) + eps * (WeylElement::xi(1) * WeylElement::z(j));
      WeylElement expected = (RationalComplex(Rational(2)) * eps) * WeylElement::xi(1) - one;
      report.add("[dbar_" + std::to_string(j) + ", delta_" + std::to_string(j) + "] (epsilon)",
                 expected, commutator(db, db.formal_adjoint()));
    }
  }

  // Original coordinates, symbolic ξ: [dbar_k, delta_j] = 2 h^ξ_{jk} - δ_{jk}.
  for (int j = 1; j <= spec.n; ++j) {
    dbar[static_cast<std::size_t>(j - 1)] = cr_field(spec, j, true).fourier_reduce();
    delta[static_cast<std::size_t>(j - 1)] =
        dbar[static_cast<std::size_t>(j - 1)].formal_adjoint();
  }
  for (int k = 1; k <= spec.n; ++k)
    for (int j = 1; j <= spec.n; ++j) {
      WeylElement expected;
      for (int l = 1; l <= spec.d; ++l) {
        RationalComplex h = spec.forms[static_cast<std::size_t>(l - 1)](j - 1, k - 1);
        if (!h.is_zero())
          expected += (RationalComplex(Rational(2)) * h) * WeylElement::xi(l);
      }
      if (j == k) expected -= one;
      report.add(
          "[dbar_" + std::to_string(k) + ", delta_" + std::to_string(j) + "] (original)",
          expected,
          commutator(dbar[static_cast<std::size_t>(k - 1)], delta[static_cast<std::size_t>(j - 1)]));
    }

  return report;
}

// --- FormOperator --------------------------------------------------------------------

int FormOperator::component_count(int degree) const {
  switch (degree) {
    case 0:
      return 1;
    case 1:
      return n;
    case 2:
      return n * (n - 1) / 2;
    default:
      throw Error("FormOperator: unsupported form degree " + std::to_string(degree));
  }
}

int FormOperator::pair_id(int k, int j, int n) {
  // k < j, both 0-based; lex order (0,1),(0,2),...,(n-2,n-1)
  return k * n - k * (k + 1) / 2 + (j - k - 1);
}

FormOperator dbar_on_scalars(const std::vector<Rational>& lambda) {
  FormOperator op;
  op.n = static_cast<int>(lambda.size());
  op.degree_in = 0;
  op.degree_out = 1;
  for (int j = 1; j <= op.n; ++j) op.components[{j - 1, 0}] = reduced_dbar(lambda, j);
  return op;
}

FormOperator dbar_on_oneforms(const std::vector<Rational>& lambda) {
  FormOperator op;
  op.n = static_cast<int>(lambda.size());
  op.degree_in = 1;
  op.degree_out = 2;
  for (int k = 0; k < op.n; ++k)
    for (int j = k + 1; j < op.n; ++j) {
      int t = FormOperator::pair_id(k, j, op.n);
      op.components[{t, j}] = reduced_dbar(lambda, k + 1);
      op.components[{t, k}] = -reduced_dbar(lambda, j + 1);
    }
  return op;
}

FormOperator delta_on_oneforms(const std::vector<Rational>& lambda) {
  FormOperator op;
  op.n = static_cast<int>(lambda.size());
  op.degree_in = 1;
  op.degree_out = 0;
  for (int j = 1; j <= op.n; ++j) op.components[{0, j - 1}] = reduced_delta(lambda, j);
  return op;
}

}  // namespace qcr
