#include "lgtt/ring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lgtt {

namespace {

constexpr double kRootClusterTol = 1e-8;
constexpr double kDerivCancelTol = 1e-8;
constexpr double kResidualTol = 1e-9;

std::string format_cplx(cplx z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

/* Coefficients of Q(u) = sum_k k c_k u^k + lambda, so that w'(x) = t Q(e^x). */
std::vector<cplx> derivative_poly(const ExpPolynomial& wp) {
  int deg = 0;
  for (const auto& term : wp.exp_terms) deg = std::max(deg, term.k);
  std::vector<cplx> a(static_cast<size_t>(deg) + 1, cplx(0.0, 0.0));
  a[0] = wp.linear_coeff;
  for (const auto& term : wp.exp_terms) a[static_cast<size_t>(term.k)] += cplx(term.k, 0.0) * term.c;
  return a;
}

cplx poly_eval(const std::vector<cplx>& a, cplx u) {
  cplx v(0.0, 0.0);
  for (size_t m = a.size(); m-- > 0;) v = v * u + a[m];
  return v;
}

cplx poly_deriv_eval(const std::vector<cplx>& a, cplx u) {
  cplx v(0.0, 0.0);
  for (size_t m = a.size(); m-- > 1;) v = v * u + cplx(static_cast<double>(m), 0.0) * a[m];
  return v;
}

/* Magnitude of the largest term of Q'(u); cancellation below it by many
 * orders marks a numerically multiple root. */
double deriv_term_scale(const std::vector<cplx>& a, cplx u) {
  double s = 0.0;
  double p = 1.0;  // |u|^{m-1}
  for (size_t m = 1; m < a.size(); ++m) {
    s = std::max(s, static_cast<double>(m) * std::abs(a[m]) * p);
    p *= std::abs(u);
  }
  return s;
}

double poly_term_scale(const std::vector<cplx>& a, cplx u) {
  double s = 0.0;
  double p = 1.0;
  for (size_t m = 0; m < a.size(); ++m) {
    s = std::max(s, std::abs(a[m]) * p);
    p *= std::abs(u);
  }
  return s;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& a) {
  const int d = static_cast<int>(a.size()) - 1;
  Matrix comp = Matrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) comp(i + 1, i) = cplx(1.0, 0.0);
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -a[static_cast<size_t>(i)] / a[static_cast<size_t>(d)];
  Eigen::ComplexEigenSolver<Matrix> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Error("companion eigensolve failed");
  std::vector<cplx> roots(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) roots[static_cast<size_t>(i)] = es.eigenvalues()(i);
  return roots;
}

}  // namespace

ExpPolynomial ExpPolynomial::model_a(cplx t) {
  ExpPolynomial wp;
  wp.exp_terms = {{1, cplx(1.0, 0.0)}};
  wp.linear_coeff = cplx(-1.0, 0.0);
  wp.t = t;
  wp.validate();
  return wp;
}

ExpPolynomial ExpPolynomial::model_b(cplx t, double c) {
  ExpPolynomial wp;
  wp.exp_terms = {{1, cplx(-2.0 * c, 0.0)}, {2, cplx(0.5, 0.0)}};
  wp.linear_coeff = cplx(1.0, 0.0);
  wp.t = t;
  wp.validate();
  return wp;
}

void ExpPolynomial::validate() const {
  if (std::abs(t) == 0.0) throw std::invalid_argument("coupling t must be nonzero");
  if (exp_terms.empty()) throw std::invalid_argument("at least one exponential term required");
  int prev = 0;
  for (const auto& term : exp_terms) {
    if (term.k < 1) throw std::invalid_argument("exponential frequencies must be >= 1");
    if (term.k <= prev) throw std::invalid_argument("exponential frequencies must be distinct ascending");
    if (std::abs(term.c) == 0.0) throw std::invalid_argument("exponential coefficients must be nonzero");
    prev = term.k;
  }
}

cplx ExpPolynomial::shape(cplx x) const {
  cplx v = linear_coeff * x;
  for (const auto& term : exp_terms) v += term.c * std::exp(cplx(term.k, 0.0) * x);
  return v;
}

cplx ExpPolynomial::dshape(cplx x) const {
  cplx v = linear_coeff;
  for (const auto& term : exp_terms) v += cplx(term.k, 0.0) * term.c * std::exp(cplx(term.k, 0.0) * x);
  return v;
}

cplx ExpPolynomial::d2w(cplx x) const {
  cplx v(0.0, 0.0);
  for (const auto& term : exp_terms)
    v += cplx(term.k, 0.0) * cplx(term.k, 0.0) * term.c * std::exp(cplx(term.k, 0.0) * x);
  return t * v;
}

CriticalChainSet find_critical_chains(const ExpPolynomial& wp, int N) {
  wp.validate();
  if (N < 0) throw std::invalid_argument("truncation must be >= 0");

  std::vector<cplx> a = derivative_poly(wp);

  /* u = 0 is outside the range of e^x; factors of u carry no chains. */
  size_t low = 0;
  while (low < a.size() && std::abs(a[low]) == 0.0) ++low;
  if (low == a.size()) throw std::invalid_argument("derivative polynomial is identically zero");
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
  if (a.size() == 1) throw NoCriticalPoints("w' has no zeros: derivative reduces to a nonzero constant");

  std::vector<cplx> roots = companion_roots(a);

  for (auto& u : roots) {
    for (int it = 0; it < 5; ++it) {
      cplx dq = poly_deriv_eval(a, u);
      if (std::abs(dq) < kDerivCancelTol * deriv_term_scale(a, u)) break;  // flagged below
      u -= poly_eval(a, u) / dq;
    }
  }

  for (const auto& u : roots) {
    if (std::abs(poly_deriv_eval(a, u)) < kDerivCancelTol * deriv_term_scale(a, u))
      throw DegenerateCritical("multiple critical point at u = " + format_cplx(u));
  }
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < kRootClusterTol * std::max(1.0, std::abs(roots[i])))
        throw DegenerateCritical("critical points collide at u = " + format_cplx(roots[i]));

  CriticalChainSet cs;
  cs.t = wp.t;
  cs.linear_coeff = wp.linear_coeff;
  cs.truncation = N;
  cs.chains.reserve(roots.size());
  for (const auto& u : roots) {
    Chain ch;
    ch.u = u;
    double arg = std::arg(u);
    if (arg <= -pi_const) arg = pi_const;  // principal branch, Im in (-pi, pi]
    ch.base = cplx(std::log(std::abs(u)), arg);
    ch.hessian = wp.d2w(ch.base);
    ch.dwdt_base = wp.dwdt(ch.base);

    if (std::abs(poly_eval(a, u)) > kResidualTol * std::max(1.0, poly_term_scale(a, u)))
      throw Error("critical point refinement did not converge at u = " + format_cplx(u));
    cplx shifted = wp.dshape(ch.base + cplx(0.0, cs.period));
    cplx here = wp.dshape(ch.base);
    if (std::abs(shifted - here) > kResidualTol * (1.0 + std::abs(here)))
      throw Error("chain periodicity check failed at u = " + format_cplx(u));

    cs.chains.push_back(ch);
  }

  std::stable_sort(cs.chains.begin(), cs.chains.end(), [](const Chain& x, const Chain& y) {
    double ax = std::arg(x.u), ay = std::arg(y.u);
    if (ax < ay - 1e-9) return true;
    if (ay < ax - 1e-9) return false;
    return std::abs(x.u) < std::abs(y.u);
  });
  return cs;
}

RingElement::RingElement(int R, int N) : R_(R), N_(N), values_(Vector::Zero(R * (2 * N + 1))) {
  if (R < 1 || N < 0) throw std::invalid_argument("ring element needs R >= 1, N >= 0");
}

RingElement RingElement::zero(const CriticalChainSet& cs) { return RingElement(cs.R(), cs.truncation); }

RingElement RingElement::identity(const CriticalChainSet& cs) {
  RingElement e(cs.R(), cs.truncation);
  e.values_.setOnes();
  return e;
}

RingElement RingElement::indicator(const CriticalChainSet& cs, int r, int j) {
  RingElement e(cs.R(), cs.truncation);
  e.value(r, j) = cplx(1.0, 0.0);
  return e;
}

cplx& RingElement::value(int r, int j) {
  if (r < 0 || r >= R_ || j < -N_ || j > N_) throw std::out_of_range("ring element index out of range");
  return values_(r * (2 * N_ + 1) + j + N_);
}

const cplx& RingElement::value(int r, int j) const {
  if (r < 0 || r >= R_ || j < -N_ || j > N_) throw std::out_of_range("ring element index out of range");
  return values_(r * (2 * N_ + 1) + j + N_);
}

RingElement RingElement::operator*(const RingElement& rhs) const {
  if (R_ != rhs.R_ || N_ != rhs.N_) throw TruncationMismatch("ring element shapes differ in product");
  RingElement e(R_, N_);
  e.values_ = values_.cwiseProduct(rhs.values_);
  return e;
}

RingElement RingElement::operator+(const RingElement& rhs) const {
  if (R_ != rhs.R_ || N_ != rhs.N_) throw TruncationMismatch("ring element shapes differ in sum");
  RingElement e(R_, N_);
  e.values_ = values_ + rhs.values_;
  return e;
}

RingElement RingElement::operator-(const RingElement& rhs) const {
  if (R_ != rhs.R_ || N_ != rhs.N_) throw TruncationMismatch("ring element shapes differ in difference");
  RingElement e(R_, N_);
  e.values_ = values_ - rhs.values_;
  return e;
}

RingElement RingElement::scaled(cplx a) const {
  RingElement e(R_, N_);
  e.values_ = values_ * a;
  return e;
}

Matrix RingElement::multiplication_operator() const { return values_.asDiagonal(); }

cplx residue(const CriticalChainSet& cs, const RingElement& phi) {
  if (phi.R() != cs.R() || phi.truncation() != cs.truncation)
    throw TruncationMismatch("ring element does not match chain set");
  cplx s(0.0, 0.0);
  for (int r = 0; r < cs.R(); ++r) {
    const cplx h = cs.chains[static_cast<size_t>(r)].hessian;
    if (std::abs(h) == 0.0) throw DegenerateCritical("vanishing hessian in residue");
    for (int j = -cs.truncation; j <= cs.truncation; ++j) s += phi.value(r, j) / h;
  }
  return s;
}

cplx eta_pairing(const CriticalChainSet& cs, const RingElement& phi, const RingElement& psi) {
  return residue(cs, phi * psi);
}

Vector eta_diagonal(const CriticalChainSet& cs) {
  Vector d(cs.dim());
  for (int r = 0; r < cs.R(); ++r) {
    const cplx h = cs.chains[static_cast<size_t>(r)].hessian;
    if (std::abs(h) == 0.0) throw DegenerateCritical("vanishing hessian in eta");
    for (int j = -cs.truncation; j <= cs.truncation; ++j) d(cs.index(r, j)) = cplx(1.0, 0.0) / h;
  }
  return d;
}

Matrix eta_matrix(const CriticalChainSet& cs) { return eta_diagonal(cs).asDiagonal(); }

Matrix CouplingMatrix::dense() const { return diag.asDiagonal(); }

Matrix CouplingMatrix::dense_adjoint() const { return diag.conjugate().asDiagonal(); }

CouplingMatrix coupling_matrix(const CriticalChainSet& cs) {
  CouplingMatrix cm;
  cm.R = cs.R();
  cm.N = cs.truncation;
  cm.diag.resize(cs.dim());
  for (int r = 0; r < cs.R(); ++r)
    for (int j = -cs.truncation; j <= cs.truncation; ++j)
      cm.diag(cs.index(r, j)) =
          cs.chains[static_cast<size_t>(r)].dwdt_base + cs.linear_coeff * cplx(0.0, two_pi * j);
  return cm;
}

}  // namespace lgtt
