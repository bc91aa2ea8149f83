#pragma once

#include <vector>

#include "lgtt/errors.hpp"
#include "lgtt/types.hpp"

namespace lgtt {

/*
 * Superpotential of the exponential family
 *
 *   w(x) = t * ( sum_k c_k e^{k x} + lambda * x ),
 *
 * with integer frequencies k >= 1 and a single linear term.  Every member is
 * 2 pi i periodic up to the linear piece, so its critical points organize
 * into vertical chains x_r + 2 pi i j.
 */
struct ExpTerm {
  int k = 0;  // frequency, k >= 1
  cplx c;     // coefficient
};

struct ExpPolynomial {
  std::vector<ExpTerm> exp_terms;  // nonempty, frequencies distinct ascending
  cplx linear_coeff;               // lambda
  cplx t;                          // overall coupling, t != 0

  /* w = t (e^x - x): one chain based at 0. */
  static ExpPolynomial model_a(cplx t);
  /* w = t (e^{2x}/2 - 2 c e^x + x): two chains based at -+ gamma, c = cosh gamma. */
  static ExpPolynomial model_b(cplx t, double c);

  /* Throws std::invalid_argument when a structural invariant fails. */
  void validate() const;

  cplx shape(cplx x) const;    // w / t
  cplx dshape(cplx x) const;   // (w / t)'
  cplx w(cplx x) const { return t * shape(x); }
  cplx dw(cplx x) const { return t * dshape(x); }
  cplx d2w(cplx x) const;
  /* dw/dt at fixed x; equals shape(x) since t enters as an overall factor. */
  cplx dwdt(cplx x) const { return shape(x); }
};

/* One chain of critical points x_r + 2 pi i j, j in Z. */
struct Chain {
  cplx base;       // principal-branch representative, Im in (-pi, pi]
  cplx u;          // e^{base}, root of the derivative polynomial
  cplx hessian;    // w''(base); equal at every chain point
  cplx dwdt_base;  // dw/dt at the base point
};

struct CriticalChainSet {
  std::vector<Chain> chains;  // ordered by arg(u), then |u|
  cplx t;
  cplx linear_coeff;
  int truncation = 0;    // N: points x_r + 2 pi i j with |j| <= N are kept
  double period = two_pi;

  int R() const { return static_cast<int>(chains.size()); }
  int block_dim() const { return 2 * truncation + 1; }
  int dim() const { return R() * block_dim(); }
  /* Flat index of chain point (r, j), chain-major: r * (2N+1) + (j + N). */
  int index(int r, int j) const { return r * block_dim() + j + truncation; }
  /* Chain point x_r + 2 pi i j. */
  cplx point(int r, int j) const { return chains[static_cast<size_t>(r)].base + cplx(0.0, two_pi * j); }
};

/*
 * Locates all critical chains of w by substituting u = e^x into w' = 0,
 * stripping the lowest power of u, and diagonalizing the companion matrix of
 * the remaining polynomial.  Roots are Newton-polished.  Throws
 * DegenerateCritical on a multiple root and NoCriticalPoints when the
 * reduced polynomial is constant.
 */
CriticalChainSet find_critical_chains(const ExpPolynomial& wp, int N);

/*
 * Element of the truncated chiral ring: its values at the kept critical
 * points.  Multiplication is componentwise evaluation.
 */
class RingElement {
 public:
  RingElement(int R, int N);

  static RingElement zero(const CriticalChainSet& cs);
  static RingElement identity(const CriticalChainSet& cs);
  /* 1 at chain point (r, j), 0 elsewhere. */
  static RingElement indicator(const CriticalChainSet& cs, int r, int j);
  /* Evaluate a callable cplx(cplx x) at every kept chain point. */
  template <class F>
  static RingElement sample(const CriticalChainSet& cs, F&& f) {
    RingElement e(cs.R(), cs.truncation);
    for (int r = 0; r < cs.R(); ++r)
      for (int j = -cs.truncation; j <= cs.truncation; ++j)
        e.value(r, j) = f(cs.point(r, j));
    return e;
  }

  int R() const { return R_; }
  int truncation() const { return N_; }
  int dim() const { return static_cast<int>(values_.size()); }

  cplx& value(int r, int j);
  const cplx& value(int r, int j) const;
  const Vector& values() const { return values_; }

  RingElement operator*(const RingElement& rhs) const;  // TruncationMismatch on shape clash
  RingElement operator+(const RingElement& rhs) const;
  RingElement operator-(const RingElement& rhs) const;
  RingElement scaled(cplx a) const;

  /* Dense matrix of multiplication by this element (diagonal). */
  Matrix multiplication_operator() const;

 private:
  int R_;
  int N_;
  Vector values_;
};

/* Grothendieck-style residue: sum over kept points of phi / w''. */
cplx residue(const CriticalChainSet& cs, const RingElement& phi);

/* Residue pairing eta(phi, psi) = residue(phi * psi). */
cplx eta_pairing(const CriticalChainSet& cs, const RingElement& phi, const RingElement& psi);

/* Diagonal of eta in the point basis: 1 / w''(x_r), independent of j. */
Vector eta_diagonal(const CriticalChainSet& cs);
Matrix eta_matrix(const CriticalChainSet& cs);

/*
 * Matrix of multiplication by dw/dt in the point basis.  Diagonal, with
 * entry dwdt_base(r) + lambda * 2 pi i j at chain point (r, j): the
 * exponential part of dw/dt is 2 pi i periodic and only the linear term
 * advances along a chain.
 */
struct CouplingMatrix {
  Vector diag;
  int R = 0;
  int N = 0;
  Matrix dense() const;
  Matrix dense_adjoint() const;
};

CouplingMatrix coupling_matrix(const CriticalChainSet& cs);

}  // namespace lgtt
