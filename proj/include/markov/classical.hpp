#pragma once

// Chebyshev and Jacobi evaluators and the extremal sequences P_k, Q_k, W_n
// used to show that the derivative exponents on Koornwinder's domain and on
// Delta_l cannot be improved.

#include <vector>

#include "markov/errors.hpp"
#include "markov/poly2d.hpp"
#include "markov/precision.hpp"

namespace markov {

template <class Real>
struct ValueAndDerivative {
  Real value;
  Real derivative;
};

/// (T_k(t), T_k'(t)) from the joint three-term recurrence.
template <class Real>
ValueAndDerivative<Real> chebyshev_T(int k, Real t) {
  if (k < 0) throw DomainError("chebyshev_T: negative degree");
  Real t0(1), d0(0);
  if (k == 0) return {t0, d0};
  Real t1 = t, d1(1);
  for (int j = 1; j < k; ++j) {
    const Real t2 = Real(2) * t * t1 - t0;
    const Real d2 = Real(2) * t1 + Real(2) * t * d1 - d0;
    t0 = t1;
    t1 = t2;
    d0 = d1;
    d1 = d2;
  }
  return {t1, d1};
}

/// Jacobi polynomial P_n^{(alpha,beta)}(t), normalized so that
/// P_n^{(alpha,beta)}(1) = binom(n + alpha, n).
template <class Real>
Real jacobi_P(int n, Real alpha, Real beta, Real t) {
  if (!(alpha > Real(-1)) || !(beta > Real(-1)))
    throw DomainError("jacobi_P: alpha and beta must exceed -1");
  if (n < 0) throw DomainError("jacobi_P: negative degree");
  Real p0(1);
  if (n == 0) return p0;
  Real p1 = (alpha + Real(1)) + (alpha + beta + Real(2)) * (t - Real(1)) / Real(2);
  for (int m = 2; m <= n; ++m) {
    const Real mm(m);
    const Real s = Real(2) * mm + alpha + beta;
    const Real a1 = Real(2) * mm * (mm + alpha + beta) * (s - Real(2));
    const Real a2 = (s - Real(1)) * (alpha * alpha - beta * beta);
    const Real a3 = (s - Real(2)) * (s - Real(1)) * s;
    const Real a4 = Real(2) * (mm + alpha - Real(1)) * (mm + beta - Real(1)) * s;
    const Real p2 = ((a2 + a3 * t) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

enum class FamilyKind { Pk, Qk, Wn };

/// One member of an extremal sequence. Pk/Qk use `index` = k >= 1; Wn uses
/// `index` = n >= 0 together with alpha and the odd exponent l of Delta_l.
struct ExtremalFamily {
  FamilyKind kind = FamilyKind::Pk;
  int index = 1;
  double alpha = 0.0;
  int l = 1;

  static ExtremalFamily pk(int k);
  static ExtremalFamily qk(int k);
  static ExtremalFamily wn(int n, double alpha, int l);

  /// Throws DomainError when the invariants of the kind are violated.
  void validate() const;

  /// Total degree: 5k-4 for P_k, 5k-3 for Q_k, n+1 for W_n.
  int degree() const;

  /// Closed-form value, no expansion.
  double value(double x, double y) const;

  /// Closed-form |dP_k/dy(-2,1)| or |dQ_k/dx(2,1)|. Not defined for Wn.
  double cusp_derivative() const;
};

/// Highest k whose P_k/Q_k coefficient expansion is offered.
inline constexpr int kMaxExpandedIndex = 24;

/// Expanded P_k = [T_k'((2-x)/4)/k]^5 (1+x+y)/4.
template <class Real>
BasicBivariatePoly<Real> build_Pk(int k);

/// Expanded Q_k = [T_k'((1+y)/2)/k]^5 (x^2/4 - y).
template <class Real>
BasicBivariatePoly<Real> build_Qk(int k);

/// Expanded W_n = y P_n^{(alpha,alpha)}(x).
template <class Real>
BasicBivariatePoly<Real> build_Wn(int n, double alpha);

extern template BasicBivariatePoly<double> build_Pk<double>(int);
extern template BasicBivariatePoly<Wide> build_Pk<Wide>(int);
extern template BasicBivariatePoly<double> build_Qk<double>(int);
extern template BasicBivariatePoly<Wide> build_Qk<Wide>(int);
extern template BasicBivariatePoly<double> build_Wn<double>(int, double);
extern template BasicBivariatePoly<Wide> build_Wn<Wide>(int, double);

/// Convenience for the common double-precision carrier.
inline BivariatePoly build_Pk(int k) { return build_Pk<double>(k); }
inline BivariatePoly build_Qk(int k) { return build_Qk<double>(k); }
inline BivariatePoly build_Wn(int n, double alpha) { return build_Wn<double>(n, alpha); }

}  // namespace markov
