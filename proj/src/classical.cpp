#include "markov/classical.hpp"

#include <cmath>
#include <string>

namespace markov {
namespace {

// Univariate monomial-coefficient helpers; index = power.
template <class Real>
using Coeffs = std::vector<Real>;

template <class Real>
Coeffs<Real> mul(const Coeffs<Real>& a, const Coeffs<Real>& b) {
  Coeffs<Real> out(a.size() + b.size() - 1, Real(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <class Real>
Coeffs<Real> chebyshev_derivative_coeffs(int k) {
  Coeffs<Real> t0{Real(1)}, t1{Real(0), Real(1)};
  if (k == 0) return {Real(0)};
  for (int j = 1; j < k; ++j) {
    Coeffs<Real> t2(t1.size() + 1, Real(0));
    for (std::size_t i = 0; i < t1.size(); ++i) t2[i + 1] += Real(2) * t1[i];
    for (std::size_t i = 0; i < t0.size(); ++i) t2[i] -= t0[i];
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Coeffs<Real> d(t1.size() - 1, Real(0));
  for (std::size_t i = 1; i < t1.size(); ++i) d[i - 1] = Real(static_cast<double>(i)) * t1[i];
  return d;
}

// p(offset + scale * s) as a polynomial in s.
template <class Real>
Coeffs<Real> compose_affine(const Coeffs<Real>& p, Real offset, Real scale) {
  Coeffs<Real> acc{Real(0)};
  const Coeffs<Real> lin{offset, scale};
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = mul(acc, lin);
    acc[0] += p[i];
  }
  return acc;
}

// [T_k'(offset + scale s) / k]^5
template <class Real>
Coeffs<Real> fifth_power_profile(int k, Real offset, Real scale) {
  auto d = compose_affine(chebyshev_derivative_coeffs<Real>(k), offset, scale);
  for (auto& c : d) c /= Real(k);
  auto sq = mul(d, d);
  return mul(mul(sq, sq), d);
}

void check_expansion_index(int k, const char* what) {
  if (k < 1) throw DomainError(std::string(what) + ": index must be >= 1");
  if (k > kMaxExpandedIndex)
    throw CapacityError(std::string(what) + ": expansion offered only for k <= " +
                        std::to_string(kMaxExpandedIndex) + "; use the closed form");
}

}  // namespace

template <class Real>
BasicBivariatePoly<Real> build_Pk(int k) {
  check_expansion_index(k, "build_Pk");
  const auto g = fifth_power_profile<Real>(k, Real(0.5), Real(-0.25));
  BasicBivariatePoly<Real> profile(g.size() - 1, 0);
  for (std::size_t i = 0; i < g.size(); ++i) profile.at(i, 0) = g[i];
  const BasicBivariatePoly<Real> plane({{Real(0.25), Real(0.25)}, {Real(0.25)}});
  return multiply(profile, plane);
}

template <class Real>
BasicBivariatePoly<Real> build_Qk(int k) {
  check_expansion_index(k, "build_Qk");
  const auto g = fifth_power_profile<Real>(k, Real(0.5), Real(0.5));
  BasicBivariatePoly<Real> profile(0, g.size() - 1);
  for (std::size_t j = 0; j < g.size(); ++j) profile.at(0, j) = g[j];
  const BasicBivariatePoly<Real> cusp({{Real(0), Real(-1)}, {}, {Real(0.25)}});
  return multiply(profile, cusp);
}

template <class Real>
BasicBivariatePoly<Real> build_Wn(int n, double alpha_in) {
  if (n < 0) throw DomainError("build_Wn: negative degree");
  if (!(alpha_in > -1.0)) throw DomainError("build_Wn: alpha must exceed -1");
  const Real a(alpha_in);
  Coeffs<Real> p0{Real(1)};
  Coeffs<Real> p1{Real(0), a + Real(1)};
  Coeffs<Real> pn = p0;
  if (n >= 1) pn = p1;
  for (int m = 2; m <= n; ++m) {
    // symmetric (alpha = beta) case of the three-term recurrence
    const Real mm(m);
    const Real s = Real(2) * mm + Real(2) * a;
    const Real a1 = Real(2) * mm * (mm + Real(2) * a) * (s - Real(2));
    const Real a3 = (s - Real(2)) * (s - Real(1)) * s;
    const Real a4 = Real(2) * (mm + a - Real(1)) * (mm + a - Real(1)) * s;
    Coeffs<Real> p2(p1.size() + 1, Real(0));
    for (std::size_t i = 0; i < p1.size(); ++i) p2[i + 1] += a3 * p1[i] / a1;
    for (std::size_t i = 0; i < p0.size(); ++i) p2[i] -= a4 * p0[i] / a1;
    p0 = std::move(p1);
    p1 = std::move(p2);
    pn = p1;
  }
  BasicBivariatePoly<Real> w(pn.size() - 1, 1);
  for (std::size_t i = 0; i < pn.size(); ++i) w.at(i, 1) = pn[i];
  return w;
}

template BasicBivariatePoly<double> build_Pk<double>(int);
template BasicBivariatePoly<Wide> build_Pk<Wide>(int);
template BasicBivariatePoly<double> build_Qk<double>(int);
template BasicBivariatePoly<Wide> build_Qk<Wide>(int);
template BasicBivariatePoly<double> build_Wn<double>(int, double);
template BasicBivariatePoly<Wide> build_Wn<Wide>(int, double);

ExtremalFamily ExtremalFamily::pk(int k) {
  ExtremalFamily f{FamilyKind::Pk, k, 0.0, 1};
  f.validate();
  return f;
}

ExtremalFamily ExtremalFamily::qk(int k) {
  ExtremalFamily f{FamilyKind::Qk, k, 0.0, 1};
  f.validate();
  return f;
}

ExtremalFamily ExtremalFamily::wn(int n, double alpha, int l) {
  ExtremalFamily f{FamilyKind::Wn, n, alpha, l};
  f.validate();
  return f;
}

void ExtremalFamily::validate() const {
  switch (kind) {
    case FamilyKind::Pk:
    case FamilyKind::Qk:
      if (index < 1) throw DomainError("extremal family: k must be >= 1");
      break;
    case FamilyKind::Wn:
      if (index < 0) throw DomainError("extremal family: n must be >= 0");
      if (!(alpha > 0.0)) throw DomainError("extremal family: W_n requires alpha > 0");
      if (l < 1 || l % 2 == 0) throw DomainError("extremal family: l must be a positive odd integer");
      break;
  }
}

int ExtremalFamily::degree() const {
  switch (kind) {
    case FamilyKind::Pk: return 5 * index - 4;
    case FamilyKind::Qk: return 5 * index - 3;
    case FamilyKind::Wn: return index + 1;
  }
  return 0;
}

double ExtremalFamily::value(double x, double y) const {
  switch (kind) {
    case FamilyKind::Pk: {
      const double d = chebyshev_T(index, (2.0 - x) / 4.0).derivative / index;
      const double d2 = d * d;
      return d2 * d2 * d * (1.0 + x + y) / 4.0;
    }
    case FamilyKind::Qk: {
      const double d = chebyshev_T(index, (1.0 + y) / 2.0).derivative / index;
      const double d2 = d * d;
      return d2 * d2 * d * (x * x / 4.0 - y);
    }
    case FamilyKind::Wn:
      return y * jacobi_P(index, alpha, alpha, x);
  }
  return 0.0;
}

double ExtremalFamily::cusp_derivative() const {
  // Chain rule at the cusp: the profile argument is 1 at (-2,1) for P_k and
  // at (2,1) for Q_k, and the remaining factor contributes 1/4 resp. x/2 = 1.
  const double d = chebyshev_T(index, 1.0).derivative / index;
  const double d5 = d * d * d * d * d;
  switch (kind) {
    case FamilyKind::Pk: return std::abs(d5) / 4.0;
    case FamilyKind::Qk: return std::abs(d5);
    case FamilyKind::Wn: break;
  }
  throw DomainError("cusp_derivative: not defined for W_n");
}

}  // namespace markov
