#pragma once

// Dense bivariate polynomials over the monomials x^i y^j.
//
// The same carrier is used for polynomials in (x, y) and, after the
// symmetric pullback, for polynomials in (u, v); in the latter case the
// first slot is u and the second is v.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace markov {

enum class Axis { x, y };

template <class Real>
class BasicBivariatePoly {
 public:
  /// The zero polynomial.
  BasicBivariatePoly() : BasicBivariatePoly(0, 0) {}

  /// Zero polynomial with room for x^i y^j, i <= max_x, j <= max_y.
  BasicBivariatePoly(std::size_t max_x, std::size_t max_y)
      : nx_(max_x + 1), ny_(max_y + 1), c_(nx_ * ny_, Real(0)) {}

  /// coeffs[i][j] multiplies x^i y^j. Ragged rows are zero-padded.
  explicit BasicBivariatePoly(const std::vector<std::vector<Real>>& coeffs) {
    nx_ = std::max<std::size_t>(coeffs.size(), 1);
    ny_ = 1;
    for (const auto& row : coeffs) ny_ = std::max(ny_, row.size());
    c_.assign(nx_ * ny_, Real(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (std::size_t j = 0; j < coeffs[i].size(); ++j) at(i, j) = coeffs[i][j];
  }

  static BasicBivariatePoly constant(Real c) {
    BasicBivariatePoly p(0, 0);
    p.at(0, 0) = c;
    return p;
  }
  static BasicBivariatePoly monomial(std::size_t i, std::size_t j, Real c = Real(1)) {
    BasicBivariatePoly p(i, j);
    p.at(i, j) = c;
    return p;
  }
  static BasicBivariatePoly x() { return monomial(1, 0); }
  static BasicBivariatePoly y() { return monomial(0, 1); }

  std::size_t max_degree_x() const { return nx_ - 1; }
  std::size_t max_degree_y() const { return ny_ - 1; }

  /// Coefficient of x^i y^j; zero outside the stored extent.
  Real coeff(std::size_t i, std::size_t j) const {
    return (i < nx_ && j < ny_) ? c_[i * ny_ + j] : Real(0);
  }
  Real& at(std::size_t i, std::size_t j) { return c_[i * ny_ + j]; }
  const Real& at(std::size_t i, std::size_t j) const { return c_[i * ny_ + j]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Real& v) { return v == Real(0); });
  }

  /// max{i + j : coeffs[i][j] != 0}; std::nullopt marks the zero polynomial.
  std::optional<int> total_degree() const {
    std::optional<int> d;
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j)
        if (at(i, j) != Real(0)) d = std::max(d.value_or(0), static_cast<int>(i + j));
    return d;
  }

  /// Total degree with the zero polynomial mapped to 0.
  int degree_or_zero() const { return total_degree().value_or(0); }

  Real max_abs_coeff() const {
    Real m(0);
    for (const auto& v : c_) {
      using std::abs;
      m = std::max<Real>(m, abs(v));
    }
    return m;
  }

  /// Horner in y for each x-power, then Horner in x.
  template <class Arg>
  Arg eval(Arg xv, Arg yv) const {
    Arg acc(0);
    for (std::size_t i = nx_; i-- > 0;) {
      Arg inner(0);
      for (std::size_t j = ny_; j-- > 0;) inner = inner * yv + Arg(at(i, j));
      acc = acc * xv + inner;
    }
    return acc;
  }

  template <class Other>
  BasicBivariatePoly<Other> cast() const {
    BasicBivariatePoly<Other> out(nx_ - 1, ny_ - 1);
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j) out.at(i, j) = static_cast<Other>(at(i, j));
    return out;
  }

  BasicBivariatePoly& operator+=(const BasicBivariatePoly& o) {
    grow(o.nx_, o.ny_);
    for (std::size_t i = 0; i < o.nx_; ++i)
      for (std::size_t j = 0; j < o.ny_; ++j) at(i, j) += o.at(i, j);
    return *this;
  }
  BasicBivariatePoly& operator-=(const BasicBivariatePoly& o) {
    grow(o.nx_, o.ny_);
    for (std::size_t i = 0; i < o.nx_; ++i)
      for (std::size_t j = 0; j < o.ny_; ++j) at(i, j) -= o.at(i, j);
    return *this;
  }
  BasicBivariatePoly& operator*=(Real s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend BasicBivariatePoly operator+(BasicBivariatePoly a, const BasicBivariatePoly& b) { return a += b; }
  friend BasicBivariatePoly operator-(BasicBivariatePoly a, const BasicBivariatePoly& b) { return a -= b; }
  friend BasicBivariatePoly operator*(BasicBivariatePoly a, Real s) { return a *= s; }
  friend BasicBivariatePoly operator*(Real s, BasicBivariatePoly a) { return a *= s; }
  friend BasicBivariatePoly operator*(const BasicBivariatePoly& a, const BasicBivariatePoly& b) {
    return multiply(a, b);
  }

  friend BasicBivariatePoly multiply(const BasicBivariatePoly& a, const BasicBivariatePoly& b) {
    BasicBivariatePoly out(a.nx_ + b.nx_ - 2, a.ny_ + b.ny_ - 2);
    for (std::size_t i = 0; i < a.nx_; ++i)
      for (std::size_t j = 0; j < a.ny_; ++j) {
        const Real aij = a.at(i, j);
        if (aij == Real(0)) continue;
        for (std::size_t k = 0; k < b.nx_; ++k)
          for (std::size_t l = 0; l < b.ny_; ++l) out.at(i + k, j + l) += aij * b.at(k, l);
      }
    return out;
  }

 private:
  void grow(std::size_t nx, std::size_t ny) {
    if (nx <= nx_ && ny <= ny_) return;
    BasicBivariatePoly bigger(std::max(nx, nx_) - 1, std::max(ny, ny_) - 1);
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j) bigger.at(i, j) = at(i, j);
    *this = std::move(bigger);
  }

  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  std::vector<Real> c_;
};

using BivariatePoly = BasicBivariatePoly<double>;

/// Exact partial derivative. A constant maps to the zero polynomial.
template <class Real>
BasicBivariatePoly<Real> partial(const BasicBivariatePoly<Real>& p, Axis axis) {
  const std::size_t mx = p.max_degree_x(), my = p.max_degree_y();
  if (axis == Axis::x) {
    BasicBivariatePoly<Real> out(mx > 0 ? mx - 1 : 0, my);
    for (std::size_t i = 1; i <= mx; ++i)
      for (std::size_t j = 0; j <= my; ++j) out.at(i - 1, j) = Real(static_cast<double>(i)) * p.at(i, j);
    return out;
  }
  BasicBivariatePoly<Real> out(mx, my > 0 ? my - 1 : 0);
  for (std::size_t i = 0; i <= mx; ++i)
    for (std::size_t j = 1; j <= my; ++j) out.at(i, j - 1) = Real(static_cast<double>(j)) * p.at(i, j);
  return out;
}

/// Q(u, v) = P(u + v, uv), with u in the first slot.
template <class Real>
BasicBivariatePoly<Real> pullback_symmetric(const BasicBivariatePoly<Real>& p) {
  const std::size_t mx = p.max_degree_x(), my = p.max_degree_y();
  // (u+v)^i (uv)^j = sum_r C(i,r) u^(r+j) v^(i-r+j)
  std::vector<std::vector<Real>> binom(mx + 1);
  for (std::size_t i = 0; i <= mx; ++i) {
    binom[i].assign(i + 1, Real(1));
    for (std::size_t r = 1; r < i; ++r) binom[i][r] = binom[i - 1][r - 1] + binom[i - 1][r];
  }
  BasicBivariatePoly<Real> q(mx + my, mx + my);
  for (std::size_t i = 0; i <= mx; ++i)
    for (std::size_t j = 0; j <= my; ++j) {
      const Real c = p.at(i, j);
      if (c == Real(0)) continue;
      for (std::size_t r = 0; r <= i; ++r) q.at(r + j, i - r + j) += c * binom[i][r];
    }
  return q;
}

/// dQ/du - dQ/dv for Q = pullback_symmetric(P); equals (v - u) (dP/dy)(u + v, uv).
template <class Real>
BasicBivariatePoly<Real> pullback_derivative_y(const BasicBivariatePoly<Real>& p) {
  const auto q = pullback_symmetric(p);
  return partial(q, Axis::x) - partial(q, Axis::y);
}

/// d(vQ)/dv - d(uQ)/du for Q = pullback_symmetric(P); equals (v - u) (dP/dx)(u + v, uv).
template <class Real>
BasicBivariatePoly<Real> pullback_derivative_x(const BasicBivariatePoly<Real>& p) {
  const auto q = pullback_symmetric(p);
  const auto u = BasicBivariatePoly<Real>::x();
  const auto v = BasicBivariatePoly<Real>::y();
  return partial(multiply(v, q), Axis::y) - partial(multiply(u, q), Axis::x);
}

/// Largest coefficientwise |a - b| over the union of both supports.
template <class Real>
Real max_coeff_difference(const BasicBivariatePoly<Real>& a, const BasicBivariatePoly<Real>& b) {
  using std::abs;
  const std::size_t mx = std::max(a.max_degree_x(), b.max_degree_x());
  const std::size_t my = std::max(a.max_degree_y(), b.max_degree_y());
  Real m(0);
  for (std::size_t i = 0; i <= mx; ++i)
    for (std::size_t j = 0; j <= my; ++j) m = std::max<Real>(m, abs(a.coeff(i, j) - b.coeff(i, j)));
  return m;
}

}  // namespace markov
