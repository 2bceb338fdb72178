#include "markov/oracles.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "markov/errors.hpp"

namespace markov::oracle {
namespace {

Rational power_integral(int k) {  // int_{-1}^{1} u^k du
  return k % 2 ? Rational(0) : Rational(2, k + 1);
}

Rational binomial(int n, int k) {
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Rational simplex_moment(int a, int b) {
  // inner: int_u^1 v^b (v - u) dv = (1 - u^(b+2))/(b+2) - u (1 - u^(b+1))/(b+1)
  return (power_integral(a) - power_integral(a + b + 2)) / (b + 2) -
         (power_integral(a + 1) - power_integral(a + b + 2)) / (b + 1);
}

Rational omega_moment(int i, int j) {
  // x^i y^j -> (u+v)^i (uv)^j (v-u) on S
  Rational s(0);
  for (int r = 0; r <= i; ++r) s += binomial(i, r) * simplex_moment(r + j, i - r + j);
  return s;
}

double integrate_exact(const BivariatePoly& p, const Domain& domain) {
  Rational s(0);
  for (std::size_t i = 0; i <= p.max_degree_x(); ++i)
    for (std::size_t j = 0; j <= p.max_degree_y(); ++j) {
      const double c = p.at(i, j);
      if (c == 0.0) continue;
      const int ii = static_cast<int>(i), jj = static_cast<int>(j);
      Rational m;
      switch (domain.kind()) {
        case DomainKind::koornwinder: m = omega_moment(ii, jj); break;
        case DomainKind::simplex_weighted: m = simplex_moment(ii, jj); break;
        case DomainKind::delta_l: throw DomainError("integrate_exact: Delta_l is not supported");
      }
      s += Rational(c) * m;
    }
  return static_cast<double>(s);
}

Matrix cholesky(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix l(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
    if (!(d > 0.0)) throw DomainError("oracle::cholesky: matrix is not positive definite");
    l[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = s / l[j][j];
    }
  }
  return l;
}

std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= 1e-30 * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace {

struct Monomial {
  int i, j;
};

std::vector<Monomial> monomials(int n) {
  std::vector<Monomial> out;
  for (int d = 0; d <= n; ++d)
    for (int i = d; i >= 0; --i) out.push_back({i, d - i});
  return out;
}

// lambda_max(A, G) through L^{-1} A L^{-T}.
double pencil_max(const Matrix& a, const Matrix& g) {
  const std::size_t n = g.size();
  const auto l = cholesky(g);
  // X = L^{-1} A (forward substitution column by column)
  Matrix x(n, std::vector<double>(n, 0.0));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      double s = a[i][c];
      for (std::size_t k = 0; k < i; ++k) s -= l[i][k] * x[k][c];
      x[i][c] = s / l[i][i];
    }
  // S = X L^{-T}, i.e. S^T = L^{-1} X^T
  Matrix s(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      double v = x[r][i];
      for (std::size_t k = 0; k < i; ++k) v -= l[i][k] * s[r][k];
      s[r][i] = v / l[i][i];
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s[i][j] = s[j][i] = 0.5 * (s[i][j] + s[j][i]);
  return jacobi_eigenvalues(s).back();
}

}  // namespace

double l2_markov_factor(int n, Axis axis, const Domain& domain) {
  if (n == 0) return 0.0;
  std::function<Rational(int, int)> moment;
  if (domain.kind() == DomainKind::koornwinder)
    moment = omega_moment;
  else if (domain.kind() == DomainKind::simplex_weighted)
    moment = simplex_moment;
  else
    throw DomainError("oracle::l2_markov_factor: Delta_l is not supported");
  const auto mons = monomials(n);
  const std::size_t dim = mons.size();
  Matrix g(dim, std::vector<double>(dim)), a(dim, std::vector<double>(dim));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const auto [i, j] = mons[r];
      const auto [k, l] = mons[c];
      g[r][c] = static_cast<double>(moment(i + k, j + l));
      const int f = axis == Axis::x ? i * k : j * l;
      a[r][c] = f == 0 ? 0.0
                       : f * static_cast<double>(axis == Axis::x ? moment(i + k - 2, j + l) : moment(i + k, j + l - 2));
    }
  return std::sqrt(pencil_max(a, g));
}

double l2_schur_factor(int n) {
  const auto mons = monomials(n);
  const std::size_t dim = mons.size();
  Matrix g(dim, std::vector<double>(dim)), h(dim, std::vector<double>(dim));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const int a = mons[r].i + mons[c].i, b = mons[r].j + mons[c].j;
      g[r][c] = static_cast<double>(simplex_moment(a, b));
      h[r][c] = static_cast<double>(simplex_moment(a, b + 2) - 2 * simplex_moment(a + 1, b + 1) +
                                    simplex_moment(a + 2, b));
    }
  return std::sqrt(pencil_max(g, h));
}

double jacobi_explicit(int n, double alpha, double beta, double x) {
  // sum_s C(n+alpha, n-s) C(n+beta, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
  auto gbinom = [](double top, int k) {
    return std::exp(std::lgamma(top + 1.0) - std::lgamma(k + 1.0) - std::lgamma(top - k + 1.0));
  };
  double sum = 0.0;
  for (int s = 0; s <= n; ++s)
    sum += gbinom(n + alpha, n - s) * gbinom(n + beta, s) * std::pow((x - 1.0) / 2.0, s) *
           std::pow((x + 1.0) / 2.0, n - s);
  return sum;
}

double refine_until_stable(const std::function<double(double)>& f, double a, double b, double rel_tol,
                           int max_doublings) {
  static const double xg[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                               0.9061798459386640};
  static const double wg[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  auto composite = [&](long panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double s = 0.0;
    for (long p = 0; p < panels; ++p) {
      const double mid = a + (static_cast<double>(p) + 0.5) * h;
      double ps = 0.0;
      for (int k = 0; k < 5; ++k) ps += wg[k] * f(mid + 0.5 * h * xg[k]);
      s += 0.5 * h * ps;
    }
    return s;
  };
  long panels = 8;
  double prev = composite(panels);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    const double cur = composite(panels);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw ConvergenceError("refine_until_stable: no agreement within the doubling cap");
}

}  // namespace markov::oracle
