#pragma once

#include <functional>
#include <limits>

#include "markov/domains.hpp"
#include "markov/poly2d.hpp"

namespace markov {

/// Norm index p in [1, inf]; the supremum norm is a distinct tag.
class NormOrder {
 public:
  static NormOrder sup() { return NormOrder(std::numeric_limits<double>::infinity()); }
  /// Throws DomainError for p < 1 or NaN.
  static NormOrder finite(double p);
  /// "inf" / "infinity" / "sup" or a number >= 1.
  static NormOrder parse(const std::string& text);

  bool is_sup() const { return is_sup_; }
  double p() const { return p_; }
  /// True when |P|^p is itself a polynomial (p an even integer).
  bool is_even_integer() const;
  std::string to_string() const;

 private:
  explicit NormOrder(double p) : p_(p), is_sup_(p == std::numeric_limits<double>::infinity()) {}
  double p_;
  bool is_sup_;
};

struct NormSpec {
  NormOrder order = NormOrder::finite(2.0);
  Domain domain = Domain::koornwinder();
  /// Applies w = v - u on the simplex; ignored elsewhere.
  bool weighted = true;
};

/// Numerical knobs shared by the norm evaluators.
struct NormSettings {
  GridOptions grid;
  QuadratureOptions quadrature;
  /// Extra exactness added on top of p * degree for even p.
  int extra_exactness = 0;
  /// Composite panels per axis = panels_per_degree * max(degree, 1), for non-even p.
  int panels_per_degree = 4;
  int points_per_panel = 8;
  int threads = 1;
};

using PointFunction = std::function<double(double, double)>;

/// ||f||_{L^p} or sup-norm of a function known to be a polynomial of the
/// given total degree (exactness and grid size are sized from it).
double lp_norm(const PointFunction& f, int degree, const NormSpec& spec, const NormSettings& settings = {});

/// Even p: exact quadrature of P^p. p = inf: max over sup_grid (a lower
/// bound). Other p: composite panels, not certified.
double lp_norm(const BivariatePoly& p, const NormSpec& spec, const NormSettings& settings = {});

/// ||dP/d axis|| / ||P||. Throws DomainError when ||P|| = 0.
double markov_ratio(const BivariatePoly& p, Axis axis, const NormSpec& spec, const NormSettings& settings = {});

/// int_0^1 |P_n^{(alpha,alpha)}(x)|^p (1 - x^{1/l})^beta dx, computed after
/// x = t^l with panels split at the zeros of P_n.
double wn_1d_integral(int n, double alpha, double p, double beta, int l);

/// ||dW_n/dy||_{L^p(Delta_l)} / ||W_n||_{L^p(Delta_l)} for W_n = y P_n^{(alpha,alpha)}(x),
/// via the one-dimensional reduction of both integrals.
double wn_ratio(int n, double alpha, int l, double p);

struct BernoulliBounds {
  double lower;   // ((1 - x) / l)^l
  double middle;  // (1 - x^{1/l})^l
  double upper;   // (1 - x)^l
};

BernoulliBounds bernoulli_bounds(double x, int l);

/// Zeros of P_n^{(alpha,alpha)} in (0, 1), ascending.
std::vector<double> jacobi_zeros_positive(int n, double alpha);

}  // namespace markov
