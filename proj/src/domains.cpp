#include "markov/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "markov/errors.hpp"

namespace markov {

Domain Domain::delta_l(int l) {
  if (l < 1 || l % 2 == 0) throw DomainError("Delta_l requires a positive odd l, got " + std::to_string(l));
  return Domain(DomainKind::delta_l, l);
}

Domain Domain::parse(const std::string& name, int l) {
  if (name == "omega" || name == "koornwinder") return koornwinder();
  if (name == "simplex-weighted" || name == "simplex") return simplex_weighted();
  if (name == "delta-l" || name == "delta") return delta_l(l);
  throw DomainError("unknown domain '" + name + "'");
}

std::string Domain::name() const {
  switch (kind_) {
    case DomainKind::koornwinder: return "omega";
    case DomainKind::simplex_weighted: return "simplex-weighted";
    case DomainKind::delta_l: return "delta-l";
  }
  return {};
}

bool Domain::contains(double x, double y) const {
  switch (kind_) {
    case DomainKind::koornwinder: return std::abs(x) < y + 1.0 && x * x > 4.0 * y;
    case DomainKind::simplex_weighted: return -1.0 < x && x < y && y < 1.0;
    case DomainKind::delta_l:
      return std::pow(std::abs(x), 1.0 / l_) + std::pow(std::abs(y), 1.0 / l_) < 1.0;
  }
  return false;
}

bool Domain::contains_closure(double x, double y, double tol) const {
  switch (kind_) {
    case DomainKind::koornwinder: return std::abs(x) <= y + 1.0 + tol && x * x >= 4.0 * y - tol;
    case DomainKind::simplex_weighted: return -1.0 - tol <= x && x <= y + tol && y <= 1.0 + tol;
    case DomainKind::delta_l:
      return std::pow(std::abs(x), 1.0 / l_) + std::pow(std::abs(y), 1.0 / l_) <= 1.0 + tol;
  }
  return false;
}

GaussRule1D gauss_legendre_1d(int m) {
  if (m < 1) throw DomainError("gauss_legendre_1d: m must be >= 1");
  GaussRule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("gauss_legendre_1d: Newton iteration did not converge");
    // derivative at the converged node
    double p0 = 1.0, p1 = z;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = m == 1 ? 1.0 : m * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[m - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

double QuadratureRule::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

namespace {

// Points needed for exactness through degree d.
int points_for(int d) { return std::max(1, (d + 2) / 2); }

// Gauss rule on [a, b] split into `panels` equal pieces.
GaussRule1D composite_1d(double a, double b, int panels, int points) {
  const auto base = gauss_legendre_1d(points);
  GaussRule1D out;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < points; ++i) {
      out.nodes.push_back(lo + 0.5 * h * (base.nodes[i] + 1.0));
      out.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return out;
}

void check_capacity(std::size_t count, const QuadratureOptions& options) {
  if (count > options.max_nodes)
    throw CapacityError("quadrature rule needs " + std::to_string(count) + " nodes, cap is " +
                        std::to_string(options.max_nodes));
}

// Collapsed coordinates on S: u in [-1,1], v = u + (1-u) t, t in [0,1].
// Area element (1-u) du dt; the weight v - u contributes another (1-u) t.
QuadratureRule simplex_rule(const GaussRule1D& ru, const GaussRule1D& rt, bool weighted,
                            bool push_to_omega) {
  QuadratureRule rule;
  rule.nodes.reserve(ru.nodes.size() * rt.nodes.size());
  rule.weights.reserve(ru.nodes.size() * rt.nodes.size());
  for (std::size_t a = 0; a < ru.nodes.size(); ++a) {
    const double u = ru.nodes[a];
    for (std::size_t b = 0; b < rt.nodes.size(); ++b) {
      const double t = rt.nodes[b];
      const double v = u + (1.0 - u) * t;
      double w = ru.weights[a] * rt.weights[b] * (1.0 - u);
      if (weighted) w *= (1.0 - u) * t;
      rule.nodes.push_back(push_to_omega ? Point{u + v, u * v} : Point{u, v});
      rule.weights.push_back(w);
    }
  }
  return rule;
}

// Quadrant maps on Delta_l: x = sx s^l, y = sy (1-s)^l t, Jacobian l s^(l-1) (1-s)^l.
QuadratureRule delta_rule(int l, const GaussRule1D& rs, const GaussRule1D& rt) {
  QuadratureRule rule;
  for (const double sx : {1.0, -1.0})
    for (const double sy : {1.0, -1.0})
      for (std::size_t a = 0; a < rs.nodes.size(); ++a) {
        const double s = rs.nodes[a];
        const double sl = std::pow(s, l);
        const double rest = std::pow(1.0 - s, l);
        const double jac = l * std::pow(s, l - 1) * rest;
        for (std::size_t b = 0; b < rt.nodes.size(); ++b) {
          rule.nodes.push_back({sx * sl, sy * rest * rt.nodes[b]});
          rule.weights.push_back(rs.weights[a] * rt.weights[b] * jac);
        }
      }
  return rule;
}

}  // namespace

QuadratureRule quad_rule(const Domain& domain, int exactness_degree, const QuadratureOptions& options) {
  if (exactness_degree < 0) throw DomainError("quad_rule: exactness_degree must be >= 0");
  const int d = exactness_degree;
  QuadratureRule rule;
  switch (domain.kind()) {
    case DomainKind::simplex_weighted:
    case DomainKind::koornwinder: {
      const bool omega = domain.kind() == DomainKind::koornwinder;
      const bool weighted = omega || options.weighted;
      const int ds = omega ? 2 * d : d;
      const int mu = points_for(ds + 1 + (weighted ? 1 : 0));
      const int mt = points_for(ds + (weighted ? 1 : 0));
      check_capacity(static_cast<std::size_t>(mu) * mt, options);
      const auto ru = composite_1d(-1.0, 1.0, 1, mu);
      const auto rt = composite_1d(0.0, 1.0, 1, mt);
      rule = simplex_rule(ru, rt, weighted, omega);
      break;
    }
    case DomainKind::delta_l: {
      const int l = domain.l();
      const int ms = points_for(l * d + 2 * l - 1);
      const int mt = points_for(d);
      check_capacity(4 * static_cast<std::size_t>(ms) * mt, options);
      rule = delta_rule(l, composite_1d(0.0, 1.0, 1, ms), composite_1d(0.0, 1.0, 1, mt));
      break;
    }
  }
  rule.exactness_degree = d;
  return rule;
}

QuadratureRule composite_rule(const Domain& domain, int panels_per_axis, int points_per_panel,
                              const QuadratureOptions& options) {
  if (panels_per_axis < 1 || points_per_panel < 1)
    throw DomainError("composite_rule: panel and point counts must be positive");
  const std::size_t per_axis = static_cast<std::size_t>(panels_per_axis) * points_per_panel;
  QuadratureRule rule;
  switch (domain.kind()) {
    case DomainKind::simplex_weighted:
    case DomainKind::koornwinder: {
      const bool omega = domain.kind() == DomainKind::koornwinder;
      check_capacity(per_axis * per_axis, options);
      rule = simplex_rule(composite_1d(-1.0, 1.0, panels_per_axis, points_per_panel),
                          composite_1d(0.0, 1.0, panels_per_axis, points_per_panel),
                          omega || options.weighted, omega);
      break;
    }
    case DomainKind::delta_l:
      check_capacity(4 * per_axis * per_axis, options);
      rule = delta_rule(domain.l(), composite_1d(0.0, 1.0, panels_per_axis, points_per_panel),
                        composite_1d(0.0, 1.0, panels_per_axis, points_per_panel));
      break;
  }
  rule.exactness_degree = 2 * points_per_panel - 1;
  return rule;
}

int sup_grid_side(int degree, const GridOptions& options) {
  if (options.side_override > 0) return options.side_override;
  return std::max(1, std::max(options.min_side, options.per_degree * degree) * std::max(1, options.density));
}

std::vector<Point> sup_grid(const Domain& domain, int degree, const GridOptions& options) {
  if (degree < 0) throw DomainError("sup_grid: degree must be >= 0");
  const int n = sup_grid_side(degree, options);
  std::vector<double> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = std::cos(std::numbers::pi * i / n);
  c[0] = 1.0;
  c[n] = -1.0;
  if (n % 2 == 0) c[n / 2] = 0.0;

  std::vector<Point> pts;
  switch (domain.kind()) {
    case DomainKind::simplex_weighted:
    case DomainKind::koornwinder: {
      const bool omega = domain.kind() == DomainKind::koornwinder;
      pts.reserve(static_cast<std::size_t>(n + 1) * (n + 2) / 2 + 3);
      // c is decreasing, so u = c[a] <= v = c[b] iff a >= b
      for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= a; ++b) {
          const double u = c[a], v = c[b];
          pts.push_back(omega ? Point{u + v, u * v} : Point{u, v});
        }
      if (omega) {
        pts.push_back({-2.0, 1.0});
        pts.push_back({2.0, 1.0});
        pts.push_back({0.0, -1.0});
      }
      break;
    }
    case DomainKind::delta_l: {
      const int l = domain.l();
      pts.reserve(4 * static_cast<std::size_t>(n + 1) * (n + 1));
      for (const double sx : {1.0, -1.0})
        for (const double sy : {1.0, -1.0})
          for (int a = 0; a <= n; ++a) {
            const double s = 0.5 * (1.0 - c[a]);
            const double rest = std::pow(1.0 - s, l);
            for (int b = 0; b <= n; ++b) pts.push_back({sx * std::pow(s, l), sy * rest * 0.5 * (1.0 - c[b])});
          }
      break;
    }
  }
  return pts;
}

}  // namespace markov
