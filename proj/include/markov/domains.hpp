#pragma once

// Geometry and polynomial-exact quadrature on three planar domains:
//
//   Koornwinder   Omega = {|x| < y + 1, x^2 > 4y}, cusps at (+-2, 1)
//   Simplex       S = {-1 < u < v < 1}, optionally with weight w = v - u
//   DeltaL        {|x|^(1/l) + |y|^(1/l) <= 1}, l odd
//
// Omega is the image of S under (u, v) -> (u + v, uv), whose Jacobian is
// v - u. Every Omega rule below is an S rule carrying that Jacobian, pushed
// forward to (x, y).

#include <cstddef>
#include <string>
#include <vector>

namespace markov {

enum class DomainKind { koornwinder, simplex_weighted, delta_l };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

class Domain {
 public:
  static Domain koornwinder() { return Domain(DomainKind::koornwinder, 1); }
  static Domain simplex_weighted() { return Domain(DomainKind::simplex_weighted, 1); }
  /// Throws DomainError unless l is a positive odd integer.
  static Domain delta_l(int l);

  /// Parses "omega" / "koornwinder", "simplex-weighted" / "simplex", "delta-l".
  static Domain parse(const std::string& name, int l = 1);

  DomainKind kind() const { return kind_; }
  int l() const { return l_; }
  std::string name() const;

  /// Open-set membership.
  bool contains(double x, double y) const;
  /// Membership in the closure, with slack `tol` on every defining inequality.
  bool contains_closure(double x, double y, double tol = 1e-12) const;

  /// Half-widths of the centered bounding box: |x| <= half_width_x, |y| <= half_width_y.
  double half_width_x() const { return kind_ == DomainKind::koornwinder ? 2.0 : 1.0; }
  double half_width_y() const { return 1.0; }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain(DomainKind kind, int l) : kind_(kind), l_(l) {}
  DomainKind kind_;
  int l_;
};

struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [-1, 1], exact through degree 2m - 1.
GaussRule1D gauss_legendre_1d(int m);

struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
  /// Total degree in the domain's own coordinates integrated exactly.
  int exactness_degree = 0;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
};

struct QuadratureOptions {
  /// On the simplex, include the weight v - u (false: plain area measure).
  bool weighted = true;
  std::size_t max_nodes = 4'000'000;
};

/// Tensor Gauss rule exact for every polynomial of total degree
/// <= exactness_degree against the domain's measure. Throws CapacityError
/// when the node count would exceed options.max_nodes.
QuadratureRule quad_rule(const Domain& domain, int exactness_degree,
                         const QuadratureOptions& options = {});

/// Composite rule: panels_per_axis x panels_per_axis panels in the collapsed
/// coordinates, points_per_panel Gauss points per panel and axis. Used for
/// non-polynomial integrands such as |P|^p with odd p; not exact.
QuadratureRule composite_rule(const Domain& domain, int panels_per_axis, int points_per_panel,
                              const QuadratureOptions& options = {});

struct GridOptions {
  int min_side = 64;
  int per_degree = 8;
  /// Multiplies the side; doubling it nests the grid (Chebyshev-Lobatto points).
  int density = 1;
  /// When > 0, replaces the degree-driven side entirely.
  int side_override = 0;
};

/// Number of intervals per axis used by sup_grid for the given degree.
int sup_grid_side(int degree, const GridOptions& options = {});

/// Deterministic point cloud on the closure of the domain, including its
/// boundary curves and corners. For Omega the corners (+-2, 1) and (0, -1)
/// are always present.
std::vector<Point> sup_grid(const Domain& domain, int degree, const GridOptions& options = {});

}  // namespace markov
