#pragma once

// L^2 best constants as generalized symmetric eigenproblems.
//
// For a basis b_1..b_N of P_n and a measure mu, the Markov factor
// sup ||dP||/||P|| is sqrt(lambda_max(A, G)) with G_ab = <b_a, b_b> and
// A_ab = <d b_a, d b_b>. Both forms are assembled from the same quadrature,
// as B^T B with B the weighted value matrix, so the square-root factor of G
// is taken from a QR factorization of B instead of a Cholesky
// factorization of G itself.

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "markov/domains.hpp"
#include "markov/poly2d.hpp"

namespace markov {

/// Dense symmetric matrix. Construction checks symmetry to 1e-13 relative.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Eigen::MatrixXd m);

  Eigen::Index dim() const { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

enum class FactorMethod { eigen, extremal_sequence, ratio_sample };

std::string to_string(FactorMethod m);

struct FactorPoint {
  int n = 0;
  double value = 0.0;
  FactorMethod method = FactorMethod::eigen;
};

/// Basis function T_i(x / sx) T_j(y / sy).
struct BasisIndex {
  int i = 0;
  int j = 0;
};

/// Graded lexicographic (i descending within each degree) index list of P_n.
std::vector<BasisIndex> basis_indices(int n);

/// Per-domain affine scaling (sx, sy) keeping basis arguments in [-1, 1].
std::pair<double, double> basis_scaling(const Domain& domain);

/// The basis of P_n as expanded polynomials, in basis_indices order.
std::vector<BivariatePoly> basis(int n, const Domain& domain);

/// Values (or derivatives along `axis`) of the basis at the nodes, one
/// row per node, evaluated from the Chebyshev recurrences.
Eigen::MatrixXd basis_values(int n, const Domain& domain, const std::vector<Point>& nodes);
Eigen::MatrixXd basis_derivative_values(int n, const Domain& domain, const std::vector<Point>& nodes, Axis axis);

/// G_ab = int b_a b_b dmu, where mu is the domain measure (with w on the
/// simplex) times (v - u)^extra_weight_power. extra_weight_power is 0 or 2;
/// 2 is only meaningful on the simplex. Throws ConditioningError when the
/// smallest eigenvalue is not safely positive.
SymMatrix gram(int n, const Domain& domain, int extra_weight_power = 0);

struct PowerIterationResult {
  double lambda = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 500;
  /// The iteration runs on S^(2^squarings), which raises the ratio of the
  /// two leading eigenvalues to that power; the Rayleigh quotient is always
  /// taken with S itself.
  int squarings = 4;
};

/// Largest eigenvalue of a symmetric positive semidefinite matrix, from
/// the all-ones start vector. Throws ConvergenceError on hitting the cap.
PowerIterationResult power_iteration(const Eigen::MatrixXd& s, const PowerIterationOptions& options = {});

struct GeneralizedResult {
  double lambda_max = 0.0;
  /// Maximizing coefficient vector in the original basis (unit denominator norm).
  Eigen::VectorXd coefficients;
  int iterations = 0;
};

/// lambda_max(N^T N, D^T D) for weighted value matrices N (numerator) and
/// D (denominator) sharing rows. Throws ConditioningError when D is
/// numerically rank deficient (diagonal of R below rcond_floor relative).
GeneralizedResult generalized_lambda_max(const Eigen::MatrixXd& numer, const Eigen::MatrixXd& denom,
                                         const PowerIterationOptions& options = {}, double rcond_floor = 1e-12);

/// sup over P in P_n of ||dP/d axis||_2 / ||P||_2 on the domain.
FactorPoint l2_markov_factor(int n, Axis axis, const Domain& domain);

/// sup over P in P_n of ||P||_{L^2(S,w)} / ||(v - u) P||_{L^2(S,w)}.
FactorPoint l2_schur_factor(int n);

/// Maximizer of the Markov factor, reassembled as a polynomial.
struct MarkovWitness {
  FactorPoint factor;
  BivariatePoly polynomial;
};
MarkovWitness l2_markov_witness(int n, Axis axis, const Domain& domain);

}  // namespace markov
