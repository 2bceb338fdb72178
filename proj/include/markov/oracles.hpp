#pragma once

// Reference computations that share no code path with the production
// solvers: exact rational moments, a monomial-basis Gram pencil, a dense
// Cholesky plus cyclic Jacobi eigensolver, the explicit-sum Jacobi
// polynomial and a uniform-refinement integrator. Used by the verifier and
// the test suites to check the production results.

#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "markov/domains.hpp"
#include "markov/poly2d.hpp"

namespace markov::oracle {

using Rational = boost::multiprecision::cpp_rational;

/// int_S u^a v^b (v - u) du dv, exactly.
Rational simplex_moment(int a, int b);

/// int_Omega x^i y^j dx dy, exactly (through the pullback to S).
Rational omega_moment(int i, int j);

/// Exact integral of a polynomial over the domain measure (Koornwinder or
/// weighted simplex), via the rational moments.
double integrate_exact(const BivariatePoly& p, const Domain& domain);

using Matrix = std::vector<std::vector<double>>;

/// Lower-triangular L with L L^T = a. Throws DomainError if a is not
/// positive definite.
Matrix cholesky(const Matrix& a);

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(Matrix a);

/// L^2 Markov factor from the monomial basis and exact moments. Koornwinder
/// or weighted simplex only; keep n small (monomial Grams degrade fast).
double l2_markov_factor(int n, Axis axis, const Domain& domain);

/// sup ||P||_{L^2(S,w)} / ||(v-u) P||_{L^2(S,w)} from exact moments.
double l2_schur_factor(int n);

/// P_n^{(alpha,beta)}(x) from the explicit binomial sum. Accurate for small n.
double jacobi_explicit(int n, double alpha, double beta, double x);

/// Composite 5-point Gauss-Legendre on uniform panels, doubling the panel
/// count until two successive results agree to rel_tol.
double refine_until_stable(const std::function<double(double)>& f, double a, double b, double rel_tol,
                           int max_doublings = 22);

}  // namespace markov::oracle
