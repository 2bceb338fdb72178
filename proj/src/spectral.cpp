#include "markov/spectral.hpp"

#include <cmath>
#include <limits>

#include "markov/errors.hpp"

namespace markov {

SymMatrix::SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("SymMatrix: matrix is not square");
  const double scale = m_.cwiseAbs().maxCoeff();
  const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-13 * std::max(scale, std::numeric_limits<double>::min()))
    throw DomainError("SymMatrix: matrix is not symmetric");
  m_ = (0.5 * (m_ + m_.transpose())).eval();
}

std::string to_string(FactorMethod m) {
  switch (m) {
    case FactorMethod::eigen: return "eigen";
    case FactorMethod::extremal_sequence: return "extremal-sequence";
    case FactorMethod::ratio_sample: return "ratio-sample";
  }
  return {};
}

std::vector<BasisIndex> basis_indices(int n) {
  if (n < 0) throw DomainError("basis: degree must be >= 0");
  std::vector<BasisIndex> out;
  out.reserve(static_cast<std::size_t>(n + 1) * (n + 2) / 2);
  for (int d = 0; d <= n; ++d)
    for (int i = d; i >= 0; --i) out.push_back({i, d - i});
  return out;
}

std::pair<double, double> basis_scaling(const Domain& domain) {
  return {domain.half_width_x(), domain.half_width_y()};
}

namespace {

// Monomial coefficients of T_k(s / scale).
std::vector<double> scaled_chebyshev_coeffs(int k, double scale) {
  std::vector<double> t0{1.0}, t1{0.0, 1.0};
  std::vector<double> tk = k == 0 ? t0 : t1;
  for (int j = 1; j < k; ++j) {
    std::vector<double> t2(t1.size() + 1, 0.0);
    for (std::size_t i = 0; i < t1.size(); ++i) t2[i + 1] += 2.0 * t1[i];
    for (std::size_t i = 0; i < t0.size(); ++i) t2[i] -= t0[i];
    t0 = std::move(t1);
    t1 = std::move(t2);
    tk = t1;
  }
  double f = 1.0;
  for (auto& c : tk) {
    c *= f;
    f /= scale;
  }
  return tk;
}

// T_0..T_n and derivatives at s.
void chebyshev_table(int n, double s, std::vector<double>& t, std::vector<double>& dt) {
  t.assign(n + 1, 0.0);
  dt.assign(n + 1, 0.0);
  t[0] = 1.0;
  if (n == 0) return;
  t[1] = s;
  dt[1] = 1.0;
  for (int k = 1; k < n; ++k) {
    t[k + 1] = 2.0 * s * t[k] - t[k - 1];
    dt[k + 1] = 2.0 * t[k] + 2.0 * s * dt[k] - dt[k - 1];
  }
}

enum class Which { value, dx, dy };

Eigen::MatrixXd evaluate(int n, const Domain& domain, const std::vector<Point>& nodes, Which which) {
  const auto idx = basis_indices(n);
  const auto [sx, sy] = basis_scaling(domain);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(idx.size()));
  std::vector<double> tx, dtx, ty, dty;
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    chebyshev_table(n, nodes[r].x / sx, tx, dtx);
    chebyshev_table(n, nodes[r].y / sy, ty, dty);
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const auto [i, j] = idx[c];
      double v = 0.0;
      switch (which) {
        case Which::value: v = tx[i] * ty[j]; break;
        case Which::dx: v = dtx[i] / sx * ty[j]; break;
        case Which::dy: v = tx[i] * dty[j] / sy; break;
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return out;
}

Eigen::MatrixXd weighted_rows(Eigen::MatrixXd m, const std::vector<double>& weights) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) m.row(r) *= std::sqrt(weights[static_cast<std::size_t>(r)]);
  return m;
}

}  // namespace

std::vector<BivariatePoly> basis(int n, const Domain& domain) {
  const auto [sx, sy] = basis_scaling(domain);
  std::vector<BivariatePoly> out;
  for (const auto [i, j] : basis_indices(n)) {
    const auto cx = scaled_chebyshev_coeffs(i, sx);
    const auto cy = scaled_chebyshev_coeffs(j, sy);
    BivariatePoly p(cx.size() - 1, cy.size() - 1);
    for (std::size_t a = 0; a < cx.size(); ++a)
      for (std::size_t b = 0; b < cy.size(); ++b) p.at(a, b) = cx[a] * cy[b];
    out.push_back(std::move(p));
  }
  return out;
}

Eigen::MatrixXd basis_values(int n, const Domain& domain, const std::vector<Point>& nodes) {
  return evaluate(n, domain, nodes, Which::value);
}

Eigen::MatrixXd basis_derivative_values(int n, const Domain& domain, const std::vector<Point>& nodes, Axis axis) {
  return evaluate(n, domain, nodes, axis == Axis::x ? Which::dx : Which::dy);
}

SymMatrix gram(int n, const Domain& domain, int extra_weight_power) {
  if (extra_weight_power != 0 && extra_weight_power != 2)
    throw DomainError("gram: extra_weight_power must be 0 or 2");
  if (extra_weight_power == 2 && domain.kind() != DomainKind::simplex_weighted)
    throw DomainError("gram: the (v - u)^2 weight is defined on the simplex only");
  const auto rule = quad_rule(domain, 2 * n + extra_weight_power);
  auto b = weighted_rows(basis_values(n, domain, rule.nodes), rule.weights);
  if (extra_weight_power == 2)
    for (Eigen::Index r = 0; r < b.rows(); ++r) b.row(r) *= rule.nodes[static_cast<std::size_t>(r)].y - rule.nodes[static_cast<std::size_t>(r)].x;
  Eigen::MatrixXd g = b.transpose() * b;
  g = (0.5 * (g + g.transpose())).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff(), lmax = eig.eigenvalues().maxCoeff();
  if (!(lmin > 64.0 * std::numeric_limits<double>::epsilon() * lmax))
    throw ConditioningError("gram: matrix for degree " + std::to_string(n) + " on " + domain.name() +
                            " is numerically indefinite (lambda_min/lambda_max = " + std::to_string(lmin / lmax) +
                            "); reduce n");
  return SymMatrix(std::move(g));
}

PowerIterationResult power_iteration(const Eigen::MatrixXd& s, const PowerIterationOptions& options) {
  const Eigen::Index dim = s.rows();
  PowerIterationResult res;
  res.vector = Eigen::VectorXd::Ones(dim) / std::sqrt(static_cast<double>(std::max<Eigen::Index>(dim, 1)));
  const double scale = dim == 0 ? 0.0 : s.cwiseAbs().maxCoeff();
  if (scale == 0.0) return res;

  Eigen::MatrixXd t = s / scale;
  for (int k = 0; k < options.squarings; ++k) {
    t = t * t;
    t = (0.5 * (t + t.transpose())).eval();
    t /= t.cwiseAbs().maxCoeff();
  }
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::VectorXd y = t * res.vector;
    const double norm = y.norm();
    if (norm == 0.0) throw ConvergenceError("power_iteration: start vector annihilated");
    res.vector = y / norm;
    res.lambda = res.vector.dot(s * res.vector);
    res.iterations = it;
    if (it > 1 && std::abs(res.lambda - prev) <= options.tolerance * std::abs(res.lambda)) return res;
    prev = res.lambda;
  }
  throw ConvergenceError("power_iteration: no convergence within " + std::to_string(options.max_iterations) +
                         " iterations");
}

GeneralizedResult generalized_lambda_max(const Eigen::MatrixXd& numer, const Eigen::MatrixXd& denom,
                                         const PowerIterationOptions& options, double rcond_floor) {
  if (numer.rows() != denom.rows() || numer.cols() != denom.cols())
    throw DomainError("generalized_lambda_max: shape mismatch");
  const Eigen::Index dim = denom.cols();
  if (denom.rows() < dim) throw ConditioningError("generalized_lambda_max: fewer nodes than basis functions");

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(denom);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(dim).triangularView<Eigen::Upper>();
  const Eigen::VectorXd diag = r.diagonal().cwiseAbs();
  if (!(diag.minCoeff() > rcond_floor * diag.maxCoeff()))
    throw ConditioningError("generalized_lambda_max: denominator form is numerically singular (rcond " +
                            std::to_string(diag.minCoeff() / diag.maxCoeff()) + "); reduce n");

  // M = numer R^{-1}; eigenvalues of M^T M are those of the pencil.
  const Eigen::MatrixXd m =
      r.triangularView<Eigen::Upper>().transpose().solve(numer.transpose()).transpose();
  Eigen::MatrixXd s = m.transpose() * m;
  s = (0.5 * (s + s.transpose())).eval();
  const auto pi = power_iteration(s, options);

  GeneralizedResult out;
  out.lambda_max = pi.lambda;
  out.iterations = pi.iterations;
  out.coefficients = r.triangularView<Eigen::Upper>().solve(pi.vector);
  Eigen::Index imax = 0;
  out.coefficients.cwiseAbs().maxCoeff(&imax);
  if (out.coefficients(imax) < 0.0) out.coefficients = -out.coefficients;
  return out;
}

namespace {

GeneralizedResult markov_problem(int n, Axis axis, const Domain& domain) {
  const auto rule = quad_rule(domain, 2 * n);
  const auto values = weighted_rows(basis_values(n, domain, rule.nodes), rule.weights);
  const auto derivs = weighted_rows(basis_derivative_values(n, domain, rule.nodes, axis), rule.weights);
  return generalized_lambda_max(derivs, values);
}

}  // namespace

FactorPoint l2_markov_factor(int n, Axis axis, const Domain& domain) {
  if (n < 0) throw DomainError("l2_markov_factor: degree must be >= 0");
  if (n == 0) return {0, 0.0, FactorMethod::eigen};
  const auto res = markov_problem(n, axis, domain);
  return {n, std::sqrt(std::max(res.lambda_max, 0.0)), FactorMethod::eigen};
}

MarkovWitness l2_markov_witness(int n, Axis axis, const Domain& domain) {
  if (n < 1) throw DomainError("l2_markov_witness: degree must be >= 1");
  const auto res = markov_problem(n, axis, domain);
  MarkovWitness w{{n, std::sqrt(std::max(res.lambda_max, 0.0)), FactorMethod::eigen}, BivariatePoly()};
  const auto b = basis(n, domain);
  for (std::size_t a = 0; a < b.size(); ++a) w.polynomial += b[a] * res.coefficients(static_cast<Eigen::Index>(a));
  return w;
}

FactorPoint l2_schur_factor(int n) {
  if (n < 0) throw DomainError("l2_schur_factor: degree must be >= 0");
  const auto domain = Domain::simplex_weighted();
  const auto rule = quad_rule(domain, 2 * n + 2);
  const auto values = weighted_rows(basis_values(n, domain, rule.nodes), rule.weights);
  Eigen::MatrixXd damped = values;
  for (Eigen::Index r = 0; r < damped.rows(); ++r) {
    const auto& p = rule.nodes[static_cast<std::size_t>(r)];
    damped.row(r) *= p.y - p.x;
  }
  const auto res = generalized_lambda_max(values, damped);
  return {n, std::sqrt(std::max(res.lambda_max, 0.0)), FactorMethod::eigen};
}

}  // namespace markov
