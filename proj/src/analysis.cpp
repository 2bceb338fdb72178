#include "markov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "markov/errors.hpp"
#include "markov/norms.hpp"
#include "markov/oracles.hpp"
#include "markov/parallel.hpp"

namespace markov {

FitResult fit_exponent(const std::vector<ExponentSample>& samples) {
  if (samples.size() < 3) throw DomainError("fit_exponent: need at least 3 points");
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx, ly;
  for (const auto& s : samples) {
    if (!(s.value > 0.0) || !std::isfinite(s.value)) throw DomainError("fit_exponent: values must be positive and finite");
    if (!(s.n > 0.0)) throw DomainError("fit_exponent: abscissae must be positive");
    lx.push_back(std::log(s.n));
    ly.push_back(std::log(s.value));
    sx += lx.back();
    sy += ly.back();
  }
  const double m = static_cast<double>(samples.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_exponent: abscissae must not all coincide");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < lx.size(); ++i)
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(ly[i] - fit.intercept - fit.slope * lx[i]));
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                            [](const ExponentSample& a, const ExponentSample& b) { return a.n < b.n; });
  fit.n_min = lo->n;
  fit.n_max = hi->n;
  return fit;
}

nlohmann::json to_json(const FitResult& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"max_abs_residual", fit.max_abs_residual},
          {"n_range", {fit.n_min, fit.n_max}}};
}

std::vector<ExtremalRow> sweep_extremal(const ExtremalSweep& sweep, const NormSettings& settings, int threads) {
  for (const int idx : sweep.indices) {
    if (sweep.kind == FamilyKind::Wn) {
      if (idx < 0 || idx > kMaxWnIndex)
        throw CapacityError("W_n index " + std::to_string(idx) + " outside [0, " + std::to_string(kMaxWnIndex) + "]");
    } else if (idx < 1 || idx > kMaxExpandedIndex) {
      throw CapacityError("extremal index " + std::to_string(idx) + " outside the degree cap [1, " +
                          std::to_string(kMaxExpandedIndex) + "]");
    }
  }
  if (sweep.kind == FamilyKind::Wn && sweep.order.is_sup())
    throw DomainError("W_n sweeps use the one-dimensional reduction and need a finite p");

  std::vector<ExtremalRow> rows(sweep.indices.size());
  NormSettings inner = settings;
  inner.threads = 1;
  parallel_for(rows.size(), threads, [&](std::size_t r) {
    const int idx = sweep.indices[r];
    ExtremalRow row;
    row.index = idx;
    if (sweep.kind == FamilyKind::Wn) {
      const auto fam = ExtremalFamily::wn(idx, sweep.alpha, sweep.l);
      const double p = sweep.order.p();
      const double i_num = wn_1d_integral(idx, sweep.alpha, p, sweep.l, sweep.l);
      const double i_den = wn_1d_integral(idx, sweep.alpha, p, (p + 1.0) * sweep.l, sweep.l);
      row.degree = fam.degree();
      row.cusp_derivative = std::pow(4.0 * i_num, 1.0 / p);
      row.norm = std::pow(4.0 / (p + 1.0) * i_den, 1.0 / p);
      row.ratio = wn_ratio(idx, sweep.alpha, sweep.l, p);
      row.ratio_over_expected = row.ratio / std::pow(static_cast<double>(row.degree), 2.0 * sweep.l);
    } else {
      const auto fam = sweep.kind == FamilyKind::Pk ? ExtremalFamily::pk(idx) : ExtremalFamily::qk(idx);
      const NormSpec spec{sweep.order, Domain::koornwinder(), true};
      row.degree = fam.degree();
      row.cusp_derivative = fam.cusp_derivative();
      row.norm = lp_norm([&fam](double x, double y) { return fam.value(x, y); }, row.degree, spec, inner);
      row.ratio = row.cusp_derivative / row.norm;
      const double k4 = std::pow(static_cast<double>(idx), 4);
      row.ratio_over_expected = row.ratio / (sweep.kind == FamilyKind::Pk ? k4 / 4.0 : k4);
    }
    rows[r] = row;
  });
  return rows;
}

std::vector<FactorPoint> to_factor_points(const std::vector<ExtremalRow>& rows) {
  std::vector<FactorPoint> out;
  for (const auto& r : rows) out.push_back({r.degree, r.ratio, FactorMethod::extremal_sequence});
  return out;
}

std::vector<FactorPoint> sweep_factor(const Domain& domain, Axis axis, const std::vector<int>& degrees, int threads) {
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] <= degrees[i - 1]) throw DomainError("sweep_factor: degree list must be strictly increasing");
  std::vector<FactorPoint> out(degrees.size());
  std::vector<std::string> failures(degrees.size());
  parallel_for(degrees.size(), threads, [&](std::size_t i) {
    try {
      out[i] = l2_markov_factor(degrees[i], axis, domain);
    } catch (const ConditioningError& e) {
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (!failures[i].empty())
      throw SweepAborted("factor sweep aborted at n = " + std::to_string(degrees[i]) + ": " + failures[i],
                         std::vector<FactorPoint>(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(i)));
  return out;
}

std::vector<ExponentSample> degree_samples(const std::vector<FactorPoint>& points) {
  std::vector<ExponentSample> out;
  for (const auto& p : points) out.push_back({static_cast<double>(p.n), p.value});
  return out;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string extremal_csv(const std::vector<ExtremalRow>& rows) {
  std::string out = "index,degree,cusp_derivative,norm,ratio,ratio_over_expected\r\n";
  for (const auto& r : rows)
    out += std::to_string(r.index) + "," + std::to_string(r.degree) + "," + format_real(r.cusp_derivative) + "," +
           format_real(r.norm) + "," + format_real(r.ratio) + "," + format_real(r.ratio_over_expected) + "\r\n";
  return out;
}

std::string factor_csv(const std::vector<FactorPoint>& points) {
  std::string out = "n,value,method\r\n";
  for (const auto& p : points) out += std::to_string(p.n) + "," + format_real(p.value) + "," + to_string(p.method) + "\r\n";
  return out;
}

bool VerifyReport::all_passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : criteria)
    arr.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"measured", c.measured}});
  return {{"all_passed", all_passed()}, {"criteria", arr}};
}

namespace {

std::vector<int> range(int a, int b) {
  std::vector<int> v;
  for (int i = a; i <= b; ++i) v.push_back(i);
  return v;
}

BivariatePoly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int d = deg(rng);
  BivariatePoly p(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) p.at(i, j) = coef(rng);
  return p;
}

bool in_window(double slope, const SlopeWindow& w) { return slope >= w.slope_min && slope <= w.slope_max; }

nlohmann::json window_json(const SlopeWindow& w) { return {w.slope_min, w.slope_max}; }

CriterionResult geometry(const LabConfig& cfg) {
  CriterionResult r{1, "geometry exactness", true, {}};
  const double area = quad_rule(Domain::koornwinder(), 0).total_weight();
  const double area_err = std::abs(area - 4.0 / 3.0) / (4.0 / 3.0);
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  const auto weight = BivariatePoly::y() - BivariatePoly::x();  // v - u
  for (int s = 0; s < cfg.pullback_samples; ++s) {
    const auto p = random_poly(rng, cfg.pullback_max_degree);
    const int d = p.degree_or_zero();
    const auto omega = quad_rule(Domain::koornwinder(), d);
    const auto simplex = quad_rule(Domain::simplex_weighted(), 2 * d + 1, {.weighted = false});
    const auto q = multiply(pullback_symmetric(p), weight);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) lhs += omega.weights[i] * p.eval(omega.nodes[i].x, omega.nodes[i].y);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      rhs += simplex.weights[i] * q.eval(simplex.nodes[i].x, simplex.nodes[i].y);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  r.passed = area_err <= cfg.area_rel_tol && worst <= cfg.pullback_rel_tol;
  r.measured = {{"area", area},
                {"area_rel_error", area_err},
                {"pullback_worst_rel_error", worst},
                {"samples", cfg.pullback_samples}};
  return r;
}

CriterionResult identities(const LabConfig& cfg) {
  CriterionResult r{2, "pullback derivative identities", true, {}};
  std::mt19937_64 rng(cfg.seed + 1);
  const auto weight = BivariatePoly::y() - BivariatePoly::x();
  double worst_y = 0.0, worst_x = 0.0;
  for (int s = 0; s < cfg.identity_samples; ++s) {
    const auto p = random_poly(rng, cfg.identity_max_degree);
    const auto ly = pullback_derivative_y(p);
    const auto ry = multiply(weight, pullback_symmetric(partial(p, Axis::y)));
    const auto lx = pullback_derivative_x(p);
    const auto rx = multiply(weight, pullback_symmetric(partial(p, Axis::x)));
    const double sy = std::max({1.0, ly.max_abs_coeff(), ry.max_abs_coeff()});
    const double sx = std::max({1.0, lx.max_abs_coeff(), rx.max_abs_coeff()});
    worst_y = std::max(worst_y, max_coeff_difference(ly, ry) / sy);
    worst_x = std::max(worst_x, max_coeff_difference(lx, rx) / sx);
  }
  r.passed = worst_y <= cfg.identity_abs_tol && worst_x <= cfg.identity_abs_tol;
  r.measured = {{"worst_scaled_error_y", worst_y}, {"worst_scaled_error_x", worst_x}, {"samples", cfg.identity_samples}};
  return r;
}

CriterionResult sharpness_bound(const LabConfig& cfg, int threads) {
  CriterionResult r{3, "sharpness lower bound (sup norm)", true, {}};
  const auto settings = cfg.norm_settings(1);
  nlohmann::json rows = nlohmann::json::array();
  double worst_cusp = 0.0, max_sup_over_k = 0.0, min_ratio_over_bound = std::numeric_limits<double>::infinity();
  for (const auto kind : {FamilyKind::Pk, FamilyKind::Qk}) {
    const auto sweep = sweep_extremal({kind, range(1, cfg.sharpness_k_max), NormOrder::sup()}, settings, threads);
    for (const auto& row : sweep) {
      const double k = row.index;
      const double expected_cusp = kind == FamilyKind::Pk ? std::pow(k, 5) / 4.0 : std::pow(k, 5);
      const double bound = kind == FamilyKind::Pk ? std::pow(k, 4) / 4.0 : std::pow(k, 4);
      const double cusp_err = std::abs(row.cusp_derivative - expected_cusp) / expected_cusp;
      const bool ok = cusp_err <= cfg.cusp_rel_tol && row.norm <= k * (1.0 + cfg.sup_bound_rel_tol) &&
                      row.ratio >= bound * (1.0 - cfg.sup_bound_rel_tol - cfg.cusp_rel_tol);
      r.passed = r.passed && ok;
      worst_cusp = std::max(worst_cusp, cusp_err);
      max_sup_over_k = std::max(max_sup_over_k, row.norm / k);
      min_ratio_over_bound = std::min(min_ratio_over_bound, row.ratio / bound);
      rows.push_back({{"family", kind == FamilyKind::Pk ? "pk" : "qk"},
                      {"k", row.index},
                      {"cusp_rel_error", cusp_err},
                      {"grid_sup", row.norm},
                      {"ratio", row.ratio},
                      {"ratio_over_bound", row.ratio / bound},
                      {"ok", ok}});
    }
  }
  r.measured = {{"worst_cusp_rel_error", worst_cusp},
                {"max_grid_sup_over_k", max_sup_over_k},
                {"min_ratio_over_bound", min_ratio_over_bound},
                {"rows", rows}};
  return r;
}

double sharpness_slope(FamilyKind kind, const SlopeWindow& w, const NormSettings& settings, int threads) {
  const auto rows = sweep_extremal({kind, range(w.n_min, w.n_max), NormOrder::sup()}, settings, threads);
  std::vector<ExponentSample> samples;
  for (const auto& row : rows) samples.push_back({static_cast<double>(row.degree), row.ratio});
  return fit_exponent(samples).slope;
}

CriterionResult sharpness_fit(const LabConfig& cfg, int threads) {
  CriterionResult r{4, "sharpness exponent fit (sup norm)", true, {}};
  const auto base = cfg.norm_settings(1);
  auto doubled = base;
  if (doubled.grid.side_override > 0)
    doubled.grid.side_override *= 2;
  else
    doubled.grid.density = std::max(1, doubled.grid.density) * 2;
  const double slope = sharpness_slope(FamilyKind::Pk, cfg.sharpness_fit, base, threads);
  const double slope2 = sharpness_slope(FamilyKind::Pk, cfg.sharpness_fit, doubled, threads);
  const double q_slope = sharpness_slope(FamilyKind::Qk, cfg.sharpness_fit, base, threads);
  const double change = std::abs(slope2 - slope);
  r.passed = in_window(slope, cfg.sharpness_fit) && change < cfg.sharpness_stability;
  r.measured = {{"pk_slope", slope},
                {"pk_slope_doubled_grid", slope2},
                {"stability_change", change},
                {"window", window_json(cfg.sharpness_fit)},
                {"qk_slope_informational", q_slope}};
  return r;
}

bool nondecreasing(const std::vector<FactorPoint>& pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].value < pts[i - 1].value * (1.0 - 1e-9)) return false;
  return true;
}

nlohmann::json values_json(const std::vector<FactorPoint>& pts) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : pts) a.push_back({p.n, p.value});
  return a;
}

CriterionResult koornwinder_l2(const LabConfig& cfg, int threads) {
  CriterionResult r{5, "Koornwinder L2 upper-bound exponent", true, {}};
  const auto& w = cfg.koornwinder_fit;
  const auto pts = sweep_factor(Domain::koornwinder(), Axis::y, range(w.n_min, w.n_max), threads);
  const auto fit = fit_exponent(degree_samples(pts));
  const bool mono = nondecreasing(pts);
  r.passed = in_window(fit.slope, w) && mono;
  r.measured = {{"fit", to_json(fit)}, {"window", window_json(w)}, {"nondecreasing", mono}, {"values", values_json(pts)}};
  return r;
}

CriterionResult simplex_l2(const LabConfig& cfg, int threads) {
  CriterionResult r{6, "weighted simplex L2 exponent", true, {}};
  const auto& w = cfg.simplex_fit;
  nlohmann::json m;
  for (const auto axis : {Axis::x, Axis::y}) {
    const auto pts = sweep_factor(Domain::simplex_weighted(), axis, range(w.n_min, w.n_max), threads);
    const auto fit = fit_exponent(degree_samples(pts));
    r.passed = r.passed && in_window(fit.slope, w);
    m[axis == Axis::x ? "axis_u" : "axis_v"] = {{"fit", to_json(fit)}, {"values", values_json(pts)}};
  }
  m["window"] = window_json(w);
  r.measured = m;
  return r;
}

CriterionResult schur(const LabConfig& cfg, int threads) {
  CriterionResult r{7, "weighted Schur factor", true, {}};
  const auto& w = cfg.schur_fit;
  const double v0 = l2_schur_factor(0).value;
  const double err0 = std::abs(v0 - std::sqrt(5.0 / 6.0));
  const auto degrees = range(w.n_min, w.n_max);
  std::vector<FactorPoint> pts(degrees.size());
  parallel_for(degrees.size(), threads, [&](std::size_t i) { pts[i] = l2_schur_factor(degrees[i]); });
  const auto fit = fit_exponent(degree_samples(pts));
  r.passed = err0 <= cfg.schur_n0_tol && fit.slope <= w.slope_max;
  r.measured = {{"value_n0", v0}, {"n0_abs_error", err0}, {"fit", to_json(fit)}, {"slope_max", w.slope_max},
                {"values", values_json(pts)}};
  return r;
}

CriterionResult delta_l(const LabConfig& cfg, int threads) {
  CriterionResult r{8, "Delta_l exponent 2l", true, {}};
  const auto& w = cfg.delta_fit;
  const double mu = cfg.delta_alpha * cfg.delta_p - 2.0 + cfg.delta_p / 2.0;
  const bool regime = 2.0 * (cfg.delta_p + 1.0) * cfg.delta_l < mu;
  const auto rows = sweep_extremal({FamilyKind::Wn, range(w.n_min, w.n_max), NormOrder::finite(cfg.delta_p),
                                    cfg.delta_alpha, cfg.delta_l},
                                   cfg.norm_settings(1), threads);
  std::vector<ExponentSample> samples;
  for (const auto& row : rows) samples.push_back({static_cast<double>(row.index + 1), row.ratio});
  const auto fit = fit_exponent(samples);
  r.passed = regime && in_window(fit.slope, w);
  r.measured = {{"fit", to_json(fit)},
                {"window", window_json(w)},
                {"mu_alpha_p", mu},
                {"two_p_plus_one_l", 2.0 * (cfg.delta_p + 1.0) * cfg.delta_l},
                {"asymptotic_regime", regime}};
  return r;
}

CriterionResult bernoulli(const LabConfig& cfg) {
  CriterionResult r{9, "Bernoulli sandwich", true, {}};
  int violations = 0;
  const int m = std::max(cfg.bernoulli_samples, 2);
  for (const int l : cfg.bernoulli_ls)
    for (int i = 0; i < m; ++i) {
      const double x = static_cast<double>(i) / (m - 1);
      const auto b = bernoulli_bounds(x, l);
      const double slack = 4.0 * std::numeric_limits<double>::epsilon();
      if (b.lower > b.middle * (1.0 + slack) + 1e-300 || b.middle > b.upper * (1.0 + slack) + 1e-300) ++violations;
    }
  r.passed = violations == 0;
  r.measured = {{"samples_per_l", m}, {"l_values", cfg.bernoulli_ls}, {"violations", violations}};
  return r;
}

CriterionResult oracle_equivalence(const LabConfig& cfg) {
  CriterionResult r{10, "oracle equivalence", true, {}};
  double worst_factor = 0.0, worst_witness = 0.0, worst_schur = 0.0;
  for (const auto& domain : {Domain::koornwinder(), Domain::simplex_weighted()})
    for (const auto axis : {Axis::x, Axis::y})
      for (int n = 1; n <= cfg.oracle_n_max; ++n) {
        const double fast = l2_markov_factor(n, axis, domain).value;
        const double ref = oracle::l2_markov_factor(n, axis, domain);
        worst_factor = std::max(worst_factor, std::abs(fast - ref) / ref);
        const auto witness = l2_markov_witness(n, axis, domain);
        const double ratio = markov_ratio(witness.polynomial, axis, {NormOrder::finite(2.0), domain, true});
        worst_witness = std::max(worst_witness, std::abs(ratio - witness.factor.value) / witness.factor.value);
      }
  for (int n = 0; n <= cfg.oracle_n_max; ++n) {
    const double fast = l2_schur_factor(n).value;
    const double ref = oracle::l2_schur_factor(n);
    worst_schur = std::max(worst_schur, std::abs(fast - ref) / ref);
  }
  r.passed = worst_factor <= cfg.oracle_rel_tol && worst_witness <= cfg.oracle_rel_tol && worst_schur <= cfg.oracle_rel_tol;
  r.measured = {{"worst_factor_rel_error", worst_factor},
                {"worst_witness_rel_error", worst_witness},
                {"worst_schur_rel_error", worst_schur},
                {"n_max", cfg.oracle_n_max}};
  return r;
}

// Everything a verify run computes in parallel, serialized.
std::string parallel_fingerprint(const LabConfig& cfg, int threads) {
  const auto settings = cfg.norm_settings(threads);
  std::string out;
  out += extremal_csv(sweep_extremal({FamilyKind::Pk, range(1, 12), NormOrder::sup()}, settings, threads));
  out += extremal_csv(sweep_extremal({FamilyKind::Qk, range(1, 12), NormOrder::finite(2.0)}, settings, threads));
  out += extremal_csv(sweep_extremal(
      {FamilyKind::Wn, range(8, 20), NormOrder::finite(cfg.delta_p), cfg.delta_alpha, cfg.delta_l}, settings, threads));
  out += factor_csv(sweep_factor(Domain::koornwinder(), Axis::y, range(1, 8), threads));
  out += factor_csv(sweep_factor(Domain::simplex_weighted(), Axis::x, range(1, 8), threads));
  out += format_real(lp_norm([](double x, double y) { return x * y - 0.3; }, 2,
                             {NormOrder::sup(), Domain::delta_l(3), true}, settings));
  return out;
}

CriterionResult determinism(const LabConfig& cfg) {
  CriterionResult r{11, "determinism across worker counts", true, {}};
  const auto a = parallel_fingerprint(cfg, cfg.determinism_threads_a);
  const auto b = parallel_fingerprint(cfg, cfg.determinism_threads_b);
  r.passed = a == b;
  r.measured = {{"threads", {cfg.determinism_threads_a, cfg.determinism_threads_b}},
                {"bytes_compared", a.size()},
                {"identical", a == b}};
  return r;
}

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "geometry exactness";
    case 2: return "pullback derivative identities";
    case 3: return "sharpness lower bound (sup norm)";
    case 4: return "sharpness exponent fit (sup norm)";
    case 5: return "Koornwinder L2 upper-bound exponent";
    case 6: return "weighted simplex L2 exponent";
    case 7: return "weighted Schur factor";
    case 8: return "Delta_l exponent 2l";
    case 9: return "Bernoulli sandwich";
    case 10: return "oracle equivalence";
    case 11: return "determinism across worker counts";
  }
  return "unknown criterion";
}

}  // namespace

CriterionResult run_criterion(int id, const LabConfig& config, int threads) {
  try {
    switch (id) {
      case 1: return geometry(config);
      case 2: return identities(config);
      case 3: return sharpness_bound(config, threads);
      case 4: return sharpness_fit(config, threads);
      case 5: return koornwinder_l2(config, threads);
      case 6: return simplex_l2(config, threads);
      case 7: return schur(config, threads);
      case 8: return delta_l(config, threads);
      case 9: return bernoulli(config);
      case 10: return oracle_equivalence(config);
      case 11: return determinism(config);
      default: break;
    }
  } catch (const std::exception& e) {
    return {id, criterion_name(id), false, {{"error", e.what()}}};
  }
  return {id, criterion_name(id), false, {{"error", "no such criterion"}}};
}

VerifyReport verify_all(const LabConfig& config, int threads) {
  VerifyReport report;
  for (const int id : config.criteria) report.criteria.push_back(run_criterion(id, config, threads));
  return report;
}

}  // namespace markov
