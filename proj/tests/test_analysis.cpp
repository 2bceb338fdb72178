#include <doctest.h>

#include <cmath>

#include "markov/analysis.hpp"
#include "markov/errors.hpp"

using namespace markov;

namespace {
std::vector<int> range(int a, int b) {
  std::vector<int> v;
  for (int i = a; i <= b; ++i) v.push_back(i);
  return v;
}

std::vector<ExponentSample> drop_first(std::vector<ExponentSample> s) {
  s.erase(s.begin());
  return s;
}
}  // namespace

TEST_CASE("fit examples") {
  std::vector<ExponentSample> quartic;
  for (const double n : {2.0, 4.0, 8.0, 16.0}) quartic.push_back({n, std::pow(n, 4)});
  const auto f = fit_exponent(quartic);
  CHECK(f.slope == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(f.max_abs_residual < 1e-12);
  CHECK(f.n_min == 2.0);
  CHECK(f.n_max == 16.0);

  std::vector<ExponentSample> flat;
  for (int n = 1; n <= 6; ++n) flat.push_back({double(n), 7.0});
  CHECK(std::abs(fit_exponent(flat).slope) < 1e-12);
  CHECK(fit_exponent(flat).intercept == doctest::Approx(std::log(7.0)));

  std::vector<ExponentSample> wobbly;
  for (int n = 2; n <= 40; ++n) wobbly.push_back({double(n), std::pow(n, 4) * (1.0 + 0.01 * std::sin(n))});
  CHECK(std::abs(fit_exponent(wobbly).slope - 4.0) < 0.05);
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 2}}), DomainError);
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 0}, {3, 3}}), DomainError);
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, -1}, {3, 3}}), DomainError);
  CHECK_THROWS_AS(fit_exponent({{2, 1}, {2, 2}, {2, 3}}), DomainError);
}

TEST_CASE("extremal sweep examples") {
  LabConfig cfg;
  const auto settings = cfg.norm_settings(1);
  const auto p = sweep_extremal({FamilyKind::Pk, {1, 2, 3}, NormOrder::sup()}, settings);
  REQUIRE(p.size() == 3);
  CHECK(p[0].ratio == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(p[0].norm == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p[0].ratio_over_expected == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& r : p) {
    CHECK(r.degree == 5 * r.index - 4);
    CHECK(r.ratio >= std::pow(r.index, 4) / 4.0 * (1.0 - 1e-9));
  }
  const auto q = sweep_extremal({FamilyKind::Qk, {2}, NormOrder::sup()}, settings);
  CHECK(q[0].ratio >= 16.0);
  CHECK(q[0].cusp_derivative == doctest::Approx(32.0));
  const auto pts = to_factor_points(q);
  CHECK(pts[0].n == 7);
  CHECK(pts[0].method == FactorMethod::extremal_sequence);
}

TEST_CASE("extremal sweep limits") {
  LabConfig cfg;
  const auto settings = cfg.norm_settings(1);
  CHECK_THROWS_AS(sweep_extremal({FamilyKind::Pk, {kMaxExpandedIndex + 1}, NormOrder::sup()}, settings), CapacityError);
  CHECK_THROWS_AS(sweep_extremal({FamilyKind::Qk, {0}, NormOrder::sup()}, settings), CapacityError);
  CHECK_THROWS_AS(sweep_extremal({FamilyKind::Wn, {3}, NormOrder::sup()}, settings), DomainError);
  CHECK_THROWS_AS(sweep_extremal({FamilyKind::Wn, {kMaxWnIndex + 1}, NormOrder::finite(2.0)}, settings), CapacityError);
}

TEST_CASE("W_n sweep rows") {
  LabConfig cfg;
  const auto rows = sweep_extremal({FamilyKind::Wn, {0, 5, 12}, NormOrder::finite(2.0), 14.0, 3}, cfg.norm_settings(1));
  for (const auto& r : rows) {
    CHECK(r.degree == r.index + 1);
    CHECK(r.ratio == doctest::Approx(wn_ratio(r.index, 14.0, 3, 2.0)).epsilon(1e-14));
    CHECK(r.cusp_derivative / r.norm == doctest::Approx(r.ratio).epsilon(1e-12));
    CHECK(r.ratio_over_expected == doctest::Approx(r.ratio / std::pow(r.degree, 6.0)).epsilon(1e-14));
  }
}

TEST_CASE("W_n ratios grow like n^(2l)") {
  std::vector<ExponentSample> s;
  for (int n = 8; n <= 40; ++n) s.push_back({n + 1.0, wn_ratio(n, 14.0, 3, 2.0)});
  const auto fit = fit_exponent(s);
  CHECK(fit.slope >= 5.5);
  CHECK(fit.slope <= 6.5);
}

TEST_CASE("factor sweeps") {
  const auto pts = sweep_factor(Domain::koornwinder(), Axis::y, {1, 2, 3}, 2);
  REQUIRE(pts.size() == 3);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].n == static_cast<int>(i) + 1);
    CHECK(pts[i].value == l2_markov_factor(pts[i].n, Axis::y, Domain::koornwinder()).value);
  }
  CHECK_THROWS_AS(sweep_factor(Domain::koornwinder(), Axis::y, {3, 2}), DomainError);
  CHECK_THROWS_AS(sweep_factor(Domain::koornwinder(), Axis::y, {2, 2}), DomainError);
  CHECK_THROWS_AS(fit_exponent(degree_samples(sweep_factor(Domain::koornwinder(), Axis::y, {4}))), DomainError);
}

TEST_CASE("sweep aborted carries completed points") {
  const SweepAborted e("stop", {{1, 2.0, FactorMethod::eigen}, {2, 5.0, FactorMethod::eigen}});
  CHECK(e.largest_completed_n() == 2);
  CHECK(SweepAborted("stop", {}).largest_completed_n() == -1);
}

TEST_CASE("csv format") {
  CHECK(format_real(0.25) == "0.25");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_real(1234567.0) == "1234567");
  CHECK(format_real(1e-20) == "1e-20");
  const auto csv = factor_csv({{3, 1.5, FactorMethod::eigen}});
  CHECK(csv == "n,value,method\r\n3,1.5,eigen\r\n");
  const auto e = extremal_csv({{1, 1, 0.25, 1.0, 0.25, 1.0}});
  CHECK(e == "index,degree,cusp_derivative,norm,ratio,ratio_over_expected\r\n1,1,0.25,1,0.25,1\r\n");
}

TEST_CASE("sweeps are byte-identical across worker counts") {
  LabConfig cfg;
  for (const auto kind : {FamilyKind::Pk, FamilyKind::Qk}) {
    const ExtremalSweep sweep{kind, range(1, 10), NormOrder::sup()};
    CHECK(extremal_csv(sweep_extremal(sweep, cfg.norm_settings(1), 1)) ==
          extremal_csv(sweep_extremal(sweep, cfg.norm_settings(8), 8)));
  }
  CHECK(factor_csv(sweep_factor(Domain::simplex_weighted(), Axis::x, range(1, 10), 1)) ==
        factor_csv(sweep_factor(Domain::simplex_weighted(), Axis::x, range(1, 10), 8)));
}

TEST_CASE("acceptance fits are stable when the smallest n is dropped") {
  LabConfig cfg;
  auto check = [](const std::vector<ExponentSample>& s) {
    CHECK(std::abs(fit_exponent(s).slope - fit_exponent(drop_first(s)).slope) < 0.15);
  };
  std::vector<ExponentSample> pk;
  for (const auto& r : sweep_extremal({FamilyKind::Pk, range(4, 20), NormOrder::sup()}, cfg.norm_settings(1), 4))
    pk.push_back({double(r.degree), r.ratio});
  check(pk);
  check(degree_samples(sweep_factor(Domain::koornwinder(), Axis::y, range(4, 14), 4)));
  check(degree_samples(sweep_factor(Domain::simplex_weighted(), Axis::x, range(4, 16), 4)));
  std::vector<ExponentSample> schur, wn;
  for (int n = 4; n <= 16; ++n) schur.push_back({double(n), l2_schur_factor(n).value});
  check(schur);
  for (int n = 8; n <= 40; ++n) wn.push_back({n + 1.0, wn_ratio(n, 14.0, 3, 2.0)});
  check(wn);
}

TEST_CASE("verify with an empty criterion list") {
  LabConfig cfg;
  cfg.criteria.clear();
  const auto report = verify_all(cfg);
  CHECK(report.criteria.empty());
  CHECK(report.all_passed());
  CHECK(report.to_json()["criteria"].empty());
}

TEST_CASE("unknown criteria are failures, not exceptions") {
  LabConfig cfg;
  const auto r = run_criterion(42, cfg, 1);
  CHECK_FALSE(r.passed);
  CHECK(r.measured.contains("error"));
}

TEST_CASE("individual criteria on the default configuration") {
  LabConfig cfg;
  for (const int id : {1, 2, 3, 7, 8, 9, 10, 11}) {
    const auto r = run_criterion(id, cfg, 4);
    INFO("criterion " << id << ": " << r.measured.dump());
    CHECK(r.id == id);
    CHECK(r.passed);
  }
}

TEST_CASE("degraded sup grid fails the stability check") {
  LabConfig cfg;
  cfg.grid.side_override = 16;
  const auto r = run_criterion(4, cfg, 4);
  CHECK_FALSE(r.passed);
  CHECK(r.measured["stability_change"].get<double>() >= cfg.sharpness_stability);
}

TEST_CASE("verify reports do not depend on the worker count") {
  LabConfig cfg;
  cfg.criteria = {1, 3, 7, 8, 10};
  CHECK(verify_all(cfg, 1).to_json().dump() == verify_all(cfg, 8).to_json().dump());
}

TEST_CASE("config round trip") {
  LabConfig cfg;
  cfg.seed = 7;
  cfg.grid.density = 3;
  cfg.delta_fit.slope_max = 9.0;
  cfg.criteria = {2, 5};
  const nlohmann::json j = cfg;
  const auto back = j.get<LabConfig>();
  CHECK(nlohmann::json(back) == j);
  CHECK(back.grid.density == 3);
  CHECK(back.criteria == std::vector<int>{2, 5});
  CHECK_THROWS(nlohmann::json({{"bogus", 1}}).get<LabConfig>());
  CHECK_THROWS(nlohmann::json({{"numerics", {{"sup_grid", {{"dens", 2}}}}}}).get<LabConfig>());
  const auto partial = nlohmann::json({{"numerics", {{"sup_grid", {{"density", 2}}}}}}).get<LabConfig>();
  CHECK(partial.grid.density == 2);
  CHECK(partial.grid.min_side == 64);
  CHECK(partial.criteria.size() == 11);
}
