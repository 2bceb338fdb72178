#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "markov/norms.hpp"

namespace markov {

struct SlopeWindow {
  int n_min = 0;
  int n_max = 0;
  double slope_min = 0.0;
  double slope_max = 0.0;
};

/// Everything verify_all reads. Defaults are the acceptance
/// thresholds; `markovlab config --print-default` dumps them.
struct LabConfig {
  std::uint64_t seed = 20240229;

  // numerics
  GridOptions grid;
  std::size_t max_quadrature_nodes = 4'000'000;
  int extra_exactness = 0;
  int panels_per_degree = 4;
  int points_per_panel = 8;

  // 1: geometry and pullback consistency
  double area_rel_tol = 1e-12;
  double pullback_rel_tol = 1e-10;
  int pullback_samples = 100;
  int pullback_max_degree = 10;

  // 2: proof identities
  double identity_abs_tol = 1e-12;
  int identity_samples = 200;
  int identity_max_degree = 8;

  // 3 and 4: extremal sequences on Omega
  int sharpness_k_max = 20;
  double cusp_rel_tol = 1e-12;
  double sup_bound_rel_tol = 1e-9;
  SlopeWindow sharpness_fit{4, 20, 3.7, 4.3};
  double sharpness_stability = 0.05;

  // 5, 6, 7: L^2 eigen factors
  SlopeWindow koornwinder_fit{4, 14, 3.2, 4.3};
  SlopeWindow simplex_fit{4, 16, 1.6, 2.3};
  SlopeWindow schur_fit{4, 16, 0.0, 2.3};
  double schur_n0_tol = 1e-10;

  // 8: Delta_l
  int delta_l = 3;
  double delta_alpha = 14.0;
  double delta_p = 2.0;
  SlopeWindow delta_fit{8, 40, 5.5, 6.5};

  // 9: Bernoulli sandwich
  int bernoulli_samples = 1000;
  std::vector<int> bernoulli_ls{1, 3, 5};

  // 10: oracle equivalence
  int oracle_n_max = 3;
  double oracle_rel_tol = 1e-8;

  // 11: determinism
  int determinism_threads_a = 1;
  int determinism_threads_b = 8;

  /// Criteria to run, by number; empty runs nothing.
  std::vector<int> criteria{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};

  NormSettings norm_settings(int threads) const;
};

void to_json(nlohmann::json& j, const LabConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, LabConfig& c);

/// Throws std::runtime_error when the file cannot be read or parsed.
LabConfig load_config(const std::string& path);

}  // namespace markov
