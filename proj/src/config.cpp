#include "markov/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace markov {

NormSettings LabConfig::norm_settings(int threads) const {
  NormSettings s;
  s.grid = grid;
  s.quadrature.max_nodes = max_quadrature_nodes;
  s.extra_exactness = extra_exactness;
  s.panels_per_degree = panels_per_degree;
  s.points_per_panel = points_per_panel;
  s.threads = threads;
  return s;
}

namespace {

nlohmann::json window_json(const SlopeWindow& w) {
  return {{"n_min", w.n_min}, {"n_max", w.n_max}, {"slope_min", w.slope_min}, {"slope_max", w.slope_max}};
}

void read_window(const nlohmann::json& j, SlopeWindow& w) {
  for (const auto& [key, _] : j.items())
    if (key != "n_min" && key != "n_max" && key != "slope_min" && key != "slope_max")
      throw std::runtime_error("config: unknown fit-window key '" + key + "'");
  w.n_min = j.value("n_min", w.n_min);
  w.n_max = j.value("n_max", w.n_max);
  w.slope_min = j.value("slope_min", w.slope_min);
  w.slope_max = j.value("slope_max", w.slope_max);
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw std::runtime_error("config: unknown key '" + key + "' in " + where);
}

}  // namespace

void to_json(nlohmann::json& j, const LabConfig& c) {
  j = nlohmann::json{
      {"seed", c.seed},
      {"numerics",
       {{"sup_grid",
         {{"min_side", c.grid.min_side},
          {"per_degree", c.grid.per_degree},
          {"density", c.grid.density},
          {"side_override", c.grid.side_override}}},
        {"max_quadrature_nodes", c.max_quadrature_nodes},
        {"extra_exactness", c.extra_exactness},
        {"panels_per_degree", c.panels_per_degree},
        {"points_per_panel", c.points_per_panel}}},
      {"geometry",
       {{"area_rel_tol", c.area_rel_tol},
        {"pullback_rel_tol", c.pullback_rel_tol},
        {"pullback_samples", c.pullback_samples},
        {"pullback_max_degree", c.pullback_max_degree}}},
      {"identities",
       {{"abs_tol", c.identity_abs_tol}, {"samples", c.identity_samples}, {"max_degree", c.identity_max_degree}}},
      {"sharpness",
       {{"k_max", c.sharpness_k_max},
        {"cusp_rel_tol", c.cusp_rel_tol},
        {"sup_bound_rel_tol", c.sup_bound_rel_tol},
        {"fit", window_json(c.sharpness_fit)},
        {"stability", c.sharpness_stability}}},
      {"koornwinder_l2", window_json(c.koornwinder_fit)},
      {"simplex_l2", window_json(c.simplex_fit)},
      {"schur", {{"fit", window_json(c.schur_fit)}, {"n0_tol", c.schur_n0_tol}}},
      {"delta_l",
       {{"l", c.delta_l}, {"alpha", c.delta_alpha}, {"p", c.delta_p}, {"fit", window_json(c.delta_fit)}}},
      {"bernoulli", {{"samples", c.bernoulli_samples}, {"l_values", c.bernoulli_ls}}},
      {"oracle", {{"n_max", c.oracle_n_max}, {"rel_tol", c.oracle_rel_tol}}},
      {"determinism", {{"threads_a", c.determinism_threads_a}, {"threads_b", c.determinism_threads_b}}},
      {"criteria", c.criteria},
  };
}

void from_json(const nlohmann::json& j, LabConfig& c) {
  if (!j.is_object()) throw std::runtime_error("config: top level must be an object");
  reject_unknown(j,
                 {"seed", "numerics", "geometry", "identities", "sharpness", "koornwinder_l2", "simplex_l2", "schur",
                  "delta_l", "bernoulli", "oracle", "determinism", "criteria"},
                 "top level");
  c.seed = j.value("seed", c.seed);
  if (j.contains("numerics")) {
    const auto& n = j.at("numerics");
    reject_unknown(n, {"sup_grid", "max_quadrature_nodes", "extra_exactness", "panels_per_degree", "points_per_panel"},
                   "numerics");
    if (n.contains("sup_grid")) {
      const auto& g = n.at("sup_grid");
      reject_unknown(g, {"min_side", "per_degree", "density", "side_override"}, "numerics.sup_grid");
      c.grid.min_side = g.value("min_side", c.grid.min_side);
      c.grid.per_degree = g.value("per_degree", c.grid.per_degree);
      c.grid.density = g.value("density", c.grid.density);
      c.grid.side_override = g.value("side_override", c.grid.side_override);
    }
    c.max_quadrature_nodes = n.value("max_quadrature_nodes", c.max_quadrature_nodes);
    c.extra_exactness = n.value("extra_exactness", c.extra_exactness);
    c.panels_per_degree = n.value("panels_per_degree", c.panels_per_degree);
    c.points_per_panel = n.value("points_per_panel", c.points_per_panel);
  }
  if (j.contains("geometry")) {
    const auto& g = j.at("geometry");
    reject_unknown(g, {"area_rel_tol", "pullback_rel_tol", "pullback_samples", "pullback_max_degree"}, "geometry");
    c.area_rel_tol = g.value("area_rel_tol", c.area_rel_tol);
    c.pullback_rel_tol = g.value("pullback_rel_tol", c.pullback_rel_tol);
    c.pullback_samples = g.value("pullback_samples", c.pullback_samples);
    c.pullback_max_degree = g.value("pullback_max_degree", c.pullback_max_degree);
  }
  if (j.contains("identities")) {
    const auto& g = j.at("identities");
    reject_unknown(g, {"abs_tol", "samples", "max_degree"}, "identities");
    c.identity_abs_tol = g.value("abs_tol", c.identity_abs_tol);
    c.identity_samples = g.value("samples", c.identity_samples);
    c.identity_max_degree = g.value("max_degree", c.identity_max_degree);
  }
  if (j.contains("sharpness")) {
    const auto& g = j.at("sharpness");
    reject_unknown(g, {"k_max", "cusp_rel_tol", "sup_bound_rel_tol", "fit", "stability"}, "sharpness");
    c.sharpness_k_max = g.value("k_max", c.sharpness_k_max);
    c.cusp_rel_tol = g.value("cusp_rel_tol", c.cusp_rel_tol);
    c.sup_bound_rel_tol = g.value("sup_bound_rel_tol", c.sup_bound_rel_tol);
    if (g.contains("fit")) read_window(g.at("fit"), c.sharpness_fit);
    c.sharpness_stability = g.value("stability", c.sharpness_stability);
  }
  if (j.contains("koornwinder_l2")) read_window(j.at("koornwinder_l2"), c.koornwinder_fit);
  if (j.contains("simplex_l2")) read_window(j.at("simplex_l2"), c.simplex_fit);
  if (j.contains("schur")) {
    const auto& g = j.at("schur");
    reject_unknown(g, {"fit", "n0_tol"}, "schur");
    if (g.contains("fit")) read_window(g.at("fit"), c.schur_fit);
    c.schur_n0_tol = g.value("n0_tol", c.schur_n0_tol);
  }
  if (j.contains("delta_l")) {
    const auto& g = j.at("delta_l");
    reject_unknown(g, {"l", "alpha", "p", "fit"}, "delta_l");
    c.delta_l = g.value("l", c.delta_l);
    c.delta_alpha = g.value("alpha", c.delta_alpha);
    c.delta_p = g.value("p", c.delta_p);
    if (g.contains("fit")) read_window(g.at("fit"), c.delta_fit);
  }
  if (j.contains("bernoulli")) {
    const auto& g = j.at("bernoulli");
    reject_unknown(g, {"samples", "l_values"}, "bernoulli");
    c.bernoulli_samples = g.value("samples", c.bernoulli_samples);
    c.bernoulli_ls = g.value("l_values", c.bernoulli_ls);
  }
  if (j.contains("oracle")) {
    const auto& g = j.at("oracle");
    reject_unknown(g, {"n_max", "rel_tol"}, "oracle");
    c.oracle_n_max = g.value("n_max", c.oracle_n_max);
    c.oracle_rel_tol = g.value("rel_tol", c.oracle_rel_tol);
  }
  if (j.contains("determinism")) {
    const auto& g = j.at("determinism");
    reject_unknown(g, {"threads_a", "threads_b"}, "determinism");
    c.determinism_threads_a = g.value("threads_a", c.determinism_threads_a);
    c.determinism_threads_b = g.value("threads_b", c.determinism_threads_b);
  }
  c.criteria = j.value("criteria", c.criteria);
}

LabConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("cannot parse config file '" + path + "': " + e.what());
  }
  LabConfig c;
  try {
    from_json(j, c);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid config file '" + path + "': " + e.what());
  }
  return c;
}

}  // namespace markov
