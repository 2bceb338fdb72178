#pragma once

// Degree sweeps, log-log exponent fits and the claim-by-claim verifier.

#include <string>
#include <vector>

#include <json.hpp>

#include "markov/classical.hpp"
#include "markov/config.hpp"
#include "markov/spectral.hpp"

namespace markov {

struct ExponentSample {
  double n = 0.0;
  double value = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  double n_min = 0.0;
  double n_max = 0.0;
};

/// Least squares of log(value) on log(n). Needs >= 3 samples, all values
/// and abscissae positive.
FitResult fit_exponent(const std::vector<ExponentSample>& samples);

nlohmann::json to_json(const FitResult& fit);

/// Highest W_n index accepted by sweeps.
inline constexpr int kMaxWnIndex = 400;

struct ExtremalSweep {
  FamilyKind kind = FamilyKind::Pk;
  std::vector<int> indices;
  NormOrder order = NormOrder::sup();
  double alpha = 14.0;  // W_n only
  int l = 3;            // W_n only
};

struct ExtremalRow {
  int index = 0;
  int degree = 0;
  /// P_k, Q_k: closed-form cusp derivative. W_n: ||dW_n/dy||_p.
  double cusp_derivative = 0.0;
  double norm = 0.0;
  double ratio = 0.0;
  /// ratio / (k^4/4) for P_k, ratio / k^4 for Q_k, ratio / deg^(2l) for W_n.
  double ratio_over_expected = 0.0;
};

std::vector<ExtremalRow> sweep_extremal(const ExtremalSweep& sweep, const NormSettings& settings, int threads = 1);

std::vector<FactorPoint> to_factor_points(const std::vector<ExtremalRow>& rows);

/// Raised when a factor sweep hits a conditioning failure; carries every
/// point completed before the failing degree.
class SweepAborted : public std::runtime_error {
 public:
  SweepAborted(const std::string& what, std::vector<FactorPoint> completed)
      : std::runtime_error(what), completed_(std::move(completed)) {}
  const std::vector<FactorPoint>& completed() const { return completed_; }
  int largest_completed_n() const { return completed_.empty() ? -1 : completed_.back().n; }

 private:
  std::vector<FactorPoint> completed_;
};

/// l2_markov_factor for each degree, in input order. Degrees must be
/// strictly increasing.
std::vector<FactorPoint> sweep_factor(const Domain& domain, Axis axis, const std::vector<int>& degrees, int threads = 1);

std::vector<ExponentSample> degree_samples(const std::vector<FactorPoint>& points);

// CSV, RFC 4180 style with '.' decimals and 15 significant digits.
std::string format_real(double v);
std::string extremal_csv(const std::vector<ExtremalRow>& rows);
std::string factor_csv(const std::vector<FactorPoint>& points);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  nlohmann::json measured;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Runs one acceptance criterion by number (1..11).
CriterionResult run_criterion(int id, const LabConfig& config, int threads);

/// Runs config.criteria in order. Failures are report entries, not exceptions.
VerifyReport verify_all(const LabConfig& config, int threads = 1);

}  // namespace markov
