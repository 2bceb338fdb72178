#include "markov/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "markov/classical.hpp"
#include "markov/errors.hpp"
#include "markov/parallel.hpp"

namespace markov {

NormOrder NormOrder::finite(double p) {
  if (!(p >= 1.0)) throw DomainError("norm index p must be >= 1");
  return NormOrder(p);
}

NormOrder NormOrder::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "sup") return sup();
  double p = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, p);
  if (ec != std::errc() || ptr != end) throw DomainError("cannot parse norm index '" + text + "'");
  if (std::isinf(p)) return sup();
  return finite(p);
}

bool NormOrder::is_even_integer() const {
  return !is_sup_ && p_ == std::floor(p_) && std::fmod(p_, 2.0) == 0.0;
}

std::string NormOrder::to_string() const {
  if (is_sup_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", p_);
  return buf;
}

namespace {

constexpr std::size_t kChunk = 4096;

// Weighted sum of |f|^p in fixed-size chunks; the chunking does not depend
// on the worker count, so the result is bit-identical for any thread count.
double weighted_power_sum(const QuadratureRule& rule, const PointFunction& f, double p, int threads) {
  const std::size_t chunks = (rule.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  const bool square = p == 2.0;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t lo = c * kChunk, hi = std::min(rule.size(), lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double v = f(rule.nodes[i].x, rule.nodes[i].y);
      s += rule.weights[i] * (square ? v * v : std::pow(std::abs(v), p));
    }
    partial[c] = s;
  });
  double total = 0.0;
  for (const double s : partial) total += s;
  return total;
}

double grid_max(const std::vector<Point>& pts, const PointFunction& f, int threads) {
  const std::size_t chunks = (pts.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t lo = c * kChunk, hi = std::min(pts.size(), lo + kChunk);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(f(pts[i].x, pts[i].y)));
    partial[c] = m;
  });
  return partial.empty() ? 0.0 : *std::max_element(partial.begin(), partial.end());
}

}  // namespace

double lp_norm(const PointFunction& f, int degree, const NormSpec& spec, const NormSettings& settings) {
  degree = std::max(degree, 0);
  if (spec.order.is_sup()) return grid_max(sup_grid(spec.domain, degree, settings.grid), f, settings.threads);

  QuadratureOptions qopt = settings.quadrature;
  qopt.weighted = spec.weighted;
  const double p = spec.order.p();
  QuadratureRule rule;
  if (spec.order.is_even_integer()) {
    const int exactness = static_cast<int>(p) * degree + settings.extra_exactness;
    rule = quad_rule(spec.domain, exactness, qopt);
  } else {
    rule = composite_rule(spec.domain, settings.panels_per_degree * std::max(degree, 1), settings.points_per_panel,
                          qopt);
  }
  return std::pow(weighted_power_sum(rule, f, p, settings.threads), 1.0 / p);
}

double lp_norm(const BivariatePoly& poly, const NormSpec& spec, const NormSettings& settings) {
  return lp_norm([&poly](double x, double y) { return poly.eval(x, y); }, poly.degree_or_zero(), spec, settings);
}

double markov_ratio(const BivariatePoly& poly, Axis axis, const NormSpec& spec, const NormSettings& settings) {
  const double den = lp_norm(poly, spec, settings);
  if (!(den > 0.0)) throw DomainError("markov_ratio: polynomial has zero norm");
  const auto d = partial(poly, axis);
  if (d.is_zero()) return 0.0;
  return lp_norm(d, spec, settings) / den;
}

std::vector<double> jacobi_zeros_positive(int n, double alpha) {
  const int expected = n / 2;
  std::vector<double> zeros;
  if (expected == 0) return zeros;
  auto f = [&](double x) { return jacobi_P(n, alpha, alpha, x); };
  // x_i = sin(pi/2 * i/M) clusters samples near 1, where the zeros crowd.
  for (int m = 32 * (n + 1); m <= 32 * (n + 1) * 64; m *= 2) {
    zeros.clear();
    double x0 = std::sin(std::numbers::pi / 2 * (n % 2 == 1 ? 1.0 / m : 0.0));
    double f0 = f(x0);
    for (int i = (n % 2 == 1 ? 2 : 1); i <= m; ++i) {
      const double x1 = i == m ? 1.0 : std::sin(std::numbers::pi / 2 * static_cast<double>(i) / m);
      const double f1 = f(x1);
      if (f1 == 0.0) {
        zeros.push_back(x1);
      } else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
        double a = x0, b = x1, fa = f0;
        for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
          const double c = 0.5 * (a + b);
          const double fc = f(c);
          if (fc == 0.0) {
            a = b = c;
            break;
          }
          if ((fc < 0.0) == (fa < 0.0)) {
            a = c;
            fa = fc;
          } else {
            b = c;
          }
        }
        zeros.push_back(0.5 * (a + b));
      }
      x0 = x1;
      f0 = f1;
    }
    if (static_cast<int>(zeros.size()) == expected) return zeros;
  }
  throw ConvergenceError("jacobi_zeros_positive: could not isolate all zeros of P_" + std::to_string(n));
}

namespace {

struct Panel {
  double a, b;
  bool singular_a, singular_b;
};

// Pieces of [a, b] refined geometrically toward the flagged ends.
std::vector<std::pair<double, double>> graded_pieces(const Panel& p) {
  constexpr double kRatio = 0.2;
  constexpr int kLevels = 22;
  std::vector<std::pair<double, double>> out;
  auto grade_toward_a = [&](double a, double b) {
    // [a + (b-a) r^(k+1), a + (b-a) r^k] for k = 0..levels-1, then [a, a + (b-a) r^levels]
    double hi = b;
    for (int k = 0; k < kLevels; ++k) {
      const double lo = a + (hi - a) * kRatio;
      out.emplace_back(lo, hi);
      hi = lo;
    }
    out.emplace_back(a, hi);
  };
  auto grade_toward_b = [&](double a, double b) {
    double lo = a;
    for (int k = 0; k < kLevels; ++k) {
      const double hi = b - (b - lo) * kRatio;
      out.emplace_back(lo, hi);
      lo = hi;
    }
    out.emplace_back(lo, b);
  };
  if (p.singular_a && p.singular_b) {
    const double mid = 0.5 * (p.a + p.b);
    grade_toward_a(p.a, mid);
    grade_toward_b(mid, p.b);
  } else if (p.singular_a) {
    grade_toward_a(p.a, p.b);
  } else if (p.singular_b) {
    grade_toward_b(p.a, p.b);
  } else {
    constexpr int kSplit = 4;
    const double h = (p.b - p.a) / kSplit;
    for (int k = 0; k < kSplit; ++k) out.emplace_back(p.a + k * h, k + 1 == kSplit ? p.b : p.a + (k + 1) * h);
  }
  return out;
}

bool is_integer(double v) { return v == std::floor(v); }

}  // namespace

double wn_1d_integral(int n, double alpha, double p, double beta, int l) {
  if (n < 0) throw DomainError("wn_1d_integral: n must be >= 0");
  if (!(alpha > -1.0)) throw DomainError("wn_1d_integral: alpha must exceed -1");
  if (!(p >= 1.0)) throw DomainError("wn_1d_integral: p must be >= 1");
  if (!(beta > -1.0)) throw DomainError("wn_1d_integral: beta must exceed -1");
  if (l < 1 || l % 2 == 0) throw DomainError("wn_1d_integral: l must be a positive odd integer");

  // After x = t^l: |P_n(t^l)|^p (1 - t)^beta l t^(l-1) on [0, 1].
  auto integrand = [&](double t) {
    const double x = std::pow(t, l);
    const double pv = std::abs(jacobi_P(n, alpha, alpha, x));
    return std::pow(pv, p) * std::pow(1.0 - t, beta) * l * std::pow(t, l - 1);
  };

  std::vector<double> breaks{0.0};
  for (const double z : jacobi_zeros_positive(n, alpha)) breaks.push_back(std::pow(z, 1.0 / l));
  breaks.push_back(1.0);

  const bool even_p = is_integer(p) && std::fmod(p, 2.0) == 0.0;
  const bool polynomial = even_p && is_integer(beta) && beta >= 0.0;
  const bool kink_at_zeros = !even_p;

  double total = 0.0;
  if (polynomial) {
    const int degree = static_cast<int>(p) * n * l + static_cast<int>(beta) + l - 1;
    const auto rule = gauss_legendre_1d(std::max(1, (degree + 2) / 2));
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double a = breaks[k], b = breaks[k + 1], h = 0.5 * (b - a);
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * integrand(a + h * (rule.nodes[i] + 1.0));
      total += h * s;
    }
    return total;
  }

  const int order = std::clamp(n * l / 2 + 16, 24, 96);
  const auto rule = gauss_legendre_1d(order);
  const bool odd_n = n % 2 == 1;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    Panel panel{breaks[k], breaks[k + 1], false, false};
    panel.singular_a = (k == 0) ? (odd_n && kink_at_zeros) : kink_at_zeros;
    panel.singular_b = (k + 2 == breaks.size()) ? !is_integer(beta) : kink_at_zeros;
    for (const auto& [a, b] : graded_pieces(panel)) {
      const double h = 0.5 * (b - a);
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * integrand(a + h * (rule.nodes[i] + 1.0));
      total += h * s;
    }
  }
  return total;
}

double wn_ratio(int n, double alpha, int l, double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("wn_ratio: p must be finite and >= 1");
  const double num = wn_1d_integral(n, alpha, p, static_cast<double>(l), l);
  const double den = wn_1d_integral(n, alpha, p, (p + 1.0) * l, l);
  if (!(den > 0.0)) throw DomainError("wn_ratio: vanishing denominator");
  return std::pow((p + 1.0) * num / den, 1.0 / p);
}

BernoulliBounds bernoulli_bounds(double x, int l) {
  if (l < 1) throw DomainError("bernoulli_bounds: l must be positive");
  return {std::pow((1.0 - x) / l, l), std::pow(1.0 - std::pow(x, 1.0 / l), l), std::pow(1.0 - x, l)};
}

}  // namespace markov
