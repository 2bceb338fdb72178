#include "markov/commands.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "markov/analysis.hpp"
#include "markov/errors.hpp"

namespace markov {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

struct Range {
  int a = 0;
  int b = 0;
};

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    std::size_t pa = 0, pb = 0;
    const std::string sa = text.substr(0, colon), sb = text.substr(colon + 1);
    Range r{std::stoi(sa, &pa), std::stoi(sb, &pb)};
    if (pa != sa.size() || pb != sb.size()) throw std::invalid_argument("trailing characters");
    if (r.b < r.a) throw std::invalid_argument("empty range");
    return r;
  } catch (const std::exception&) {
    throw DomainError("invalid range '" + text + "' (expected a:b with a <= b)");
  }
}

std::vector<int> expand(const Range& r) {
  std::vector<int> v;
  for (int i = r.a; i <= r.b; ++i) v.push_back(i);
  return v;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Collects outputs of one invocation and writes them, plus the manifest.
class OutputSink {
 public:
  OutputSink(std::ostream& out) : out_(out) {}

  void emit(const std::optional<std::string>& path, const std::string& text) {
    if (!path) {
      out_ << text;
      return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + *path + "'");
    f << text;
    if (!f) throw std::runtime_error("write failed for '" + *path + "'");
    outputs_.push_back({{"path", *path}, {"sha256", sha256_hex(text)}, {"bytes", text.size()}});
  }

  void write_manifest(const std::string& path, const std::string& command, const nlohmann::json& parameters,
                      const nlohmann::json& config) {
    nlohmann::json m{{"tool", "markovlab"},
                     {"tool_version", kToolVersion},
                     {"timestamp", utc_timestamp()},
                     {"command", command},
                     {"parameters", parameters},
                     {"config", config},
                     {"outputs", outputs_}};
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write manifest '" + path + "'");
    f << m.dump(2) << "\n";
  }

 private:
  std::ostream& out_;
  nlohmann::json outputs_ = nlohmann::json::array();
};

FamilyKind parse_family(const std::string& s) {
  if (s == "pk") return FamilyKind::Pk;
  if (s == "qk") return FamilyKind::Qk;
  if (s == "wn") return FamilyKind::Wn;
  throw DomainError("unknown family '" + s + "' (expected pk, qk or wn)");
}

Axis parse_axis(const std::string& s) {
  if (s == "x" || s == "u") return Axis::x;
  if (s == "y" || s == "v") return Axis::y;
  throw DomainError("unknown axis '" + s + "' (expected x or y)");
}

std::string fit_footer(const std::vector<ExponentSample>& samples) {
  if (samples.size() < 3) return "# fit: null (needs at least 3 points)\r\n";
  return "# fit: " + to_json(fit_exponent(samples)).dump() + "\r\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov factor lab: extremal sequences, L2 eigen factors and acceptance checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  int threads = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> manifest;
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::Range(1, 256));
  app.add_option("--seed", seed, "Seed for randomized property sampling");
  app.add_option("--manifest", manifest, "Write a JSON run manifest to this file");

  // area
  auto* area = app.add_subcommand("area", "Print the measure of a domain from its quadrature rule");
  std::string area_domain = "omega";
  int area_l = 1, area_exactness = 0;
  area->add_option("--domain", area_domain, "omega | simplex-weighted | delta-l");
  area->add_option("--l", area_l, "Odd exponent for delta-l");
  area->add_option("--exactness", area_exactness, "Polynomial exactness degree of the rule")->check(CLI::NonNegativeNumber);

  // extremal
  auto* extremal = app.add_subcommand("extremal", "Sweep an extremal family and write CSV");
  std::string family, ext_range, ext_p = "inf";
  double alpha = 14.0;
  int ext_l = 3;
  std::optional<std::string> ext_out;
  extremal->add_option("--family", family, "pk | qk | wn")->required();
  extremal->add_option("--range", ext_range, "Index range a:b")->required();
  extremal->add_option("--p", ext_p, "Norm index (number >= 1 or inf)");
  extremal->add_option("--alpha", alpha, "Jacobi parameter for wn");
  extremal->add_option("--l", ext_l, "Odd exponent for wn");
  extremal->add_option("--out", ext_out, "CSV output file (default stdout)");

  // factor
  auto* factor = app.add_subcommand("factor", "L2 Markov factors by generalized eigenproblem");
  std::string fac_domain = "omega", fac_axis = "y", fac_range;
  int fac_l = 1;
  std::optional<std::string> fac_out;
  factor->add_option("--domain", fac_domain, "omega | simplex-weighted | delta-l");
  factor->add_option("--l", fac_l, "Odd exponent for delta-l");
  factor->add_option("--axis", fac_axis, "x | y");
  factor->add_option("--n", fac_range, "Degree range a:b")->required();
  factor->add_option("--out", fac_out, "CSV output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  std::optional<std::string> config_path, json_path;
  verify->add_option("--config", config_path, "JSON configuration file");
  verify->add_option("--json", json_path, "Write the JSON report to this file");

  // config
  auto* config = app.add_subcommand("config", "Configuration helpers");
  bool print_default = false;
  config->add_flag("--print-default", print_default, "Print the default configuration as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto warn_seed = [&] {
    if (seed) err << "warning: --seed ignored; this command is deterministic\n";
  };

  OutputSink sink(out);
  try {
    if (*area) {
      warn_seed();
      const auto domain = Domain::parse(area_domain, area_l);
      const auto rule = quad_rule(domain, area_exactness);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12f\n", rule.total_weight());
      sink.emit(std::nullopt, buf);
      if (manifest)
        sink.write_manifest(*manifest, "area",
                            {{"domain", domain.name()}, {"l", area_l}, {"exactness", area_exactness}}, nullptr);
      return kExitOk;
    }

    if (*extremal) {
      warn_seed();
      ExtremalSweep sweep;
      sweep.kind = parse_family(family);
      sweep.indices = expand(parse_range(ext_range));
      sweep.order = NormOrder::parse(ext_p);
      sweep.alpha = alpha;
      sweep.l = ext_l;
      if (sweep.kind == FamilyKind::Wn) ExtremalFamily::wn(0, alpha, ext_l).validate();
      const LabConfig defaults;
      const auto rows = sweep_extremal(sweep, defaults.norm_settings(1), threads);
      std::vector<ExponentSample> samples;
      for (const auto& r : rows) samples.push_back({static_cast<double>(r.degree), r.ratio});
      sink.emit(ext_out, extremal_csv(rows) + fit_footer(samples));
      if (manifest)
        sink.write_manifest(*manifest, "extremal",
                            {{"family", family}, {"range", ext_range}, {"p", sweep.order.to_string()},
                             {"alpha", alpha}, {"l", ext_l}, {"threads", threads}},
                            defaults);
      return kExitOk;
    }

    if (*factor) {
      warn_seed();
      const auto domain = Domain::parse(fac_domain, fac_l);
      const auto axis = parse_axis(fac_axis);
      const auto degrees = expand(parse_range(fac_range));
      const nlohmann::json params{{"domain", domain.name()}, {"l", fac_l}, {"axis", fac_axis}, {"n", fac_range},
                                  {"threads", threads}};
      try {
        const auto points = sweep_factor(domain, axis, degrees, threads);
        std::vector<ExponentSample> samples;
        for (const auto& p : points)
          if (p.n > 0) samples.push_back({static_cast<double>(p.n), p.value});
        sink.emit(fac_out, factor_csv(points) + fit_footer(samples));
        if (manifest) sink.write_manifest(*manifest, "factor", params, nullptr);
        return kExitOk;
      } catch (const SweepAborted& e) {
        sink.emit(fac_out, factor_csv(e.completed()));
        err << "error: " << e.what() << "\n"
            << "largest completed n: " << e.largest_completed_n() << "\n";
        if (manifest) sink.write_manifest(*manifest, "factor", params, nullptr);
        return kExitCapacity;
      }
    }

    if (*verify) {
      LabConfig cfg;
      try {
        if (config_path) cfg = load_config(*config_path);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      if (seed) cfg.seed = *seed;
      const auto report = verify_all(cfg, threads);
      for (const auto& c : report.criteria)
        out << (c.passed ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << "\n";
      out << (report.all_passed() ? "all criteria passed" : "some criteria failed") << "\n";
      if (json_path) sink.emit(json_path, report.to_json().dump(2) + "\n");
      if (manifest) sink.write_manifest(*manifest, "verify", {{"threads", threads}}, cfg);
      return report.all_passed() ? kExitOk : kExitVerificationFailed;
    }

    if (*config) {
      if (!print_default) {
        err << config->help();
        return kExitUsage;
      }
      sink.emit(std::nullopt, nlohmann::json(LabConfig{}).dump(2) + "\n");
      return kExitOk;
    }
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ConditioningError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace markov
