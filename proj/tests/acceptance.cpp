// Runs acceptance criteria 1-11 on the default configuration and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <map>

#include "markov/analysis.hpp"

using namespace markov;

int main() {
  const LabConfig cfg;
  const int threads = 8;
  // Wall-clock budgets in seconds; criteria without one are unbounded.
  const std::map<int, double> budget{{1, 1.0}, {2, 5.0}, {3, 30.0}, {5, 120.0}, {6, 120.0}, {7, 120.0}, {8, 60.0}};
  bool all = true;
  for (int id = 1; id <= 11; ++id) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = run_criterion(id, cfg, threads);
    std::string extra;
    if (id == 11) {
      // Whole reports from two worker counts, compared byte for byte.
      LabConfig rest = cfg;
      rest.criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
      const bool same = verify_all(rest, cfg.determinism_threads_a).to_json().dump() ==
                        verify_all(rest, cfg.determinism_threads_b).to_json().dump();
      r.passed = r.passed && same;
      extra = same ? ", reports identical" : ", reports differ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto b = budget.find(id);
    const bool in_time = b == budget.end() || secs < b->second;
    const bool ok = r.passed && in_time;
    all = all && ok;
    nlohmann::json m = r.measured;
    if (m.contains("rows")) m.erase("rows");
    if (m.contains("values")) m.erase("values");
    for (const char* k : {"axis_u", "axis_v"})
      if (m.contains(k)) m[k].erase("values");
    std::printf("%s criterion %2d: %s (%.3f s%s%s) %s\n", ok ? "PASS" : "FAIL", id, r.name.c_str(), secs,
                in_time ? "" : ", over budget", extra.c_str(), m.dump().c_str());
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
