// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code is the number of failures.

#include <cstdio>
#include <string>
#include <vector>

#include "mtdirac/verify.hpp"

int main() {
  using mtdirac::verify::SuiteResult;
  const std::vector<SuiteResult> results = mtdirac::verify::run_all_acceptance();

  auto runtime_limit = [](const std::string& name) -> double {
    if (name == "exact-solution") return 10.0;
    if (name == "conservation") return 120.0;
    if (name == "alpha-domain") return 1.0;
    return 0.0;  // unbounded
  };

  int failures = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    const SuiteResult& r = results[i];
    const double limit = runtime_limit(r.name);
    const bool time_ok = limit <= 0.0 || r.runtime_seconds < limit;
    const bool pass = r.pass && time_ok;
    if (!pass) ++failures;
    std::printf("[%2zu/%2zu] %s %-18s stat=%.3e thr=%.3e time=%.2fs%s\n        %s\n", i + 1,
                results.size(), pass ? "PASS" : "FAIL", r.name.c_str(), r.statistic, r.threshold,
                r.runtime_seconds, time_ok ? "" : " (over budget)", r.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - static_cast<size_t>(failures),
              results.size());
  return failures;
}
