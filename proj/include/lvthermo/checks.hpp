#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lvthermo {

struct CheckResult {
  std::string id;    // "1".."13" for acceptance criteria, "2b" etc. for supplementary lines
  std::string name;
  bool passed = false;
  bool supplementary = false;  // reported, never affects the exit status
  std::string detail;
};

struct CheckOptions {
  unsigned threads = 0;  // 0: default_thread_count()
};

struct CheckEntry {
  std::string id;
  std::function<std::vector<CheckResult>(const CheckOptions&)> run;
};

/// Every acceptance criterion and its supplementary lines, in order.
[[nodiscard]] const std::vector<CheckEntry>& check_registry();

/// Runs the entries whose id is in `only` (all when empty). Exceptions from a
/// check become a failed line carrying the error text.
[[nodiscard]] std::vector<CheckResult> run_checks(const CheckOptions& options,
                                                  const std::vector<std::string>& only = {},
                                                  const std::function<void(const CheckResult&)>& on_result = {});

/// "PASS  7  name  detail" style line.
[[nodiscard]] std::string format_result(const CheckResult& r);

}  // namespace lvthermo
