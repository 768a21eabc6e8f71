#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace semifactor::cli {

struct CheckResult {
  std::string name;
  std::string module;
  nlohmann::json inputs;
  std::string expected;
  std::string actual;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  /// Runs only checks whose module or name contains this text.
  std::string filter;
  unsigned threads = 0;
  /// Called after each check, e.g. to print progress.
  std::function<void(const CheckResult&)> on_result;
};

/// The acceptance suite, one check per criterion.
VerificationReport run_verification(const VerifyOptions& options = {});

}  // namespace semifactor::cli
