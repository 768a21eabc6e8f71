#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semifactor/asympt.hpp"
#include "semifactor/error.hpp"
#include "semifactor/exact.hpp"
#include "semifactor/graph.hpp"
#include "semifactor/log_value.hpp"
#include "semifactor/switching.hpp"

namespace semifactor::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kBudget = 3, kVerifyFailed = 4 };

/// Options shared by every subcommand.
struct RunConfig {
  std::string subcommand;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  CountBudget budget;
  std::string format = "json";
  std::string output;
};

/// Applies SEMIFACTOR_BUDGET_SECS when set to a positive number.
CountBudget budget_from_env(CountBudget base);

ExitCode exit_code_for(const Error& e);
nlohmann::json error_json(const Error& e);

nlohmann::json to_json(const LogValue& v);
/// Used in every CSV we write: 12 significant digits, "C" style.
std::string format_number(double x);
/// {"subcommand", "threads", "seed", "budget_states", "budget_seconds"}.
nlohmann::json config_json(const RunConfig& cfg);

nlohmann::json cmd_count(const RunConfig& cfg, const FactorisationSpec& spec, bool oracle);
nlohmann::json cmd_latin(const RunConfig& cfg, int n, int k);
nlohmann::json cmd_asympt(const RunConfig& cfg, const FactorisationSpec& spec);
nlohmann::json cmd_regimes(const RunConfig& cfg, const FactorisationSpec& spec, const RegimeParams& params);

enum class DisjointMode { Exact, MonteCarlo, Estimate };
DisjointMode parse_disjoint_mode(const std::string& name);
nlohmann::json cmd_disjoint(const RunConfig& cfg, const std::vector<BipartiteGraph>& graphs,
                            DisjointMode mode, std::uint64_t trials);

struct SwitchTableRow {
  int t;
  BigCount L;
  double ratio_exact;  // NaN when L(t−1) = 0
  double ratio_predicted;
};

std::vector<SwitchTableRow> switch_rows(const BipartiteGraph& d, const BipartiteGraph& h,
                                        const LabelingClassTable& table);
nlohmann::json cmd_switch(const RunConfig& cfg, const BipartiteGraph& d, const BipartiteGraph& h,
                          std::optional<int> t_max, bool enforce_no_two_path, bool with_totals);
/// Header t,L_t,ratio_exact,ratio_predicted.
std::string switch_csv(const std::vector<SwitchTableRow>& rows);

nlohmann::json cmd_clt(const RunConfig& cfg, const FactorisationSpec& spec, bool exact);

struct FigureRow {
  int n;
  int k;
  double x;
  std::string F;  // decimal, empty when skipped
  double ln_F;
  double ln_rprime;
  double ratio;
  double reference;
  bool skipped;
};

std::vector<FigureRow> figure_rows(const RunConfig& cfg, int n, int k_max);
std::string figure_csv(const std::vector<FigureRow>& rows);

}  // namespace semifactor::cli
