#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semifactor/cli.hpp"
#include "semifactor/verify.hpp"

using namespace semifactor;
using namespace semifactor::cli;
using nlohmann::json;

namespace {

struct SpecFlags {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::vector<std::int64_t> degrees;

  void attach(CLI::App* sub) {
    sub->add_option("--m", m, "rows of K_{m,n}")->required();
    sub->add_option("--n", n, "columns of K_{m,n}")->required();
    sub->add_option("--degrees", degrees, "row degrees s0,s1,...")->required()->delimiter(',');
  }
  FactorisationSpec spec() const { return make_spec(m, n, degrees); }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + cfg.output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2)); }

std::vector<BipartiteGraph> load_graphs(const std::vector<std::string>& paths) {
  std::vector<BipartiteGraph> graphs;
  for (const auto& p : paths) graphs.push_back(read_graph_file(p));
  return graphs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic counts of semiregular factorisations of K_{m,n}"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::uint64_t budget_states = cfg.budget.max_states;
  double budget_secs = cfg.budget.max_seconds;
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  app.add_option("--seed", cfg.seed, "Monte Carlo seed");
  app.add_option("--budget-states", budget_states, "state budget for exact counts")->check(CLI::PositiveNumber);
  app.add_option("--budget-secs", budget_secs, "time budget for exact counts")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output,-o", cfg.output, "write to this path instead of stdout");

  SpecFlags count_spec, asympt_spec, regime_spec, clt_spec;
  bool oracle = false, clt_exact = false;

  auto* count = app.add_subcommand("count", "exact number of factorisations");
  count_spec.attach(count);
  count->add_flag("--oracle", oracle, "use the brute-force enumerator");

  int latin_n = 0, latin_k = 0;
  auto* latin = app.add_subcommand("latin", "number of k x n Latin rectangles");
  latin->add_option("--n", latin_n)->required();
  latin->add_option("--k", latin_k)->required();

  auto* asympt = app.add_subcommand("asympt", "asymptotic formulas for a spec");
  asympt_spec.attach(asympt);

  RegimeParams params;
  auto* regimes = app.add_subcommand("regimes", "which density regimes apply");
  regime_spec.attach(regimes);
  regimes->add_option("--eps", params.eps);
  regimes->add_option("--c", params.c);
  regimes->add_option("--K", params.K);
  regimes->add_option("--margin", params.margin, "numeric stand-in for o(1)");
  regimes->add_option("--big-o", params.big_o, "numeric stand-in for O(1)");

  std::vector<std::string> graph_paths;
  std::string mode_name = "exact";
  std::uint64_t trials = 1'000'000;
  auto* disjoint = app.add_subcommand("disjoint", "probability that relabelled graphs are edge-disjoint");
  disjoint->add_option("--graph", graph_paths, "graph JSON file, repeat for each graph")->required()->expected(2, 64);
  disjoint->add_option("--mode", mode_name)->check(CLI::IsMember({"exact", "mc", "estimate"}));
  disjoint->add_option("--trials", trials)->check(CLI::PositiveNumber);

  std::string d_path, h_path;
  std::optional<int> t_max;
  bool allow_two_path = false, with_totals = false;
  auto* sw = app.add_subcommand("switch", "labeling classes and switching ratios");
  sw->add_option("--graph-d", d_path, "graph D file")->required();
  sw->add_option("--graph-h", h_path, "graph H file")->required();
  sw->add_option("--t-max", t_max);
  sw->add_flag("--allow-two-path", allow_two_path, "do not exclude labelings with a common 2-path");
  sw->add_flag("--totals", with_totals, "also count forward and reverse switchings");

  auto* clt = app.add_subcommand("clt", "lattice CLT estimate");
  clt_spec.attach(clt);
  clt->add_flag("--exact", clt_exact, "compare with the exact count");

  int fig_n = 0, fig_k = 0;
  auto* figure = app.add_subcommand("figure", "F(n,k)/R' table as CSV");
  figure->add_option("--n", fig_n)->required();
  figure->add_option("--k-max", fig_k);

  std::string filter;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--filter", filter, "only checks whose name or module contains this");
  verify->add_flag("--json", verify_json, "print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump() << '\n';
    return kValidation;
  }

  cfg.budget = budget_from_env(CountBudget{budget_states, budget_secs});
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (*count) {
      emit_json(cfg, cmd_count(cfg, count_spec.spec(), oracle));
    } else if (*latin) {
      emit_json(cfg, cmd_latin(cfg, latin_n, latin_k));
    } else if (*asympt) {
      emit_json(cfg, cmd_asympt(cfg, asympt_spec.spec()));
    } else if (*regimes) {
      emit_json(cfg, cmd_regimes(cfg, regime_spec.spec(), params));
    } else if (*disjoint) {
      emit_json(cfg, cmd_disjoint(cfg, load_graphs(graph_paths), parse_disjoint_mode(mode_name), trials));
    } else if (*sw) {
      const auto d = read_graph_file(d_path);
      const auto h = read_graph_file(h_path);
      if (cfg.format == "csv") {
        const auto table = classify_labelings(d, h, t_max, !allow_two_path, cfg.threads);
        emit(cfg, switch_csv(switch_rows(d, h, table)));
      } else {
        emit_json(cfg, cmd_switch(cfg, d, h, t_max, !allow_two_path, with_totals));
      }
    } else if (*clt) {
      emit_json(cfg, cmd_clt(cfg, clt_spec.spec(), clt_exact));
    } else if (*figure) {
      const auto rows = figure_rows(cfg, fig_n, fig_k > 0 ? fig_k : fig_n - 1);
      emit(cfg, figure_csv(rows));
    } else if (*verify) {
      VerifyOptions options;
      options.filter = filter;
      options.threads = cfg.threads;
      if (!verify_json) {
        options.on_result = [](const CheckResult& c) {
          std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << format_number(c.seconds) << " s): "
                    << c.actual << std::endl;
        };
      }
      const auto report = run_verification(options);
      if (verify_json) {
        auto j = report.to_json();
        j["config"] = config_json(cfg);
        emit_json(cfg, j);
      }
      return report.passed() ? kOk : kVerifyFailed;
    }
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return kOk;
}
