#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "semifactor/cli.hpp"
#include "semifactor/parallel.hpp"
#include "semifactor/special.hpp"

namespace semifactor::cli {

using nlohmann::json;

namespace {

json rational_json(const Rational& q) { return {{"exact", to_string(q)}, {"value", q.get_d()}}; }

std::vector<Rational> factor_densities(const FactorisationSpec& spec) {
  auto all = spec.densities();
  return {all.begin() + 1, all.end()};
}

bool all_positive(const std::vector<Rational>& lams) {
  for (const auto& l : lams)
    if (l <= 0) return false;
  return !lams.empty();
}

json inequality_json(const Inequality& q) {
  return {{"condition", q.description},
          {"lhs", static_cast<double>(q.lhs)},
          {"rhs", static_cast<double>(q.rhs)},
          {"holds", q.holds}};
}

json regime_case_json(const RegimeCase& c) {
  json conditions = json::array();
  for (const auto& q : c.conditions) conditions.push_back(inequality_json(q));
  json out{{"case", c.id}, {"conditions", conditions}, {"verdict", c.satisfied ? "heuristic-pass" : "heuristic-fail"}};
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

}  // namespace

CountBudget budget_from_env(CountBudget base) {
  if (const char* raw = std::getenv("SEMIFACTOR_BUDGET_SECS")) {
    char* end = nullptr;
    const double secs = std::strtod(raw, &end);
    if (end != raw && *end == '\0' && secs > 0.0) base.max_seconds = secs;
  }
  return base;
}

ExitCode exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::BudgetExceeded ? kBudget : kValidation;
}

json error_json(const Error& e) {
  json out{{"error", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* b = dynamic_cast<const BudgetExceeded*>(&e)) out["states_explored"] = b->states_explored();
  return out;
}

json to_json(const LogValue& v) {
  const long double l = v.ln();
  json ln = std::isfinite(l) ? json(static_cast<double>(l)) : json(nullptr);
  return {{"ln", ln}, {"sign", v.sign()}, {"decimal_approx", v.decimal_approx()}};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

json config_json(const RunConfig& cfg) {
  return {{"subcommand", cfg.subcommand},
          {"threads", resolve_threads(cfg.threads)},
          {"seed", cfg.seed},
          {"budget_states", cfg.budget.max_states},
          {"budget_seconds", cfg.budget.max_seconds}};
}

json cmd_count(const RunConfig& cfg, const FactorisationSpec& spec, bool oracle) {
  json out{{"m", spec.m()}, {"n", spec.n()}, {"degrees", spec.row_degrees()}};
  if (oracle) {
    out["count"] = to_decimal(brute_force_count(spec));
    out["method"] = "brute_force";
  } else {
    const auto result = count_factorisations(spec, cfg.budget, cfg.threads);
    out["count"] = to_decimal(result.count);
    out["states_explored"] = result.states_explored;
    out["method"] = "dp";
  }
  out["config"] = config_json(cfg);
  return out;
}

json cmd_latin(const RunConfig& cfg, int n, int k) {
  const auto result = count_latin_rectangles(n, k, cfg.budget, cfg.threads);
  return {{"n", n},
          {"k", k},
          {"count", to_decimal(result.count)},
          {"states_explored", result.states_explored},
          {"config", config_json(cfg)}};
}

json cmd_asympt(const RunConfig& cfg, const FactorisationSpec& spec) {
  const std::int64_t m = spec.m();
  const std::int64_t n = spec.n();
  const auto& s = spec.row_degrees();
  const auto lams = factor_densities(spec);
  json out{{"m", m}, {"n", n}, {"degrees", s}};
  out["rprime"] = to_json(rprime(spec));
  if (m * n <= 400) {
    const auto ex = rprime_exact(spec);
    out["rprime_exact"] = {{"ratio", to_string(ex.ratio)}, {"base", to_string(ex.base)},
                           {"exponent", to_string(ex.exponent)}};
  }
  if (spec.k() >= 1 && spec.strict() && s[0] > 0) {
    out["rapprox_delta1"] = to_json(rapprox(spec, DeltaVariant::Delta1));
    out["rapprox_delta2"] = to_json(rapprox(spec, DeltaVariant::Delta2));
  }
  if (all_positive(lams)) {
    for (auto [name, variant] : {std::pair{"aggregate_silver", ExponentVariant::Silver},
                                 std::pair{"aggregate_mw", ExponentVariant::MW}}) {
      const auto agg = aggregate_exponent(m, n, lams, variant);
      out[name] = {{"telescoped", static_cast<double>(agg.telescoped)},
                   {"closed", static_cast<double>(agg.closed)}};
    }
    out["disjoint_estimate"] = to_json(disjoint_probability_estimate(m, n, lams));
    const std::vector<std::int64_t> sub(s.begin() + 1, s.end());
    out["ransplit_prediction"] = to_json(ransplit_prediction(m, n, sub));
  }
  const auto all = spec.densities();
  if (m >= 2 && spec.k() >= 1 && all_positive(all)) out["clt_estimate"] = to_json(clt_estimate(spec));
  bool latin_shape = m == n && spec.k() >= 1 && spec.k() < n;
  for (int i = 1; i <= spec.k() && latin_shape; ++i) latin_shape = s[i] == 1;
  if (latin_shape) out["latin_asymptotic"] = to_json(latin_asymptotic(n, spec.k()));
  out["config"] = config_json(cfg);
  return out;
}

json cmd_regimes(const RunConfig& cfg, const FactorisationSpec& spec, const RegimeParams& params) {
  const auto lams = factor_densities(spec);
  const auto report = regime_classify(spec.m(), spec.n(), lams, params);
  json single = json::array();
  for (const auto& c : report.single_factor) single.push_back(regime_case_json(c));
  json multi = json::array();
  for (const auto& c : report.multi_factor) multi.push_back(regime_case_json(c));
  json lam_list = json::array();
  for (const auto& l : report.lams) lam_list.push_back(to_string(l));
  return {{"m", report.m},
          {"n", report.n},
          {"lambdas", lam_list},
          {"params",
           {{"eps", params.eps}, {"c", params.c}, {"K", params.K}, {"margin", params.margin}, {"big_o", params.big_o}}},
          {"single_factor_cases", single},
          {"multi_factor_cases", multi},
          {"any_single_factor_case", report.any_single},
          {"any_multi_factor_case", report.any_multi},
          {"note", report.note},
          {"config", config_json(cfg)}};
}

DisjointMode parse_disjoint_mode(const std::string& name) {
  if (name == "exact") return DisjointMode::Exact;
  if (name == "mc") return DisjointMode::MonteCarlo;
  if (name == "estimate") return DisjointMode::Estimate;
  throw Error(ErrorKind::InvalidArgument, "mode must be exact, mc or estimate");
}

json cmd_disjoint(const RunConfig& cfg, const std::vector<BipartiteGraph>& graphs, DisjointMode mode,
                  std::uint64_t trials) {
  if (graphs.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two graphs");
  json out{{"graphs", graphs.size()}, {"m", graphs[0].m()}, {"n", graphs[0].n()}};
  switch (mode) {
    case DisjointMode::Exact: {
      if (graphs.size() != 2) throw Error(ErrorKind::InvalidArgument, "exact mode takes exactly two graphs");
      out["mode"] = "exact";
      out["probability"] = rational_json(exact_disjoint_probability(graphs[0], graphs[1], cfg.threads));
      break;
    }
    case DisjointMode::MonteCarlo: {
      const auto r = monte_carlo_disjoint(graphs, trials, cfg.seed, cfg.threads);
      out["mode"] = "mc";
      out["estimate"] = r.estimate;
      out["stderr"] = r.std_error;
      out["successes"] = r.successes;
      out["trials"] = r.trials;
      break;
    }
    case DisjointMode::Estimate: {
      std::vector<Rational> lams;
      const std::int64_t cells = static_cast<std::int64_t>(graphs[0].m()) * graphs[0].n();
      for (const auto& g : graphs) {
        if (g.m() != graphs[0].m() || g.n() != graphs[0].n()) {
          throw Error(ErrorKind::ShapeMismatch, "graphs differ in shape");
        }
        lams.push_back(make_rational(g.edge_count(), cells));
      }
      out["mode"] = "estimate";
      out["probability"] = to_json(disjoint_probability_estimate(graphs[0].m(), graphs[0].n(), lams));
      break;
    }
  }
  out["config"] = config_json(cfg);
  return out;
}

std::vector<SwitchTableRow> switch_rows(const BipartiteGraph& d, const BipartiteGraph& h,
                                        const LabelingClassTable& table) {
  const std::int64_t cells = static_cast<std::int64_t>(d.m()) * d.n();
  const Rational lam_d = make_rational(d.edge_count(), cells);
  const Rational lam_h = make_rational(h.edge_count(), cells);
  std::vector<SwitchTableRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int t = 0; t <= table.t_max(); ++t) {
    SwitchTableRow row{t, table.counts[t], nan, nan};
    if (t >= 1) {
      if (table.counts[t - 1] != 0) row.ratio_exact = Rational(table.counts[t], table.counts[t - 1]).get_d();
      row.ratio_predicted = static_cast<double>(lrat_prediction(d.m(), d.n(), lam_d, lam_h, t));
    }
    rows.push_back(row);
  }
  return rows;
}

std::string switch_csv(const std::vector<SwitchTableRow>& rows) {
  std::ostringstream out;
  out << "t,L_t,ratio_exact,ratio_predicted\n";
  for (const auto& r : rows) {
    out << r.t << ',' << to_decimal(r.L) << ',' << format_number(r.ratio_exact) << ','
        << format_number(r.ratio_predicted) << '\n';
  }
  return out.str();
}

json cmd_switch(const RunConfig& cfg, const BipartiteGraph& d, const BipartiteGraph& h,
                std::optional<int> t_max, bool enforce_no_two_path, bool with_totals) {
  const auto table = classify_labelings(d, h, t_max, enforce_no_two_path, cfg.threads);
  json rows = json::array();
  for (const auto& r : switch_rows(d, h, table)) {
    const auto num = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
    rows.push_back({{"t", r.t}, {"L_t", to_decimal(r.L)}, {"ratio_exact", num(r.ratio_exact)},
                    {"ratio_predicted", num(r.ratio_predicted)}});
  }
  json out{{"m", d.m()},
           {"n", d.n()},
           {"M", table.M},
           {"two_path_enforced", table.two_path_enforced},
           {"rows", rows},
           {"beyond_t_max", to_decimal(table.beyond)},
           {"excluded_two_path", to_decimal(table.excluded)},
           {"T", to_decimal(table.T)},
           {"total_labelings", to_decimal(table.total())}};
  if (table.counts[0] != 0) {
    const std::int64_t cells = static_cast<std::int64_t>(d.m()) * d.n();
    out["T_over_L0"] = Rational(table.T, table.counts[0]).get_d();
    out["T_over_L0_predicted"] =
        std::exp(static_cast<double>(d.edge_count()) * static_cast<double>(h.edge_count()) / static_cast<double>(cells));
  }
  if (with_totals) {
    const auto totals = switching_totals(d, h);
    json list = json::array();
    for (std::size_t t = 1; t < totals.forward.size(); ++t) {
      list.push_back({{"t", t}, {"forward", to_decimal(totals.forward[t])}, {"reverse", to_decimal(totals.reverse[t])},
                      {"equal", totals.forward[t] == totals.reverse[t]}});
    }
    out["switch_totals"] = list;
  }
  out["config"] = config_json(cfg);
  return out;
}

json cmd_clt(const RunConfig& cfg, const FactorisationSpec& spec, bool exact) {
  const auto model = clt_model(spec);
  const auto det = clt_determinant(model);
  const auto display = clt_final_display(spec);
  const LogValue estimate = clt_estimate(spec);
  json out{{"m", spec.m()},
           {"n", spec.n()},
           {"degrees", spec.row_degrees()},
           {"dimension", model.sigma.rows()},
           {"det_closed", static_cast<double>(det.closed)},
           {"det_direct", static_cast<double>(det.direct)},
           {"positive_definite", clt_positive_definite(model)},
           {"estimate", to_json(estimate)},
           {"rprime", to_json(rprime(spec))},
           {"final_display", {{"lhs", static_cast<double>(display.lhs)}, {"rhs", static_cast<double>(display.rhs)}}}};
  if (exact) {
    const auto count = count_factorisations(spec, cfg.budget, cfg.threads);
    out["exact"] = to_decimal(count.count);
    if (count.count != 0) out["estimate_over_exact"] = std::exp(static_cast<double>(estimate.ln() - ln(count.count)));
  }
  out["config"] = config_json(cfg);
  return out;
}

std::vector<FigureRow> figure_rows(const RunConfig& cfg, int n, int k_max) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "figure needs n >= 2");
  if (k_max < 1 || k_max > n - 1) throw Error(ErrorKind::KOutOfRange, "need 1 <= k_max <= n - 1");
  std::vector<FigureRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<std::int64_t> s{n - k};
    s.insert(s.end(), static_cast<std::size_t>(k), 1);
    FigureRow row{};
    row.n = n;
    row.k = k;
    row.x = static_cast<double>(k) / (n - 1);
    row.reference = 1.0 + row.x / 12.0;
    row.ln_rprime = static_cast<double>(rprime(make_spec(n, n, s)).ln());
    try {
      const auto F = count_latin_rectangles(n, k, cfg.budget, cfg.threads).count;
      row.F = to_decimal(F);
      row.ln_F = static_cast<double>(ln(F));
      row.ratio = std::exp(static_cast<double>(ln(F) - rprime(make_spec(n, n, s)).ln()));
      row.skipped = false;
    } catch (const BudgetExceeded&) {
      row.ln_F = row.ratio = std::numeric_limits<double>::quiet_NaN();
      row.skipped = true;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string figure_csv(const std::vector<FigureRow>& rows) {
  std::ostringstream out;
  out << "n,k,x,F,ln_F,ln_Rprime,ratio,reference,status\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << format_number(r.x) << ',' << r.F << ',' << format_number(r.ln_F) << ','
        << format_number(r.ln_rprime) << ',' << format_number(r.ratio) << ',' << format_number(r.reference) << ','
        << (r.skipped ? "skipped" : "ok") << '\n';
  }
  return out.str();
}

}  // namespace semifactor::cli
