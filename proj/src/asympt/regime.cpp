#include <cmath>
#include <limits>

#include "semifactor/asympt.hpp"
#include "semifactor/error.hpp"

namespace semifactor {

namespace {

Inequality at_most(std::string description, long double lhs, long double rhs) {
  const bool holds = std::isfinite(lhs) && lhs <= rhs;
  return {std::move(description), lhs, rhs, holds};
}

RegimeCase make_case(std::string id, std::vector<Inequality> conditions, std::string note = {}) {
  bool all = true;
  for (const auto& c : conditions) all = all && c.holds;
  return {std::move(id), std::move(conditions), all, std::move(note)};
}

long double safe_div(long double a, long double b) {
  return b == 0.0L ? std::numeric_limits<long double>::infinity() : a / b;
}

}  // namespace

RegimeReport regime_classify(std::int64_t m, std::int64_t n, std::span<const Rational> lams,
                             const RegimeParams& params) {
  if (lams.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one density");
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidArgument, "m and n must be positive");
  if (!(params.margin > 0.0)) throw Error(ErrorKind::InvalidArgument, "margin must be positive");

  const long double mm = static_cast<long double>(m);
  const long double nn = static_cast<long double>(n);
  const long double eps = params.eps;
  const long double margin = params.margin;
  const long double big_o = params.big_o;
  const long double ln_n = std::log(nn);
  const Inequality oblong = at_most("m <= n", mm, nn);

  RegimeReport report;
  report.m = m;
  report.n = n;
  report.lams.assign(lams.begin(), lams.end());
  report.params = params;

  const long double l = to_long_double(lams[0]);
  const long double spread = l * (1.0L - l);

  report.single_factor.push_back(make_case(
      "1", {oblong, at_most("lambda (mn)^(1/4) <= margin", l * std::pow(mm * nn, 0.25L), margin)}));

  const Inequality dense_log =
      at_most("(1-2 lambda)^2 (1 + 5m/(6n) + 5n/(6m)) <= (4-eps) lambda (1-lambda) ln n",
              (1.0L - 2.0L * l) * (1.0L - 2.0L * l) * (1.0L + 5.0L * mm / (6.0L * nn) + 5.0L * nn / (6.0L * mm)),
              (4.0L - eps) * spread * ln_n);
  const Inequality dense_shape = at_most("n / (lambda (1-lambda) m^(1+eps)) <= margin",
                                         safe_div(nn, spread * std::pow(mm, 1.0L + eps)), margin);
  report.single_factor.push_back(make_case("2", {oblong, dense_log, dense_shape}));

  report.single_factor.push_back(make_case(
      "3", {oblong, at_most("2 <= m", 2.0L, mm),
            at_most("m <= big_o (lambda (1-lambda) n)^(1/2-eps)", mm,
                    big_o * std::pow(spread * nn, 0.5L - eps))}));

  report.single_factor.push_back(make_case(
      "4",
      {oblong, at_most("lambda <= c", l, params.c),
       at_most("n <= big_o lambda^(1/2-eps) m^(3/2-eps)", nn,
               big_o * std::pow(l, 0.5L - eps) * std::pow(mm, 1.5L - eps)),
       at_most("(ln n)^K <= lambda m", std::pow(ln_n, static_cast<long double>(params.K)), l * mm)},
      "only the chosen K is checked; the condition asks for every K"));

  report.any_single = false;
  std::string single_hits;
  for (const auto& c : report.single_factor) {
    if (!c.satisfied) continue;
    report.any_single = true;
    single_hits += (single_hits.empty() ? "" : ",") + c.id;
  }

  const long double k = static_cast<long double>(lams.size());
  long double total = 0.0L;
  long double pairs = 0.0L;
  long double rest = 0.0L;
  long double off_latin = 0.0L;
  for (std::size_t i = 0; i < lams.size(); ++i) {
    const long double li = to_long_double(lams[i]);
    pairs += li * total;
    total += li;
    if (i > 0) rest += li;
    off_latin = std::max(off_latin, std::abs(to_long_double(lams[i] - make_rational(1, n))));
  }

  report.multi_factor.push_back(make_case(
      "a", {at_most("k <= 1", k, 1.0L)},
      report.any_single ? "single-factor case " + single_hits + " holds" : "no single-factor case holds"));
  report.multi_factor.back().satisfied = report.multi_factor.back().satisfied && report.any_single;

  report.multi_factor.push_back(make_case(
      "b", {at_most("2 <= k", 2.0L, k), oblong,
            at_most("m^-1 n^3 lambda^3 <= margin", nn * nn * nn * total * total * total / mm, margin)}));
  report.multi_factor.push_back(make_case(
      "c", {at_most("2 <= k", 2.0L, k), oblong,
            at_most("m^(1/2) n Lambda <= margin", std::sqrt(mm) * nn * pairs, margin)}));
  report.multi_factor.push_back(make_case(
      "d", {at_most("|m - n| <= 0", std::abs(mm - nn), 0.0L),
            at_most("max |lambda_i - 1/n| <= 0", off_latin, 0.0L),
            at_most("k / n^(6/7) <= margin", k / std::pow(nn, 6.0L / 7.0L), margin)}));
  report.multi_factor.push_back(make_case(
      "e", {oblong, dense_log, dense_shape,
            at_most("lambda_2 + ... + lambda_k <= big_o n^(-1+eps)", rest, big_o * std::pow(nn, -1.0L + eps))}));
  report.multi_factor.push_back(make_case(
      "f", {at_most("1 <= k", 1.0L, k), at_most("k <= m - 1", k, mm - 1.0L)},
      "m = O(1) cannot be judged at one size; only 1 <= k <= m - 1 is checked"));

  report.any_multi = false;
  for (const auto& c : report.multi_factor) report.any_multi = report.any_multi || c.satisfied;

  report.note = "all verdicts heuristic; k/m = " + std::to_string(static_cast<double>(k / mm));
  if (!report.any_multi) {
    report.note += "; no proven case applies, so the estimate here rests on the conjectured strong form";
  }
  return report;
}

}  // namespace semifactor
