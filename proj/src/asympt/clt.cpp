#include <cmath>
#include <stdexcept>

#include "semifactor/asympt.hpp"
#include "semifactor/error.hpp"
#include "semifactor/special.hpp"

namespace semifactor {

namespace {

// ln |Σ| = −k ln m − k(m−1) ln(1 − 1/m) + (m−1) Σ ln λ_i.
long double ln_closed_determinant(int m, std::span<const Rational> densities) {
  const long double k = static_cast<long double>(densities.size() - 1);
  const long double mm = static_cast<long double>(m);
  long double logs = 0.0L;
  for (const auto& lam : densities) logs += ln(lam);
  return -k * std::log(mm) - k * (mm - 1.0L) * std::log1p(-1.0L / mm) + (mm - 1.0L) * logs;
}

std::vector<Rational> spec_densities(const FactorisationSpec& spec) {
  auto out = spec.densities();
  for (const auto& lam : out) {
    if (lam == 0 || lam == 1) throw Error(ErrorKind::DegenerateDensity, "every density must lie in (0, 1)");
  }
  return out;
}

}  // namespace

CLTModel clt_model(int m, std::span<const Rational> densities) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "the local limit model needs m >= 2");
  if (densities.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two densities");
  Rational sum = 0;
  for (const auto& lam : densities) {
    if (lam <= 0 || lam >= 1) throw Error(ErrorKind::DegenerateDensity, "every density must lie in (0, 1)");
    sum += lam;
  }
  if (sum != 1) throw Error(ErrorKind::InvalidArgument, "densities must sum to 1");

  CLTModel model;
  model.m = m;
  model.densities.assign(densities.begin(), densities.end());
  const int k = model.k();
  if (k > m - 1) throw Error(ErrorKind::InvalidArgument, "need k <= m - 1");

  std::vector<double> lam(densities.size());
  for (std::size_t i = 0; i < densities.size(); ++i) lam[i] = densities[i].get_d();
  model.B.resize(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      model.B(a, b) = a == b ? lam[a + 1] * (1.0 - lam[a + 1]) : -lam[a + 1] * lam[b + 1];
    }
  }
  model.C = Eigen::MatrixXd::Constant(m - 1, m - 1, -1.0 / (m - 1));
  model.C.diagonal().setOnes();

  const int dim = (m - 1) * k;
  model.sigma.resize(dim, dim);
  for (int i = 0; i < m - 1; ++i)
    for (int i2 = 0; i2 < m - 1; ++i2)
      model.sigma.block(i * k, i2 * k, k, k) = model.C(i, i2) * model.B;

  for (int i = 1; i < m; ++i)
    for (int c = 1; c <= k; ++c)
      for (int i2 = 1; i2 < m; ++i2)
        for (int c2 = 1; c2 <= k; ++c2) {
          const double want = covariance_entry(model, i, c, i2, c2);
          if (std::abs(model.sigma((i - 1) * k + c - 1, (i2 - 1) * k + c2 - 1) - want) > 1e-12) {
            throw std::logic_error("covariance matrix disagrees with the entrywise table");
          }
        }
  return model;
}

CLTModel clt_model(const FactorisationSpec& spec) {
  const auto lams = spec_densities(spec);
  return clt_model(static_cast<int>(spec.m()), lams);
}

double covariance_entry(const CLTModel& model, int i, int c, int i2, int c2) {
  const double a = model.densities[c].get_d();
  const double b = model.densities[c2].get_d();
  const double off = 1.0 / (model.m - 1);
  if (i == i2) return c == c2 ? a * (1.0 - a) : -a * b;
  return c == c2 ? -a * (1.0 - a) * off : a * b * off;
}

CLTDeterminant clt_determinant(const CLTModel& model) {
  CLTDeterminant out;
  out.closed = std::exp(ln_closed_determinant(model.m, model.densities));
  out.direct = model.sigma.partialPivLu().determinant();
  return out;
}

bool clt_positive_definite(const CLTModel& model) {
  return model.sigma.llt().info() == Eigen::Success;
}

LogValue clt_estimate(const FactorisationSpec& spec) {
  if (spec.m() < 2) throw Error(ErrorKind::InvalidSpec, "the local limit estimate needs m >= 2");
  if (spec.k() == 0) return LogValue::from_ln(0.0L);
  const auto lams = spec_densities(spec);
  const long double n = static_cast<long double>(spec.n());
  const long double dim = static_cast<long double>(spec.k()) * static_cast<long double>(spec.m() - 1);
  const long double value = n * ln_multinomial(spec.m(), spec.column_degrees()) -
                            0.5L * dim * (kLnTwoPi + std::log(n)) -
                            0.5L * ln_closed_determinant(static_cast<int>(spec.m()), lams);
  return LogValue::from_ln(value);
}

CLTDisplay clt_final_display(const FactorisationSpec& spec) {
  const auto lams = spec_densities(spec);
  const std::int64_t m = spec.m();
  const long double n = static_cast<long double>(spec.n());
  std::vector<std::int64_t> cells(spec.row_degrees());
  for (auto& c : cells) c *= m;
  CLTDisplay out;
  out.lhs = static_cast<long double>(m) * ln_multinomial(spec.n(), spec.row_degrees()) -
            ln_multinomial(m * spec.n(), cells);
  long double logs = 0.0L;
  for (const auto& lam : lams) logs += ln(lam);
  const long double k = static_cast<long double>(spec.k());
  out.rhs = -0.5L * k * static_cast<long double>(m - 1) * (kLnTwoPi + std::log(n)) +
            0.5L * k * std::log(static_cast<long double>(m)) -
            0.5L * static_cast<long double>(m - 1) * logs;
  return out;
}

}  // namespace semifactor
