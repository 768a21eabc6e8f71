#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "semifactor/bignum.hpp"
#include "semifactor/log_value.hpp"
#include "semifactor/spec.hpp"

namespace semifactor {

// ---------------------------------------------------------------------------
// Closed forms

/// Conjectured size of R(m, n; λ₀..λ_k):
///   multinomial(n; s)^m · multinomial(m; t)^n / multinomial(mn; λmn) · (1 - 1/m)^{k(m-1)/2}.
LogValue rprime(const FactorisationSpec& spec);

/// rprime for two factors of densities 1 - d/n and d/n; this is the
/// classical semiregular estimate and runs through `rprime` itself.
LogValue regular_estimate(std::int64_t m, std::int64_t n, std::int64_t d);

/// `ratio · base^exponent` with everything exact. R′ itself is usually
/// irrational because of the half-integer exponent.
struct ExactRprime {
  Rational ratio;
  Rational base;
  Rational exponent;

  long double ln() const;
};

ExactRprime rprime_exact(const FactorisationSpec& spec);

enum class DeltaVariant { Delta1, Delta2 };

/// Correction term Δ₁ or Δ₂ of the sparse approximation, with λ the total
/// density of factors 1..k.
long double rapprox_delta(std::int64_t m, std::int64_t n, const Rational& lambda, int k,
                          DeltaVariant variant);

/// ln ∏_{i≥1} (λ_i mn)! / ((λ_i m)!^n (λ_i n)!^m) + Δ. Needs every factor
/// i ≥ 1 nonempty and factor 0 nonempty.
LogValue rapprox(const FactorisationSpec& spec, DeltaVariant variant);

struct FallingExpansion {
  long double exact;
  long double expansion;
  long double difference;  // exact - expansion
};

/// ln (N)_{λN} against λN ln N − λ²(3+λ)N/6 + λ(2+λ)/4 − λ/(12N).
FallingExpansion falling_factorial_expansion(std::int64_t N, const Rational& lambda);

/// −(λ_h m − 1)(λ_h n − 1)/2 − λ_h λ_d mn.
long double silver_exponent(std::int64_t m, std::int64_t n, const Rational& lam_d,
                            const Rational& lam_h);

/// silver_exponent − λ_h³ mn / 6.
long double mw_exponent(std::int64_t m, std::int64_t n, const Rational& lam_d,
                        const Rational& lam_h);

enum class ExponentVariant { Silver, MW };

struct AggregateExponent {
  long double telescoped;
  long double closed;
};

/// Sum of the per-step exponents when factors are added one at a time,
/// next to its closed form.
AggregateExponent aggregate_exponent(std::int64_t m, std::int64_t n,
                                     std::span<const Rational> lams, ExponentVariant variant);

/// exp(−mn Σ_{i<j} λ_i λ_j).
LogValue disjoint_probability_estimate(std::int64_t m, std::int64_t n,
                                       std::span<const Rational> lams);

/// (1−λ₁)^{λ̂mn} · exp(−λ₁λ̂(λ̂mn − m − n) / (2(1−λ₁))).
LogValue dense_overlap_P(std::int64_t m, std::int64_t n, const Rational& lam1,
                         const Rational& lamhat);

/// g(N) with N! = √(2π) N^{N+1/2} e^{−N+g(N)}.
long double stirling_correction(std::int64_t N);

/// g(N) + g((1−λ̂−λ₁)N) − g((1−λ̂)N) − g((1−λ₁)N). All four arguments must
/// be positive integers.
long double gbar(std::int64_t N, const Rational& lamhat, const Rational& lam1);

/// ln R/R′ predicted for one dense factor λ₁ plus a sparse remainder λ̂,
/// by two algebraically equal routes.
struct DenseRatio {
  long double factorial_form;  // ln P plus the raw factorial ratio
  long double g_form;          // power factors with n ḡ(m) + m ḡ(n) − ḡ(mn)
};

DenseRatio dense_ratio(std::int64_t m, std::int64_t n, const Rational& lam1,
                       const Rational& lamhat);

/// (n!)^k (n!/((n−k)! n^k))^n (1 − k/n)^{−n/2} e^{−k/2}; needs 1 ≤ k < n.
LogValue latin_asymptotic(std::int64_t n, std::int64_t k);

/// Predicted average number of ways to split a random (m, n, λ)-semiregular
/// graph into factors with V₁ degrees `sub_degrees` (λn = their sum).
LogValue ransplit_prediction(std::int64_t m, std::int64_t n,
                             std::span<const std::int64_t> sub_degrees);

// ---------------------------------------------------------------------------
// Local limit model for small m

/// Covariance of one column's colour indicators X_{i,c}, with rows 1..m−1
/// and colours 1..k. Index (i, c) maps to (i−1)·k + (c−1), so Σ is the
/// Kronecker product with C as the outer factor: Σ[(i,c),(i',c')] = C_{ii'} B_{cc'}.
struct CLTModel {
  int m = 0;
  std::vector<Rational> densities;  // λ₀..λ_k
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd sigma;

  int k() const { return static_cast<int>(densities.size()) - 1; }
};

/// Throws DegenerateDensity when some λ_i is 0 or 1, InvalidArgument when
/// m < 2 or k > m − 1. The constructed Σ is checked against the entrywise
/// covariance table before returning.
CLTModel clt_model(int m, std::span<const Rational> densities);
CLTModel clt_model(const FactorisationSpec& spec);

/// Cov(X_{i,c}, X_{i',c'}) from the case table, 1-based i and c.
double covariance_entry(const CLTModel& model, int i, int c, int i2, int c2);

struct CLTDeterminant {
  long double closed;
  long double direct;
};

CLTDeterminant clt_determinant(const CLTModel& model);

/// Σ admits a Cholesky factorisation.
bool clt_positive_definite(const CLTModel& model);

/// multinomial(m; t)^n (2πn)^{−k(m−1)/2} |Σ|^{−1/2}.
LogValue clt_estimate(const FactorisationSpec& spec);

/// Both sides of multinomial(n; s)^m / multinomial(mn; λmn)
///   ≈ (2πn)^{−k(m−1)/2} m^{k/2} (∏λ_i)^{−(m−1)/2}, in log form.
struct CLTDisplay {
  long double lhs;
  long double rhs;
};

CLTDisplay clt_final_display(const FactorisationSpec& spec);

// ---------------------------------------------------------------------------
// Summation lemma

struct SummationBounds {
  long double sigma1;
  long double sigma2;
  long double sum;
  bool bracketed;
};

/// `a` and `b` hold A(1..Z) and B(1..Z). Throws HypothesisViolated naming
/// the first failing condition.
SummationBounds summation_bounds(std::span<const long double> a, std::span<const long double> b,
                                 int Z, long double chat);

// ---------------------------------------------------------------------------
// Regime report

struct RegimeParams {
  double eps = 0.1;
  double c = 0.05;
  double K = 1.0;
  double margin = 0.5;
  /// Constant standing in for every O(·) bound.
  double big_o = 1.0;
};

struct Inequality {
  std::string description;
  long double lhs;
  long double rhs;
  bool holds;
};

struct RegimeCase {
  std::string id;
  std::vector<Inequality> conditions;
  bool satisfied;
  std::string note;
};

struct RegimeReport {
  std::int64_t m;
  std::int64_t n;
  std::vector<Rational> lams;  // λ₁..λ_k
  RegimeParams params;
  std::vector<RegimeCase> single_factor;  // cases 1-4, for λ = λ₁
  std::vector<RegimeCase> multi_factor;   // cases (a)-(f)
  bool any_single;
  bool any_multi;
  std::string note;
};

/// Substitutes (m, n, λ) into every case condition. All verdicts are
/// heuristic: o(·) reads as "quantity ≤ margin", O(·) as "≤ big_o · bound".
RegimeReport regime_classify(std::int64_t m, std::int64_t n, std::span<const Rational> lams,
                             const RegimeParams& params = {});

}  // namespace semifactor
