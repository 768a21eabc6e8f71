#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semifactor/bignum.hpp"

namespace semifactor {

/// Densities and part sizes of a factorisation of K_{m,n}.
///
/// Factor i is an (m, n, λ_i)-semiregular graph: every V₁ vertex has degree
/// s_i = λ_i n and every V₂ vertex has degree t_i = λ_i m. Only the integer
/// degrees are stored; λ_i is derived as the exact rational s_i / n.
/// Construct through `make_spec`, which enforces the degree sums and the
/// integrality of both sides.
class FactorisationSpec {
 public:
  std::int64_t m() const noexcept { return m_; }
  std::int64_t n() const noexcept { return n_; }
  /// Number of factors minus one.
  int k() const noexcept { return static_cast<int>(s_.size()) - 1; }

  const std::vector<std::int64_t>& row_degrees() const noexcept { return s_; }
  const std::vector<std::int64_t>& column_degrees() const noexcept { return t_; }

  Rational density(int i) const;
  std::vector<Rational> densities() const;

  /// Every factor other than factor 0 is nonempty.
  bool strict() const noexcept;

  friend bool operator==(const FactorisationSpec&, const FactorisationSpec&) = default;

 private:
  friend FactorisationSpec make_spec(std::int64_t, std::int64_t, std::vector<std::int64_t>);
  FactorisationSpec() = default;

  std::int64_t m_ = 0;
  std::int64_t n_ = 0;
  std::vector<std::int64_t> s_;
  std::vector<std::int64_t> t_;
};

/// Throws Error with NegativeDegree, DegreeSumMismatch, IntegralityViolation
/// or InvalidSpec (m or n < 1, empty degree list).
FactorisationSpec make_spec(std::int64_t m, std::int64_t n, std::vector<std::int64_t> s);

/// The same factorisation seen from the other side: (n, m, t).
FactorisationSpec transpose_spec(const FactorisationSpec& spec);

}  // namespace semifactor
