#include "semifactor/spec.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "semifactor/error.hpp"

namespace semifactor {

Rational FactorisationSpec::density(int i) const {
  return make_rational(s_.at(static_cast<std::size_t>(i)), n_);
}

std::vector<Rational> FactorisationSpec::densities() const {
  std::vector<Rational> out;
  out.reserve(s_.size());
  for (int i = 0; i <= k(); ++i) out.push_back(density(i));
  return out;
}

bool FactorisationSpec::strict() const noexcept {
  return std::all_of(s_.begin() + 1, s_.end(), [](std::int64_t d) { return d >= 1; });
}

FactorisationSpec make_spec(std::int64_t m, std::int64_t n, std::vector<std::int64_t> s) {
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidSpec, "part sizes must be positive");
  if (s.empty()) throw Error(ErrorKind::InvalidSpec, "degree list is empty");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) {
      throw Error(ErrorKind::NegativeDegree,
                  "degree s_" + std::to_string(i) + " = " + std::to_string(s[i]) + " is negative");
    }
  }
  const std::int64_t total = std::accumulate(s.begin(), s.end(), std::int64_t{0});
  if (total != n) {
    throw Error(ErrorKind::DegreeSumMismatch,
                "degrees sum to " + std::to_string(total) + ", expected n = " + std::to_string(n));
  }
  FactorisationSpec spec;
  spec.m_ = m;
  spec.n_ = n;
  spec.t_.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((s[i] * m) % n != 0) {
      throw Error(ErrorKind::IntegralityViolation,
                  "V2 degree s_" + std::to_string(i) + " * m / n = " + std::to_string(s[i]) +
                      " * " + std::to_string(m) + " / " + std::to_string(n) +
                      " is not an integer");
    }
    spec.t_.push_back(s[i] * m / n);
  }
  spec.s_ = std::move(s);
  return spec;
}

FactorisationSpec transpose_spec(const FactorisationSpec& spec) {
  return make_spec(spec.n(), spec.m(), spec.column_degrees());
}

}  // namespace semifactor
