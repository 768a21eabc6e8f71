#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "semifactor/error.hpp"
#include "semifactor/exact.hpp"

namespace semifactor::detail {

class BudgetGuard {
 public:
  BudgetGuard(const CountBudget& budget, std::string what)
      : budget_(budget), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {
    if (budget.max_states == 0 || !(budget.max_seconds > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "budgets must be positive");
    }
  }

  void add_states(std::uint64_t count) {
    states_ += count;
    if (states_ > budget_.max_states) {
      throw BudgetExceeded(what_ + ": state budget of " + std::to_string(budget_.max_states) +
                               " exceeded",
                           states_);
    }
  }

  void check_time() const {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    if (elapsed.count() > budget_.max_seconds) {
      throw BudgetExceeded(what_ + ": time budget of " + std::to_string(budget_.max_seconds) +
                               " s exceeded",
                           states_);
    }
  }

  std::uint64_t states() const noexcept { return states_; }

 private:
  CountBudget budget_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t states_ = 0;
};

inline std::size_t hash_words(const auto* data, std::size_t size) noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= static_cast<std::uint64_t>(data[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return static_cast<std::size_t>(h);
}

}  // namespace semifactor::detail
