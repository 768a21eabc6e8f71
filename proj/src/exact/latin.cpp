#include <algorithm>
#include <bit>
#include <unordered_map>

#include "budget.hpp"
#include "semifactor/error.hpp"
#include "semifactor/exact.hpp"
#include "semifactor/parallel.hpp"

namespace semifactor {

namespace {

// Sorted (subset mask, multiplicity) pairs. Each row's mask holds the
// matching colours it still needs; its colour-0 need is the number of
// columns left minus the mask size.
using SubsetState = std::vector<std::uint32_t>;

struct SubsetStateHash {
  std::size_t operator()(const SubsetState& s) const noexcept {
    return detail::hash_words(s.data(), s.size());
  }
};

using Layer = std::unordered_map<SubsetState, BigCount, SubsetStateHash>;

SubsetState canonical(std::vector<std::pair<std::uint32_t, std::uint32_t>>& pieces) {
  std::sort(pieces.begin(), pieces.end());
  SubsetState out;
  for (auto [mask, mult] : pieces) {
    if (mult == 0) continue;
    if (!out.empty() && out[out.size() - 2] == mask) {
      out.back() += mult;
    } else {
      out.push_back(mask);
      out.push_back(mult);
    }
  }
  return out;
}

// Hands colours 1..k of one column to distinct rows, colour by colour. A
// colour may go to any not-yet-served row whose mask contains it; the weight
// counts the row choices inside each class.
class LatinColumn {
 public:
  LatinColumn(int k, int columns_left) : k_(k), columns_left_(columns_left) {}

  template <class Emit>
  void expand(const SubsetState& state, Emit&& emit) {
    classes_ = state.size() / 2;
    state_ = &state;
    used_.assign(classes_, 0);
    taken_.assign(classes_, 0);
    weight_.assign(static_cast<std::size_t>(k_) + 1, 0);
    weight_[0] = 1;
    emit_ = [&emit](SubsetState&& s, const BigCount& w) { emit(std::move(s), w); };
    step(0);
  }

 private:
  std::uint32_t mask(std::size_t j) const { return (*state_)[2 * j]; }
  std::uint32_t mult(std::size_t j) const { return (*state_)[2 * j + 1]; }

  void step(int colour) {
    if (colour == k_) {
      finish();
      return;
    }
    const std::uint32_t bit = std::uint32_t{1} << colour;
    for (std::size_t j = 0; j < classes_; ++j) {
      if (!(mask(j) & bit) || used_[j] == mult(j)) continue;
      weight_[colour + 1] = weight_[colour] * (mult(j) - used_[j]);
      ++used_[j];
      taken_[j] |= bit;
      step(colour + 1);
      taken_[j] &= ~bit;
      --used_[j];
    }
  }

  void finish() {
    pieces_.clear();
    for (std::size_t j = 0; j < classes_; ++j) {
      const std::uint32_t idle = mult(j) - used_[j];
      // Rows receiving no matching colour take colour 0 and need slack for it.
      if (idle > 0 && columns_left_ - std::popcount(mask(j)) < 1) return;
      pieces_.emplace_back(mask(j), idle);
      for (std::uint32_t rest = taken_[j]; rest != 0; rest &= rest - 1) {
        pieces_.emplace_back(mask(j) & ~(rest & -rest), 1);
      }
    }
    emit_(canonical(pieces_), weight_[k_]);
  }

  int k_;
  int columns_left_;
  const SubsetState* state_ = nullptr;
  std::size_t classes_ = 0;
  std::vector<std::uint32_t> used_;
  std::vector<std::uint32_t> taken_;
  std::vector<BigCount> weight_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pieces_;
  std::function<void(SubsetState&&, const BigCount&)> emit_;
};

}  // namespace

CountResult count_latin_rectangles(int n, int k, const CountBudget& budget, unsigned threads) {
  if (k < 1 || k > n) throw Error(ErrorKind::KOutOfRange, "need 1 <= k <= n");
  if (k > 31) throw Error(ErrorKind::TooLarge, "at most 31 rows supported");
  detail::BudgetGuard guard(budget, "count_latin_rectangles");

  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  Layer layer;
  layer.emplace(SubsetState{full, static_cast<std::uint32_t>(n)}, BigCount(1));
  guard.add_states(1);
  const unsigned workers = resolve_threads(threads);

  for (int column = 0; column < n; ++column) {
    std::vector<const Layer::value_type*> items;
    items.reserve(layer.size());
    for (const auto& entry : layer) items.push_back(&entry);
    std::vector<Layer> partial(std::min<std::size_t>(workers, std::max<std::size_t>(items.size(), 1)));
    parallel_blocks(items.size(), static_cast<unsigned>(partial.size()),
                    [&](std::size_t begin, std::size_t end, unsigned worker) {
                      LatinColumn expander(k, n - column);
                      Layer& out = partial[worker];
                      for (std::size_t i = begin; i < end; ++i) {
                        if ((i & 1023) == 0) guard.check_time();
                        const BigCount& weight = items[i]->second;
                        expander.expand(items[i]->first, [&](SubsetState&& next, const BigCount& w) {
                          auto [it, inserted] = out.try_emplace(std::move(next));
                          it->second += weight * w;
                        });
                      }
                    });
    Layer next = std::move(partial[0]);
    for (std::size_t w = 1; w < partial.size(); ++w) {
      for (auto& [state, value] : partial[w]) next[state] += value;
    }
    guard.add_states(next.size());
    layer = std::move(next);
    if (layer.empty()) break;
  }

  CountResult result;
  result.states_explored = guard.states();
  result.count = 0;
  for (const auto& [state, value] : layer) result.count += value;
  return result;
}

}  // namespace semifactor
