#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "budget.hpp"
#include "semifactor/error.hpp"
#include "semifactor/exact.hpp"
#include "semifactor/parallel.hpp"

namespace semifactor {

constexpr std::int64_t kMaxEncoded = 65535;

class ResidualStateBuilder {
 public:
  explicit ResidualStateBuilder(int colours) : colours_(colours), stride_(colours + 1) {}

  void clear() { flat_.clear(); }

  // Appends a class record; records with the same residual are merged by
  // `build`.
  std::uint16_t* add(std::uint16_t multiplicity) {
    flat_.resize(flat_.size() + stride_);
    std::uint16_t* rec = flat_.data() + flat_.size() - stride_;
    rec[colours_] = multiplicity;
    return rec;
  }

  ResidualState build(std::int64_t columns_remaining) {
    const std::size_t records = flat_.size() / stride_;
    order_.resize(records);
    std::iota(order_.begin(), order_.end(), 0u);
    const std::uint16_t* base = flat_.data();
    const int c = colours_;
    const int stride = stride_;
    std::sort(order_.begin(), order_.end(), [base, c, stride](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(base + a * stride, base + a * stride + c,
                                          base + b * stride, base + b * stride + c);
    });
    ResidualState out;
    out.colours_ = colours_;
    out.columns_remaining_ = columns_remaining;
    out.encoded_.reserve(flat_.size());
    for (std::size_t i = 0; i < records; ++i) {
      const std::uint16_t* rec = base + order_[i] * stride;
      const std::size_t size = out.encoded_.size();
      if (size != 0 && std::equal(rec, rec + c, out.encoded_.data() + size - stride)) {
        out.encoded_[size - 1] = static_cast<std::uint16_t>(out.encoded_[size - 1] + rec[c]);
      } else {
        out.encoded_.insert(out.encoded_.end(), rec, rec + stride);
      }
    }
    return out;
  }

 private:
  int colours_;
  int stride_;
  std::vector<std::uint16_t> flat_;
  std::vector<std::uint32_t> order_;
};

ResidualState::ResidualState(int colours, std::int64_t columns_remaining,
                             std::span<const std::vector<std::int64_t>> residuals) {
  ResidualStateBuilder builder(colours);
  for (const auto& row : residuals) {
    if (static_cast<int>(row.size()) != colours) {
      throw Error(ErrorKind::ShapeMismatch, "residual vector length differs from colour count");
    }
    std::uint16_t* rec = builder.add(1);
    for (int c = 0; c < colours; ++c) {
      if (row[c] < 0 || row[c] > kMaxEncoded) throw Error(ErrorKind::InvalidArgument, "residual out of range");
      rec[c] = static_cast<std::uint16_t>(row[c]);
    }
  }
  *this = builder.build(columns_remaining);
}

ResidualState ResidualState::initial(const FactorisationSpec& spec) {
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(spec.m()), spec.row_degrees());
  return ResidualState(spec.k() + 1, spec.n(), rows);
}

bool ResidualState::consistent_with(const FactorisationSpec& spec) const {
  if (colours_ != spec.k() + 1) return false;
  std::int64_t rows = 0;
  std::vector<std::int64_t> totals(static_cast<std::size_t>(colours_), 0);
  for (std::size_t cls = 0; cls < class_count(); ++cls) {
    rows += multiplicity(cls);
    for (int c = 0; c < colours_; ++c) totals[c] += residual(cls)[c] * multiplicity(cls);
  }
  if (rows != spec.m()) return false;
  for (int c = 0; c < colours_; ++c) {
    if (totals[c] != spec.column_degrees()[c] * columns_remaining_) return false;
  }
  return true;
}

std::size_t ResidualStateHash::operator()(const ResidualState& s) const noexcept {
  return detail::hash_words(s.encoded().data(), s.encoded().size()) ^
         static_cast<std::size_t>(s.columns_remaining());
}

namespace {

using Layer = std::unordered_map<ResidualState, BigCount, ResidualStateHash>;

std::vector<std::vector<BigCount>> pascal(std::int64_t rows) {
  std::vector<std::vector<BigCount>> table(static_cast<std::size_t>(rows + 1));
  for (std::int64_t i = 0; i <= rows; ++i) {
    table[i].resize(static_cast<std::size_t>(i + 1));
    table[i][0] = table[i][i] = 1;
    for (std::int64_t j = 1; j < i; ++j) table[i][j] = table[i - 1][j - 1] + table[i - 1][j];
  }
  return table;
}

// Enumerates the ways one column can hand out its colour slots: class j of
// the state sends x[j][c] of its rows to colour c, with Σ_c x[j][c] = μ_j and
// Σ_j x[j][c] = t_c, weighted by Π_j multinomial(μ_j; x[j][·]).
class ColumnExpander {
 public:
  ColumnExpander(int colours, std::span<const std::int64_t> demand,
                 const std::vector<std::vector<BigCount>>& binom)
      : colours_(colours), column_demand_(demand.begin(), demand.end()), binom_(binom),
        builder_(colours) {}

  template <class Emit>
  void expand(const ResidualState& state, Emit&& emit) {
    state_ = &state;
    classes_ = state.class_count();
    const std::size_t c = static_cast<std::size_t>(colours_);
    demand_ = column_demand_;
    avail_.assign((classes_ + 1) * c, 0);
    for (std::size_t j = classes_; j-- > 0;) {
      for (std::size_t col = 0; col < c; ++col) {
        avail_[j * c + col] = avail_[(j + 1) * c + col] +
                              (state.residual(j)[col] > 0 ? state.multiplicity(j) : 0);
      }
    }
    for (std::size_t col = 0; col < c; ++col) {
      if (demand_[col] > avail_[col]) return;
    }
    x_.assign(classes_ * c, 0);
    partial_.resize(classes_ * (c + 1) + 1);
    partial_[0] = 1;
    emit_ = [&emit](ResidualState&& s, const BigCount& w) { emit(std::move(s), w); };
    class_step(0);
  }

 private:
  void class_step(std::size_t j) {
    const std::size_t c = static_cast<std::size_t>(colours_);
    if (j == classes_) {
      builder_.clear();
      for (std::size_t cls = 0; cls < classes_; ++cls) {
        const auto residual = state_->residual(cls);
        for (std::size_t col = 0; col < c; ++col) {
          const std::int64_t count = x_[cls * c + col];
          if (count == 0) continue;
          std::uint16_t* rec = builder_.add(static_cast<std::uint16_t>(count));
          std::copy(residual.begin(), residual.end(), rec);
          --rec[col];
        }
      }
      emit_(builder_.build(state_->columns_remaining() - 1), partial_[j * (c + 1)]);
      return;
    }
    colour_step(j, 0, state_->multiplicity(j));
  }

  void colour_step(std::size_t j, std::size_t col, std::int64_t left) {
    const std::size_t c = static_cast<std::size_t>(colours_);
    const std::size_t slot = j * (c + 1) + col;
    const bool open = state_->residual(j)[col] > 0;
    if (col + 1 == c) {
      if (left > demand_[col] || (left > 0 && !open)) return;
      x_[j * c + col] = left;
      demand_[col] -= left;
      bool feasible = true;
      for (std::size_t k = 0; k < c && feasible; ++k) feasible = demand_[k] <= avail_[(j + 1) * c + k];
      if (feasible) {
        partial_[(j + 1) * (c + 1)] = partial_[slot];
        class_step(j + 1);
      }
      demand_[col] += left;
      x_[j * c + col] = 0;
      return;
    }
    const std::int64_t most = open ? std::min(left, demand_[col]) : 0;
    for (std::int64_t take = 0; take <= most; ++take) {
      x_[j * c + col] = take;
      demand_[col] -= take;
      partial_[slot + 1] = partial_[slot] * binom_[left][take];
      colour_step(j, col + 1, left - take);
      demand_[col] += take;
    }
    x_[j * c + col] = 0;
  }

  int colours_;
  std::vector<std::int64_t> column_demand_;
  const std::vector<std::vector<BigCount>>& binom_;
  ResidualStateBuilder builder_;

  const ResidualState* state_ = nullptr;
  std::size_t classes_ = 0;
  std::vector<std::int64_t> demand_;
  std::vector<std::int64_t> avail_;
  std::vector<std::int64_t> x_;
  std::vector<BigCount> partial_;
  std::function<void(ResidualState&&, const BigCount&)> emit_;
};

}  // namespace

CountResult count_factorisations(const FactorisationSpec& spec, const CountBudget& budget,
                                 unsigned threads) {
  if (spec.m() > kMaxEncoded || spec.n() > kMaxEncoded) {
    throw Error(ErrorKind::TooLarge, "part sizes beyond 65535 are not supported");
  }
  detail::BudgetGuard guard(budget, "count_factorisations");

  // Empty factors contribute a factor of 1 and never constrain a column.
  std::vector<std::int64_t> s;
  std::vector<std::int64_t> t;
  for (int i = 0; i <= spec.k(); ++i) {
    if (spec.row_degrees()[i] == 0) continue;
    s.push_back(spec.row_degrees()[i]);
    t.push_back(spec.column_degrees()[i]);
  }
  const FactorisationSpec reduced = make_spec(spec.m(), spec.n(), s);
  const int colours = reduced.k() + 1;
  const auto binom = pascal(spec.m());

  Layer layer;
  layer.emplace(ResidualState::initial(reduced), BigCount(1));
  guard.add_states(1);
  const unsigned workers = resolve_threads(threads);

  for (std::int64_t column = 0; column < spec.n(); ++column) {
    std::vector<const Layer::value_type*> items;
    items.reserve(layer.size());
    for (const auto& entry : layer) items.push_back(&entry);

    std::vector<Layer> partial(std::min<std::size_t>(workers, std::max<std::size_t>(items.size(), 1)));
    parallel_blocks(items.size(), static_cast<unsigned>(partial.size()),
                    [&](std::size_t begin, std::size_t end, unsigned worker) {
                      ColumnExpander expander(colours, t, binom);
                      Layer& out = partial[worker];
                      for (std::size_t i = begin; i < end; ++i) {
                        if ((i & 1023) == 0) guard.check_time();
                        const BigCount& weight = items[i]->second;
                        expander.expand(items[i]->first, [&](ResidualState&& next, const BigCount& w) {
                          auto [it, inserted] = out.try_emplace(std::move(next));
                          it->second += weight * w;
                        });
                      }
                    });
    Layer next = std::move(partial[0]);
    for (std::size_t w = 1; w < partial.size(); ++w) {
      for (auto& [state, value] : partial[w]) {
        auto [it, inserted] = next.try_emplace(state);
        it->second += value;
      }
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

Rational average_split_count(std::int64_t m, std::int64_t n,
                             std::span<const std::int64_t> sub_degrees,
                             const CountBudget& budget) {
  if (sub_degrees.empty()) throw Error(ErrorKind::InvalidSpec, "no sub-degrees given");
  const std::int64_t total = std::accumulate(sub_degrees.begin(), sub_degrees.end(), std::int64_t{0});
  std::vector<std::int64_t> full{n - total};
  full.insert(full.end(), sub_degrees.begin(), sub_degrees.end());
  const auto split_spec = make_spec(m, n, full);
  const auto merged_spec = make_spec(m, n, {n - total, total});
  const BigCount denominator = count_factorisations(merged_spec, budget).count;
  if (denominator == 0) {
    throw Error(ErrorKind::ZeroDenominator, "no semiregular graph of the merged density exists");
  }
  Rational out(count_factorisations(split_spec, budget).count, denominator);
  out.canonicalize();
  return out;
}

}  // namespace semifactor
