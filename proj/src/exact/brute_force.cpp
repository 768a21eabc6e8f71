#include <algorithm>

#include "semifactor/error.hpp"
#include "semifactor/exact.hpp"

namespace semifactor {

namespace {

constexpr unsigned long kBruteForceLimit = 100'000'000;

// Every length-n word holding s_c copies of colour c.
std::vector<std::vector<int>> row_words(const FactorisationSpec& spec) {
  std::vector<int> word;
  for (int c = 0; c <= spec.k(); ++c) word.insert(word.end(), spec.row_degrees()[c], c);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(word);
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

}  // namespace

BigCount brute_force_work(const FactorisationSpec& spec) {
  return pow(multinomial(static_cast<std::uint64_t>(spec.n()), spec.row_degrees()),
             static_cast<std::uint64_t>(spec.m()));
}

BigCount brute_force_count(const FactorisationSpec& spec) {
  if (brute_force_work(spec) > kBruteForceLimit) {
    throw Error(ErrorKind::TooLarge, "brute force would visit more than 1e8 arrays");
  }
  const auto words = row_words(spec);
  const int m = static_cast<int>(spec.m());
  const int n = static_cast<int>(spec.n());
  std::vector<std::size_t> choice(static_cast<std::size_t>(m), 0);
  std::vector<int> cells(static_cast<std::size_t>(m) * n);
  BigCount total = 0;
  while (true) {
    for (int i = 0; i < m; ++i) std::copy(words[choice[i]].begin(), words[choice[i]].end(), cells.begin() + i * n);
    if (validate_colouring(ColourMatrix(m, n, cells), spec)) ++total;
    int i = m - 1;
    while (i >= 0 && ++choice[i] == words.size()) choice[i--] = 0;
    if (i < 0) break;
  }
  return total;
}

}  // namespace semifactor
