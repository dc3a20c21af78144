#include "dcc/allocate.hpp"

#include <algorithm>
#include <vector>

namespace dcc {

std::map<std::string, Amount> allocate_largest_remainder(
    Amount total, const std::map<std::string, Amount>& weights) {
  require(total >= 0, Errc::OutOfBounds, "negative allocation total");
  __int128 weight_sum = 0;
  for (const auto& [key, w] : weights) {
    require(w > 0, Errc::OutOfBounds, "weights must be positive");
    weight_sum += w;
  }
  std::map<std::string, Amount> shares;
  if (total == 0 || weights.empty()) {
    for (const auto& [key, w] : weights) shares[key] = 0;
    return shares;
  }
  std::vector<std::pair<__int128, std::string>> remainders;
  Amount assigned = 0;
  for (const auto& [key, w] : weights) {
    __int128 numer = static_cast<__int128>(total) * w;
    Amount base = static_cast<Amount>(numer / weight_sum);
    shares[key] = base;
    assigned += base;
    remainders.push_back({numer % weight_sum, key});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  Amount leftover = total - assigned;
  for (Amount i = 0; i < leftover; ++i) {
    shares[remainders[static_cast<size_t>(i)].second]++;
  }
  return shares;
}

}  // namespace dcc
