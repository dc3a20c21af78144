#pragma once

#include <map>
#include <string>

#include "dcc/types.hpp"

namespace dcc {

// Splits `total` units pro-rata over positive weights, exactly: floor of the
// real-valued share first, leftover units to the largest fractional
// remainders (ties broken by lexicographic key). The shares always sum to
// `total` and each is within one unit of its real-valued share.
std::map<std::string, Amount> allocate_largest_remainder(
    Amount total, const std::map<std::string, Amount>& weights);

}  // namespace dcc
