#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fca/bitset.hpp"

namespace fca {

/// Lectically next closed set after `current` for any closure operator `op`,
/// or nullopt once the full set has been passed. Index order is the lectic
/// order: the smallest index where two sets differ decides.
template <class Tag, class Op>
std::optional<BasicBitSet<Tag>> next_closure(const BasicBitSet<Tag>& current, Op&& op) {
  BasicBitSet<Tag> a = current;
  for (std::size_t m = a.size(); m-- > 0;) {
    if (a.test(m)) {
      a.reset(m);
    } else {
      BasicBitSet<Tag> b = op(a.with(m));
      if (b.equal_below(a, m)) return b;
    }
  }
  return std::nullopt;
}

/// Every closed set of `op` over `n` elements, in lectic order.
template <class Tag, class Op>
std::vector<BasicBitSet<Tag>> all_closed_sets(std::size_t n, Op&& op) {
  std::vector<BasicBitSet<Tag>> out;
  std::optional<BasicBitSet<Tag>> cur = op(BasicBitSet<Tag>(n));
  while (cur) {
    out.push_back(*cur);
    cur = next_closure(*cur, op);
  }
  return out;
}

}  // namespace fca
