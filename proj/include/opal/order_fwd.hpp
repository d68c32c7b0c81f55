#pragma once

#include <compare>
#include <functional>
#include <string>

#include "opal/word.hpp"

namespace opal {

// Total comparator on words claiming the monomial-order axioms (well-order +
// context compatibility). The claim is validated empirically by
// check_order_axioms, not assumed.
struct MonomialOrder {
  std::string name;
  std::function<std::strong_ordering(const WordPtr&, const WordPtr&)> cmp;

  bool less(const WordPtr& a, const WordPtr& b) const {
    return cmp(a, b) == std::strong_ordering::less;
  }
};

}  // namespace opal
