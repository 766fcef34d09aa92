#include "arlog/constants.hpp"

#include <algorithm>

#include "arlog/error.hpp"

namespace arlog {

const NamedConstant& named_constant(Constant id) {
  for (const auto& c : kNamedConstants)
    if (c.id == id) return c;
  throw DomainError("unknown constant");
}

BigFloat constant(Constant id, int precision) {
  const BigFloat stored =
      BigFloat::parse(named_constant(id).digits, kConstantDigits);
  return stored.with_precision(precision);
}

}  // namespace arlog
