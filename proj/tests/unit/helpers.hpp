#pragma once

#include <string_view>

#include "qmoment/precision.hpp"
#include "qmoment/real.hpp"

namespace testing {

inline qmoment::Real rel_err(const qmoment::Real& got, const qmoment::Real& want) {
  if (want.is_zero()) return abs(got);
  return abs(got - want) / abs(want);
}

inline qmoment::Real ten_to(long k, const qmoment::PrecisionContext& ctx) {
  return qmoment::pow10(k, ctx.precision());
}

}  // namespace testing
