#pragma once

#include "arakelov/rigor/interval.hpp"

#include <doctest.h>

#include <string>

namespace testing {

using arakelov::rigor::Interval;

// A 40-digit reference value r agrees with x when [r - tol, r + tol] meets x
// and x is not wider than tol.
inline bool agrees(const Interval& x, const char* reference, double tol) {
  const Interval r = Interval::decimal(reference);
  const Interval slack = r + Interval::hull(Interval::exact(-tol), Interval::exact(tol));
  return x.overlaps(slack) && x.width() <= tol;
}


}  // namespace testing
