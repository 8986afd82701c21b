#pragma once

// Transcendental enclosures built from the interval primitives only:
// argument reduction followed by a truncated series whose remainder is
// bounded explicitly and added to the result.

#include "arakelov/rigor/interval.hpp"

namespace arakelov::rigor {

/// Enclosure of pi at the working precision (width at most one ulp).
Interval pi();
/// Enclosure of log 2 at the working precision.
Interval ln2();

Interval exp(const Interval& x);
/// Throws DomainError unless lo > 0.
Interval log(const Interval& x);

}  // namespace arakelov::rigor
