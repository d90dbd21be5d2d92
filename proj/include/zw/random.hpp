#pragma once

#include <random>

namespace zw {

// Seeded generator shared by the property-test generators.
using Rng = std::mt19937_64;

// Uniform integer in [lo, hi]; platform independent, unlike std distributions.
long uniform_int(Rng& rng, long lo, long hi);

}  // namespace zw
