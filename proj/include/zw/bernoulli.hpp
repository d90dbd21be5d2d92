#pragma once

#include "zw/types.hpp"

namespace zw {

// B_n with the convention B_1 = -1/2.  Results are cached; safe to call
// from several threads.
const Rational& bernoulli(long n);

}  // namespace zw
