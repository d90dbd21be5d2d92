#pragma once

// Comparison of nonzero quantities "up to sign and powers of 2": x and y
// match when log2|x/y| is an integer k.

#include <optional>
#include <string>

#include "zw/real.hpp"
#include "zw/types.hpp"

namespace zw {

struct ComparisonReport {
  std::string lhs;
  std::string rhs;
  double ratio = 0.0;             // |lhs / rhs|
  double log2_ratio = 0.0;
  double nearest_int_deviation = 0.0;
  std::optional<long> k;          // nearest integer to log2_ratio
  bool passed = false;
  double tolerance = 0.0;
  bool exact = false;             // decided by exact arithmetic, tolerance unused
  std::optional<double> deviation;  // absolute difference, for checks of the form |x - y| < tol
  std::string notes;
};

// Numeric comparison on balls.  The deviation includes the ball radii, so a
// pass certifies |log2|x/y| - k| <= tol for every point of the balls.
// Throws ZeroComparandError if either ball contains zero.
ComparisonReport compare_up_to_sign_and_two(const Ball& x, const Ball& y, double tol);

// True iff q = +-2^k for some integer k; sets k.
bool is_signed_power_of_two(const Rational& q, long& k);

// Exact comparison of nonzero rationals.
ComparisonReport compare_exact_up_to_sign_and_two(const Rational& x, const Rational& y);

std::string to_string(const Rational& q);

}  // namespace zw
