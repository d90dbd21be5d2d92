#include "zw/comparison.hpp"

#include <cmath>

#include "zw/errors.hpp"

namespace zw {

ComparisonReport compare_up_to_sign_and_two(const Ball& x, const Ball& y, double tol) {
  if (x.contains_zero()) throw ZeroComparandError("left comparand contains zero: " + x.mid().to_string());
  if (y.contains_zero()) throw ZeroComparandError("right comparand contains zero: " + y.mid().to_string());
  ComparisonReport rep;
  rep.lhs = x.mid().to_string(25);
  rep.rhs = y.mid().to_string(25);
  rep.tolerance = tol;
  const Precision p = std::max(x.precision(), y.precision());
  const Real q = abs(x.mid()) / abs(y.mid());
  const Real l2 = log(q) / log(Real(2L, p));
  const Real k = round(l2);
  rep.ratio = q.to_double();
  rep.log2_ratio = l2.to_double();
  rep.k = static_cast<long>(k.to_double());
  // Relative radii bound the uncertainty in log2 (|log(1+e)| <= 2e for e <= 1/2).
  const double ex = x.rad() / x.mig();
  const double ey = y.rad() / y.mig();
  const double spread = (ex <= 0.5 && ey <= 0.5) ? 2.0 * (ex + ey) / std::log(2.0) : INFINITY;
  rep.nearest_int_deviation = add_up(std::fabs((l2 - k).to_double()), spread);
  rep.passed = rep.nearest_int_deviation <= tol;
  return rep;
}

bool is_signed_power_of_two(const Rational& q, long& k) {
  if (q == 0) return false;
  Integer n = numerator(q);
  Integer d = denominator(q);
  if (n < 0) n = -n;
  auto pow2 = [](const Integer& v, long& e) {
    if (v <= 0) return false;
    const unsigned long bit = boost::multiprecision::lsb(v);
    if (v != (Integer(1) << bit)) return false;
    e = static_cast<long>(bit);
    return true;
  };
  long en = 0, ed = 0;
  if (!pow2(n, en) || !pow2(d, ed)) return false;
  k = en - ed;
  return true;
}

ComparisonReport compare_exact_up_to_sign_and_two(const Rational& x, const Rational& y) {
  if (x == 0) throw ZeroComparandError("left comparand is zero");
  if (y == 0) throw ZeroComparandError("right comparand is zero");
  ComparisonReport rep;
  rep.lhs = to_string(x);
  rep.rhs = to_string(y);
  rep.exact = true;
  const Rational q = x / y;
  rep.ratio = std::fabs(q.convert_to<double>());
  rep.log2_ratio = std::log2(rep.ratio);
  long k = 0;
  if (is_signed_power_of_two(q, k)) {
    rep.k = k;
    rep.passed = true;
    rep.nearest_int_deviation = 0.0;
  } else {
    rep.nearest_int_deviation = std::fabs(rep.log2_ratio - std::round(rep.log2_ratio));
    rep.passed = false;
  }
  return rep;
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace zw
