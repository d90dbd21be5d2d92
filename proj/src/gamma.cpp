#include "zw/gamma.hpp"

#include <cmath>
#include <sstream>

#include "zw/bernoulli.hpp"
#include "zw/errors.hpp"

namespace zw {

// ------------------------------------------------------ ExactGammaValue

ExactGammaValue::ExactGammaValue(Rational coeff, long pi_half_exponent, long i_exponent)
    : coeff_(std::move(coeff)), pi_half_exponent_(pi_half_exponent), i_exponent_(i_exponent) {
  if (coeff_ == 0) throw std::invalid_argument("ExactGammaValue coefficient must be nonzero");
  normalize();
}

void ExactGammaValue::normalize() {
  long e = i_exponent_ % 4;
  if (e < 0) e += 4;
  if (e >= 2) {
    coeff_ = -coeff_;
    e -= 2;
  }
  i_exponent_ = e;
}

ExactGammaValue ExactGammaValue::two_pi_i(long k) {
  Rational c = k >= 0 ? Rational(Integer(1) << static_cast<unsigned>(k))
                      : Rational(1) / Rational(Integer(1) << static_cast<unsigned>(-k));
  return ExactGammaValue(c, 2 * k, k);
}

ExactGammaValue ExactGammaValue::inverse() const {
  // 1/i = -i
  Rational c = Rational(1) / coeff_;
  if (i_exponent_ == 1) c = -c;
  return ExactGammaValue(c, -pi_half_exponent_, i_exponent_);
}

ExactGammaValue ExactGammaValue::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  ExactGammaValue r;
  for (long j = 0; j < n; ++j) r *= *this;
  return r;
}

ExactGammaValue& ExactGammaValue::operator*=(const ExactGammaValue& rhs) {
  coeff_ *= rhs.coeff_;
  pi_half_exponent_ += rhs.pi_half_exponent_;
  i_exponent_ += rhs.i_exponent_;
  normalize();
  return *this;
}

ComplexBall ExactGammaValue::to_ball(Precision prec) const {
  Ball v(coeff_, prec);
  const Ball sqrt_pi = sqrt(pi_ball(prec));
  v *= zw::pow(sqrt_pi, pi_half_exponent_);
  if (i_exponent_ == 0) return ComplexBall(v);
  return ComplexBall(Ball(0L, prec), v);
}

std::string ExactGammaValue::to_string() const {
  std::ostringstream os;
  os << coeff_.str();
  if (pi_half_exponent_ % 2 == 0) {
    if (pi_half_exponent_ != 0) os << "*pi^" << pi_half_exponent_ / 2;
  } else {
    os << "*pi^(" << pi_half_exponent_ << "/2)";
  }
  if (i_exponent_ == 1) os << "*i";
  return os.str();
}

// ------------------------------------------------------ exact leading terms

ExactGammaValue gamma_star_int(long r) {
  if (r >= 1) return ExactGammaValue(Rational(factorial(r - 1)));
  const long n = -r;
  Rational c = Rational(1) / Rational(factorial(n));
  if (n % 2 == 1) c = -c;
  return ExactGammaValue(c);
}

ExactGammaValue gamma_star_half(long two_r) {
  if (two_r % 2 == 0) throw std::invalid_argument("gamma_star_half needs an odd numerator");
  if (two_r > 0) {
    // Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    const long n = (two_r - 1) / 2;
    Rational c = Rational(factorial(2 * n)) / Rational(Integer(factorial(n)) * (Integer(1) << static_cast<unsigned>(2 * n)));
    return ExactGammaValue(c, 1);
  }
  // Gamma(1/2 - n) = (-4)^n n! / (2n)! sqrt(pi)
  const long n = (1 - two_r) / 2;
  Rational c = Rational(Integer(factorial(n)) * (Integer(1) << static_cast<unsigned>(2 * n))) / Rational(factorial(2 * n));
  if (n % 2 == 1) c = -c;
  return ExactGammaValue(c, 1);
}

GammaLeading gamma_star_halves(long num) {
  if (num % 2 != 0) return {gamma_star_half(num), 0};
  const long r = num / 2;
  return {gamma_star_int(r), r <= 0 ? -1 : 0};
}

GammaLeading gamma_R_star(long r) {
  // Near an even r <= 0, Gamma(s/2) ~ res / ((s - r)/2), so the leading
  // coefficient in (s - r) doubles.
  GammaLeading g = gamma_star_halves(r);
  g.leading *= ExactGammaValue::pi_power(-r);
  if (g.order < 0) g.leading *= ExactGammaValue(Rational(2));
  return g;
}

GammaLeading gamma_C_star(long r) {
  ExactGammaValue v = gamma_star_int(r);
  v *= ExactGammaValue::two_pi_i(-r);
  // two_pi_i carries i^-r; remove it again.
  v *= ExactGammaValue(Rational(1), 0, r);
  return {v, r <= 0 ? -1 : 0};
}

// ------------------------------------------------------ numeric Gamma

namespace {

ComplexBall from_long(long v, Precision p) { return ComplexBall(Real(v, p), Real(p)); }

// log2 |q|, safe for values outside the double range.
double log2_abs(const Rational& q) {
  const Real x(q, 64);
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return static_cast<double>(e) + std::log2(std::fabs(m));
}

void check_not_pole(const ComplexBall& s) {
  const double re = s.re().to_double();
  if (re > 0.5) return;
  const long n = std::lround(re);
  if (n > 0) return;
  const ComplexBall diff = s - from_long(n, s.precision());
  if (diff.contains_zero()) {
    throw PoleError("Gamma has a pole at " + std::to_string(n));
  }
}

}  // namespace

ComplexBall gamma_numeric(const ComplexBall& s, Precision prec) {
  check_not_pole(s);
  const Precision wp = prec + 32;
  const ComplexBall z = with_precision(s, wp);
  const long threshold = std::max<long>(20, static_cast<long>(std::ceil(0.15 * static_cast<double>(prec))) + 5);

  // Gamma(z) = Gamma(z + m) / (z (z+1) ... (z+m-1))
  const double re = s.re().to_double();
  long m = 0;
  if (re < static_cast<double>(threshold)) m = static_cast<long>(std::ceil(static_cast<double>(threshold) - re));
  ComplexBall prod = from_long(1, wp);
  for (long k = 0; k < m; ++k) prod *= z + from_long(k, wp);
  const ComplexBall w = z + from_long(m, wp);

  // Stirling series for log Gamma(w).
  const Ball half(Rational(1, 2), wp);
  const Ball two_pi = pi_ball(wp) * Ball(2L, wp);
  ComplexBall lg = (w - ComplexBall(half)) * log(w) - w + ComplexBall(log(two_pi) * half);

  const double wr = w.re().to_double(), wi = w.im().to_double();
  const double wabs = std::hypot(wr, wi) * (1.0 - 1e-12);
  const double cos_half_arg = std::sqrt((1.0 + wr / std::hypot(wr, wi)) / 2.0);
  const ComplexBall inv_w = from_long(1, wp) / w;
  const ComplexBall inv_w2 = inv_w * inv_w;
  // term_k = B_2k / (2k (2k-1)) w^-(2k-1), advanced by exact coefficient
  // ratios so no intermediate drops below the double range of the radius.
  ComplexBall term = ComplexBall(Ball(Rational(1, 12), wp)) * inv_w;
  const double target = -static_cast<double>(wp);
  double bound_log2 = 0.0;
  const long max_terms = static_cast<long>(M_PI * wabs);
  long k = 1;
  for (; k <= max_terms; ++k) {
    if (k > 1) {
      const Rational ratio = (bernoulli(2 * k) / Rational((2 * k) * (2 * k - 1))) /
                             (bernoulli(2 * k - 2) / Rational((2 * k - 2) * (2 * k - 3)));
      term = term * ComplexBall(ratio, wp) * inv_w2;
    }
    lg += term;
    // Remainder after k terms is bounded by the next term times sec^(2k+2)(arg/2).
    const long j = k + 1;
    bound_log2 = log2_abs(bernoulli(2 * j)) - std::log2(static_cast<double>((2 * j) * (2 * j - 1))) -
                 static_cast<double>(2 * j - 1) * std::log2(wabs) -
                 static_cast<double>(2 * j) * std::log2(cos_half_arg);
    if (bound_log2 < target) break;
  }
  if (bound_log2 >= target) throw PrecisionError("Stirling series did not reach the requested precision");
  lg.add_error(std::max(std::ldexp(1.0, static_cast<int>(std::floor(bound_log2)) + 1), 4.9e-324));
  const ComplexBall g = exp(lg) / prod;
  return with_precision(g, prec);
}

Ball gamma_numeric(const Ball& s, Precision prec) {
  const ComplexBall g = gamma_numeric(ComplexBall(s), prec);
  return Ball(g.re(), add_up(g.rad(), g.im().abs_upper()));
}

IdentityCheck check_reflection(long num, long den, Precision prec) {
  const Rational z(num, den);
  const Ball bz(z, prec + 16);
  const Ball one(1L, prec + 16);
  const Ball lhs = gamma_numeric(bz, prec + 16) * gamma_numeric(one - bz, prec + 16);
  const Ball pi = pi_ball(prec + 16);
  const Ball s = sin(pi * bz);
  if (s.contains_zero()) throw PoleError("reflection formula evaluated at an integer");
  const Ball rhs = pi / s;
  IdentityCheck c;
  const Ball diff = lhs - rhs;
  c.passed = diff.contains_zero();
  c.deviation = (abs(diff.mid()) / abs(rhs.mid())).to_double();
  return c;
}

IdentityCheck check_duplication(const ComplexBall& z, Precision prec) {
  const Precision wp = prec + 16;
  const ComplexBall zz = with_precision(z, wp);
  const ComplexBall half(Ball(Rational(1, 2), wp));
  const ComplexBall one = from_long(1, wp);
  const ComplexBall two = from_long(2, wp);
  const ComplexBall lhs = gamma_numeric(zz, wp) * gamma_numeric(zz + half, wp);
  const ComplexBall log2c(log(Ball(2L, wp)));
  const ComplexBall rhs = exp((one - two * zz) * log2c) * gamma_numeric(two * zz, wp) *
                          ComplexBall(sqrt(pi_ball(wp)));
  IdentityCheck c;
  const ComplexBall diff = lhs - rhs;
  c.passed = diff.contains_zero();
  const ComplexBall mid_diff(diff.re(), diff.im());
  c.deviation = rhs.mig() > 0.0 ? mid_diff.mag() / rhs.mig() : INFINITY;
  return c;
}

ExactGammaValue gamma_quotient_value(long r) {
  const ExactGammaValue a = gamma_star_int(r);
  const ExactGammaValue b = gamma_star_halves(r).leading;
  const ExactGammaValue c = gamma_star_halves(1 - r).leading;
  return a / b * c;
}

ComparisonReport check_gamma_quotient(long r) {
  const ExactGammaValue v = gamma_quotient_value(r);
  const long expected_pi = (r % 2 == 0) ? 1 : -1;
  ComparisonReport rep;
  rep.exact = true;
  rep.lhs = v.to_string();
  rep.rhs = expected_pi > 0 ? "+-2^k*pi^(1/2)" : "+-2^k*pi^(-1/2)";
  long k = 0;
  const bool two_power = is_signed_power_of_two(v.coeff(), k);
  rep.passed = two_power && v.pi_half_exponent() == expected_pi && v.i_exponent() == 0;
  if (two_power) rep.k = k;
  rep.ratio = std::fabs(v.coeff().convert_to<double>());
  rep.log2_ratio = std::log2(rep.ratio);
  rep.nearest_int_deviation = std::fabs(rep.log2_ratio - std::round(rep.log2_ratio));
  if (v.pi_half_exponent() != expected_pi) {
    rep.notes = "pi exponent " + std::to_string(v.pi_half_exponent()) + "/2, expected " +
                std::to_string(expected_pi) + "/2";
  }
  return rep;
}

}  // namespace zw
