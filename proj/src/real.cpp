#include "zw/real.hpp"

#include <algorithm>
#include <cfloat>
#include <climits>
#include <cmath>
#include <ostream>
#include <vector>

#include "zw/errors.hpp"

namespace zw {

namespace {

constexpr double kUpFactor = 1.0 + 4.0 * DBL_EPSILON;

Precision max_prec(const Real& a, const Real& b) {
  return std::max(a.precision(), b.precision());
}

// Upper bound on the rounding error of a correctly rounded result x.
double ulp_bound(const Real& x) {
  if (x.is_zero()) return 0.0;
  const long e = x.exponent();
  const long p = static_cast<long>(x.precision());
  const long shift = e + 1 - p;
  if (shift < DBL_MIN_EXP - DBL_MANT_DIG) return DBL_TRUE_MIN;
  return std::ldexp(1.0, static_cast<int>(std::min<long>(shift, DBL_MAX_EXP)));
}

}  // namespace

double add_up(double a, double b) {
  const double s = a + b;
  return s == 0.0 ? 0.0 : s * kUpFactor;
}
double mul_up(double a, double b) {
  const double s = a * b;
  return s == 0.0 ? 0.0 : s * kUpFactor;
}
double div_up(double a, double b) {
  const double s = a / b;
  return s == 0.0 ? 0.0 : s * kUpFactor;
}

Real::Real(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Integer& value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_z(value_, value.backend().data(), MPFR_RNDN);
}

Real::Real(const Rational& value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, value.backend().data(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, Precision prec) {
  Real r(prec);
  const std::string s(text);
  if (s.empty() || mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw ParseError("decimal", "cannot parse '" + s + "' as a real number");
  }
  return r;
}

long Real::exponent() const {
  if (is_zero()) return LONG_MIN;
  return mpfr_get_exp(value_);
}

double Real::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

double Real::abs_upper() const {
  Real a(precision());
  mpfr_abs(a.value_, value_, MPFR_RNDN);
  return mpfr_get_d(a.value_, MPFR_RNDU);
}

double Real::abs_lower() const {
  Real a(precision());
  mpfr_abs(a.value_, value_, MPFR_RNDN);
  return mpfr_get_d(a.value_, MPFR_RNDD);
}

std::string Real::to_string(int digits) const {
  if (is_zero()) return "0";
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real operator+(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()); }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()); }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()); }

#define ZW_UNARY(name, call)                     \
  Real name(const Real& x) {                     \
    Real r(x.precision());                       \
    call(r.get(), x.get(), MPFR_RNDN);           \
    return r;                                    \
  }
ZW_UNARY(abs, mpfr_abs)
ZW_UNARY(sqrt, mpfr_sqrt)
ZW_UNARY(exp, mpfr_exp)
ZW_UNARY(log, mpfr_log)
ZW_UNARY(sin, mpfr_sin)
ZW_UNARY(cos, mpfr_cos)
#undef ZW_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(max_prec(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(max_prec(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real round(const Real& x) {
  Real r(x.precision());
  mpfr_round(r.get(), x.get());
  return r;
}

Real pi_real(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real with_precision(const Real& x, Precision prec) {
  Real r(prec);
  mpfr_set(r.get(), x.get(), MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  return os << x.to_string(static_cast<int>(os.precision()));
}

// ---------------------------------------------------------------- Ball

Ball::Ball(Real mid, double rad) : mid_(std::move(mid)), rad_(rad) {}

Ball::Ball(const Rational& value, Precision prec) : mid_(prec), rad_(0.0) {
  const int inexact = mpfr_set_q(mid_.get(), value.backend().data(), MPFR_RNDN);
  if (inexact != 0) rad_ = ulp_bound(mid_);
}

double Ball::mag() const { return add_up(mid_.abs_upper(), rad_); }

double Ball::mig() const {
  const double m = mid_.abs_lower() - rad_;
  return m > 0.0 ? m / kUpFactor : 0.0;
}

bool Ball::contains_zero() const { return mid_.abs_lower() <= rad_; }

bool Ball::overlaps(const Ball& other) const {
  return (*this - other).contains_zero();
}

Ball& Ball::add_error(double e) {
  rad_ = add_up(rad_, std::fabs(e));
  return *this;
}

Ball& Ball::operator+=(const Ball& rhs) {
  mid_ = mid_ + rhs.mid_;
  rad_ = add_up(add_up(rad_, rhs.rad_), ulp_bound(mid_));
  return *this;
}

Ball& Ball::operator-=(const Ball& rhs) {
  mid_ = mid_ - rhs.mid_;
  rad_ = add_up(add_up(rad_, rhs.rad_), ulp_bound(mid_));
  return *this;
}

Ball& Ball::operator*=(const Ball& rhs) {
  const double a = mid_.abs_upper();
  const double b = rhs.mid_.abs_upper();
  const double r = add_up(add_up(mul_up(a, rhs.rad_), mul_up(b, rad_)), mul_up(rad_, rhs.rad_));
  mid_ = mid_ * rhs.mid_;
  rad_ = add_up(r, ulp_bound(mid_));
  return *this;
}

Ball& Ball::operator/=(const Ball& rhs) {
  const double lower = rhs.mig();
  if (!(lower > 0.0)) throw PrecisionError("ball division by a ball containing zero");
  mid_ = mid_ / rhs.mid_;
  // |a'/b' - a/b| <= (ra + |a/b| rb) / (|b| - rb)
  const double q = mid_.abs_upper();
  rad_ = add_up(div_up(add_up(rad_, mul_up(q, rhs.rad_)), lower), ulp_bound(mid_));
  return *this;
}

Ball operator+(Ball a, const Ball& b) { return a += b; }
Ball operator-(Ball a, const Ball& b) { return a -= b; }
Ball operator*(Ball a, const Ball& b) { return a *= b; }
Ball operator/(Ball a, const Ball& b) { return a /= b; }

Ball abs(const Ball& x) { return Ball(abs(x.mid()), x.rad()); }

Ball sqrt(const Ball& x) {
  const double lower = x.mig();
  if (x.mid().sign() < 0 || (x.rad() > 0.0 && !(lower > 0.0))) {
    throw PrecisionError("sqrt of a ball that is not strictly positive");
  }
  Real m = sqrt(x.mid());
  double r = x.rad() > 0.0 ? div_up(x.rad(), std::sqrt(lower)) : 0.0;
  return Ball(m, add_up(r, ulp_bound(m)));
}

Ball exp(const Ball& x) {
  Real m = exp(x.mid());
  const double r = mul_up(m.abs_upper(), std::expm1(x.rad()) * kUpFactor);
  return Ball(m, add_up(r, ulp_bound(m)));
}

Ball log(const Ball& x) {
  const double lower = x.mig();
  if (x.mid().sign() <= 0 || !(lower > 0.0)) throw PrecisionError("log of a nonpositive ball");
  Real m = log(x.mid());
  const double r = x.rad() > 0.0 ? div_up(x.rad(), lower) : 0.0;
  return Ball(m, add_up(r, ulp_bound(m)));
}

Ball sin(const Ball& x) {
  Real m = sin(x.mid());
  return Ball(m, add_up(x.rad(), ulp_bound(m)));
}

Ball cos(const Ball& x) {
  Real m = cos(x.mid());
  return Ball(m, add_up(x.rad(), ulp_bound(m)));
}

Ball pow(const Ball& x, const Ball& y) { return exp(y * log(x)); }

Ball pow(const Ball& x, long n) {
  if (n < 0) return Ball(1L, x.precision()) / pow(x, -n);
  Ball result(1L, x.precision());
  Ball base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Ball pi_ball(Precision prec) {
  Real p = pi_real(prec);
  const double r = ulp_bound(p);
  return Ball(std::move(p), r);
}

std::ostream& operator<<(std::ostream& os, const Ball& x) {
  return os << '[' << x.mid() << " +/- " << x.rad() << ']';
}

// --------------------------------------------------------- ComplexBall

ComplexBall::ComplexBall(Real re, Real im, double rad)
    : re_(std::move(re)), im_(std::move(im)), rad_(rad) {}

ComplexBall::ComplexBall(int value)
    : re_(static_cast<long>(value), kDefaultPrecision), im_(kDefaultPrecision), rad_(0.0) {}

ComplexBall::ComplexBall(const Ball& real)
    : re_(real.mid()), im_(real.precision()), rad_(real.rad()) {}

ComplexBall::ComplexBall(const Ball& re, const Ball& im)
    : re_(re.mid()), im_(im.mid()), rad_(add_up(re.rad(), im.rad())) {}

ComplexBall::ComplexBall(const Rational& value, Precision prec)
    : ComplexBall(Ball(value, prec)) {}

ComplexBall ComplexBall::i(Precision prec) { return ComplexBall(Real(prec), Real(1L, prec)); }

Precision ComplexBall::precision() const { return std::max(re_.precision(), im_.precision()); }

double ComplexBall::mag() const {
  return add_up(std::hypot(re_.abs_upper(), im_.abs_upper()) * kUpFactor, rad_);
}

double ComplexBall::mig() const {
  const double m = std::hypot(re_.abs_lower(), im_.abs_lower()) / kUpFactor - rad_;
  return m > 0.0 ? m / kUpFactor : 0.0;
}

bool ComplexBall::contains_zero() const { return !(mig() > 0.0); }

Ball ComplexBall::abs() const {
  Real m = sqrt(re_ * re_ + im_ * im_);
  return Ball(m, add_up(rad_, 4.0 * ulp_bound(m)));
}

ComplexBall ComplexBall::operator-() const { return ComplexBall(-re_, -im_, rad_); }

ComplexBall ComplexBall::conj() const { return ComplexBall(re_, -im_, rad_); }

ComplexBall& ComplexBall::add_error(double e) {
  rad_ = add_up(rad_, std::fabs(e));
  return *this;
}

ComplexBall& ComplexBall::operator+=(const ComplexBall& rhs) {
  re_ = re_ + rhs.re_;
  im_ = im_ + rhs.im_;
  rad_ = add_up(add_up(rad_, rhs.rad_), add_up(ulp_bound(re_), ulp_bound(im_)));
  return *this;
}

ComplexBall& ComplexBall::operator-=(const ComplexBall& rhs) {
  re_ = re_ - rhs.re_;
  im_ = im_ - rhs.im_;
  rad_ = add_up(add_up(rad_, rhs.rad_), add_up(ulp_bound(re_), ulp_bound(im_)));
  return *this;
}

ComplexBall& ComplexBall::operator*=(const ComplexBall& rhs) {
  const double a = std::hypot(re_.abs_upper(), im_.abs_upper()) * kUpFactor;
  const double b = std::hypot(rhs.re_.abs_upper(), rhs.im_.abs_upper()) * kUpFactor;
  const double prop = add_up(add_up(mul_up(a, rhs.rad_), mul_up(b, rad_)), mul_up(rad_, rhs.rad_));
  Real re = re_ * rhs.re_ - im_ * rhs.im_;
  Real im = re_ * rhs.im_ + im_ * rhs.re_;
  // Each component is two products and a sum, each correctly rounded.
  const Precision p = std::max(precision(), rhs.precision());
  const double rounding = std::ldexp(mul_up(a, b), 3 - static_cast<int>(p));
  re_ = std::move(re);
  im_ = std::move(im);
  rad_ = add_up(prop, add_up(rounding, add_up(ulp_bound(re_), ulp_bound(im_))));
  return *this;
}

ComplexBall& ComplexBall::operator/=(const ComplexBall& rhs) {
  const double lower = rhs.mig();
  if (!(lower > 0.0)) throw PrecisionError("complex division by a disk containing zero");
  const Precision p = std::max(precision(), rhs.precision());
  Real n2 = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
  Real inv_re = rhs.re_ / n2;
  Real inv_im = -rhs.im_ / n2;
  const double inv_abs = std::hypot(inv_re.abs_upper(), inv_im.abs_upper()) * kUpFactor;
  // |1/b' - 1/b| <= rb / (|b| (|b| - rb))
  double inv_rad = rhs.rad_ > 0.0 ? div_up(mul_up(rhs.rad_, inv_abs), lower) : 0.0;
  inv_rad = add_up(inv_rad, std::ldexp(inv_abs, 4 - static_cast<int>(p)));
  ComplexBall inverse(std::move(inv_re), std::move(inv_im), inv_rad);
  return *this *= inverse;
}

ComplexBall operator+(ComplexBall a, const ComplexBall& b) { return a += b; }
ComplexBall operator-(ComplexBall a, const ComplexBall& b) { return a -= b; }
ComplexBall operator*(ComplexBall a, const ComplexBall& b) { return a *= b; }
ComplexBall operator/(ComplexBall a, const ComplexBall& b) { return a /= b; }

ComplexBall exp(const ComplexBall& z) {
  const Precision p = z.precision();
  Real m = exp(z.re());
  Real re = m * cos(z.im());
  Real im = m * sin(z.im());
  const double scale = m.abs_upper();
  const double prop = mul_up(scale, std::expm1(z.rad()) * kUpFactor);
  const double rounding = std::ldexp(scale, 4 - static_cast<int>(p));
  return ComplexBall(std::move(re), std::move(im), add_up(prop, rounding));
}

ComplexBall log(const ComplexBall& z) {
  const double lower = z.mig();
  if (!(lower > 0.0)) throw PrecisionError("log of a disk containing zero");
  if (z.re().sign() < 0 && z.im().abs_lower() <= z.rad()) {
    throw PrecisionError("log of a disk meeting the branch cut");
  }
  const Precision p = z.precision();
  Real modulus = sqrt(z.re() * z.re() + z.im() * z.im());
  Real re = log(modulus);
  Real im = atan2(z.im(), z.re());
  double r = z.rad() > 0.0 ? div_up(z.rad(), lower) : 0.0;
  // sqrt, log and atan2 each round once; |arg| <= pi < 4.
  const double rounding = std::ldexp(add_up(std::fabs(re.to_double()), 8.0), 3 - static_cast<int>(p));
  return ComplexBall(std::move(re), std::move(im), add_up(r, rounding));
}

ComplexBall sin(const ComplexBall& z) {
  const ComplexBall iz = ComplexBall::i(z.precision()) * z;
  const ComplexBall two_i(Real(z.precision()), Real(2L, z.precision()));
  return (exp(iz) - exp(-iz)) / two_i;
}

ComplexBall pow(const ComplexBall& z, long n) {
  if (n < 0) return ComplexBall(Ball(1L, z.precision())) / pow(z, -n);
  ComplexBall result(Ball(1L, z.precision()));
  ComplexBall base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

ComplexBall sqrt(const ComplexBall& z) {
  if (z.im().is_zero() && z.re().sign() >= 0 && z.rad() == 0.0) {
    const Ball r = sqrt(Ball(z.re()));
    return ComplexBall(r);
  }
  ComplexBall half = log(z);
  half *= ComplexBall(Ball(Rational(1, 2), z.precision()));
  return exp(half);
}

ComplexBall with_precision(const ComplexBall& z, Precision prec) {
  Real re = with_precision(z.re(), prec);
  Real im = with_precision(z.im(), prec);
  const double r = add_up(z.rad(), add_up(ulp_bound(re), ulp_bound(im)));
  return ComplexBall(std::move(re), std::move(im), r);
}

Ball with_precision(const Ball& x, Precision prec) {
  Real m = with_precision(x.mid(), prec);
  const double r = add_up(x.rad(), ulp_bound(m));
  return Ball(std::move(m), r);
}

std::ostream& operator<<(std::ostream& os, const ComplexBall& z) {
  return os << '(' << z.re() << (z.im().sign() < 0 ? " - " : " + ") << abs(z.im()) << "i +/- "
            << z.rad() << ')';
}

}  // namespace zw
