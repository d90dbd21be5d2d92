#pragma once

// Arbitrary-precision reals (a thin RAII layer over MPFR) and ball
// arithmetic on top of them.  A Ball is a midpoint with an absolute error
// radius; every operation widens the radius by the propagated input error
// plus the rounding error of the midpoint computation, so the true value is
// always contained in [mid - rad, mid + rad].

#include <mpfr.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "zw/types.hpp"

namespace zw {

using Precision = mpfr_prec_t;
inline constexpr Precision kDefaultPrecision = 256;

class Real {
 public:
  Real() : Real(kDefaultPrecision) {}
  explicit Real(Precision prec);
  Real(long value, Precision prec);
  Real(int value, Precision prec) : Real(static_cast<long>(value), prec) {}
  Real(double value, Precision prec);
  Real(const Integer& value, Precision prec);
  Real(const Rational& value, Precision prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  // Parses a decimal string such as "0.8813735870195430252".
  static Real parse(std::string_view text, Precision prec);

  Precision precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  // Binary exponent e with 0.5 <= |x| / 2^e < 1 (zero maps to LONG_MIN).
  long exponent() const;

  double to_double() const;
  // |x| rounded upwards to a double.
  double abs_upper() const;
  // |x| rounded downwards to a double.
  double abs_lower() const;
  std::string to_string(int digits = 30) const;

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

 private:
  mpfr_t value_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real ldexp(const Real& x, long e);
Real floor(const Real& x);
Real round(const Real& x);
Real pi_real(Precision prec);
// Rounds to a different precision (correctly rounded).
Real with_precision(const Real& x, Precision prec);

std::ostream& operator<<(std::ostream& os, const Real& x);

// Adds a nonnegative double to a radius, rounding upwards.
double add_up(double a, double b);
double mul_up(double a, double b);
double div_up(double a, double b);

class Ball {
 public:
  Ball() : mid_(), rad_(0.0) {}
  explicit Ball(Real mid, double rad = 0.0);
  Ball(long value, Precision prec) : mid_(value, prec), rad_(0.0) {}
  Ball(int value, Precision prec) : mid_(static_cast<long>(value), prec), rad_(0.0) {}
  Ball(const Rational& value, Precision prec);

  const Real& mid() const { return mid_; }
  double rad() const { return rad_; }
  Precision precision() const { return mid_.precision(); }

  // Upper bound on |x|.
  double mag() const;
  // Lower bound on |x| (zero when the ball contains zero).
  double mig() const;
  bool contains_zero() const;
  // True when the ball lies inside the closed ball of radius `tol` around zero.
  bool is_within(double tol) const { return mag() <= tol; }
  bool overlaps(const Ball& other) const;

  Ball operator-() const { return Ball(-mid_, rad_); }
  Ball& operator+=(const Ball& rhs);
  Ball& operator-=(const Ball& rhs);
  Ball& operator*=(const Ball& rhs);
  Ball& operator/=(const Ball& rhs);

  Ball& add_error(double e);

 private:
  Real mid_;
  double rad_;
};

Ball operator+(Ball a, const Ball& b);
Ball operator-(Ball a, const Ball& b);
Ball operator*(Ball a, const Ball& b);
Ball operator/(Ball a, const Ball& b);

Ball abs(const Ball& x);
Ball sqrt(const Ball& x);
Ball exp(const Ball& x);
Ball log(const Ball& x);
Ball sin(const Ball& x);
Ball cos(const Ball& x);
Ball pow(const Ball& x, const Ball& y);
Ball pow(const Ball& x, long n);
Ball pi_ball(Precision prec);

std::ostream& operator<<(std::ostream& os, const Ball& x);

// A complex disk: midpoint re + i*im and an absolute error radius.
// This is the high-precision complex scalar used throughout the library.
class ComplexBall {
 public:
  ComplexBall() : re_(), im_(), rad_(0.0) {}
  ComplexBall(Real re, Real im, double rad = 0.0);
  // Eigen initialises scalars from integer literals.
  ComplexBall(int value);  // NOLINT(google-explicit-constructor)
  explicit ComplexBall(const Ball& real);
  ComplexBall(const Ball& re, const Ball& im);
  ComplexBall(const Rational& value, Precision prec);

  static ComplexBall i(Precision prec);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  double rad() const { return rad_; }
  Precision precision() const;

  Ball real() const { return Ball(re_, rad_); }
  Ball imag() const { return Ball(im_, rad_); }

  double mag() const;
  double mig() const;
  bool contains_zero() const;
  bool is_within(double tol) const { return mag() <= tol; }
  // Upper bound on the modulus as a Ball (|z| as a real ball).
  Ball abs() const;

  ComplexBall operator-() const;
  ComplexBall conj() const;
  ComplexBall& operator+=(const ComplexBall& rhs);
  ComplexBall& operator-=(const ComplexBall& rhs);
  ComplexBall& operator*=(const ComplexBall& rhs);
  ComplexBall& operator/=(const ComplexBall& rhs);

  ComplexBall& add_error(double e);

 private:
  Real re_;
  Real im_;
  double rad_;
};

ComplexBall operator+(ComplexBall a, const ComplexBall& b);
ComplexBall operator-(ComplexBall a, const ComplexBall& b);
ComplexBall operator*(ComplexBall a, const ComplexBall& b);
ComplexBall operator/(ComplexBall a, const ComplexBall& b);

// Identity of representations (midpoints and radii), not of enclosed sets.
inline bool operator==(const ComplexBall& a, const ComplexBall& b) {
  return a.re() == b.re() && a.im() == b.im() && a.rad() == b.rad();
}

ComplexBall exp(const ComplexBall& z);
// Principal branch; throws PrecisionError if the disk meets the cut.
ComplexBall log(const ComplexBall& z);
ComplexBall sin(const ComplexBall& z);
ComplexBall pow(const ComplexBall& z, long n);
ComplexBall sqrt(const ComplexBall& z);
// Rounds the midpoint to `prec` bits, widening the radius accordingly.
ComplexBall with_precision(const ComplexBall& z, Precision prec);
Ball with_precision(const Ball& x, Precision prec);

std::ostream& operator<<(std::ostream& os, const ComplexBall& z);

}  // namespace zw

namespace Eigen {
template <>
struct NumTraits<zw::ComplexBall> : GenericNumTraits<zw::ComplexBall> {
  using Real = zw::ComplexBall;
  using NonInteger = zw::ComplexBall;
  using Nested = zw::ComplexBall;
  using Literal = zw::ComplexBall;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
};
}  // namespace Eigen
