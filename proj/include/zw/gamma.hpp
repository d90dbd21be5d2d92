#pragma once

// Gamma function: exact leading Laurent coefficients at integers and
// half-integers, the archimedean factors Gamma_R and Gamma_C, and a
// high-precision evaluator with a rigorous error radius.

#include <string>

#include "zw/comparison.hpp"
#include "zw/real.hpp"
#include "zw/types.hpp"

namespace zw {

// coeff * pi^(pi_half_exponent / 2) * i^i_exponent.  Normalized so that
// i_exponent is 0 or 1 (the sign of i^2 is folded into coeff).
class ExactGammaValue {
 public:
  ExactGammaValue() : coeff_(1) {}
  ExactGammaValue(Rational coeff, long pi_half_exponent = 0, long i_exponent = 0);

  static ExactGammaValue pi_power(long pi_half_exponent) { return ExactGammaValue(Rational(1), pi_half_exponent); }
  // (2 pi i)^k
  static ExactGammaValue two_pi_i(long k);

  const Rational& coeff() const { return coeff_; }
  long pi_half_exponent() const { return pi_half_exponent_; }
  long i_exponent() const { return i_exponent_; }

  ExactGammaValue inverse() const;
  ExactGammaValue pow(long n) const;
  ExactGammaValue& operator*=(const ExactGammaValue& rhs);
  ExactGammaValue& operator/=(const ExactGammaValue& rhs) { return *this *= rhs.inverse(); }

  // Numeric value (real or purely imaginary part as a ball).
  ComplexBall to_ball(Precision prec) const;
  std::string to_string() const;

  friend bool operator==(const ExactGammaValue& a, const ExactGammaValue& b) {
    return a.coeff_ == b.coeff_ && a.pi_half_exponent_ == b.pi_half_exponent_ && a.i_exponent_ == b.i_exponent_;
  }

 private:
  void normalize();
  Rational coeff_;
  long pi_half_exponent_ = 0;
  long i_exponent_ = 0;
};

inline ExactGammaValue operator*(ExactGammaValue a, const ExactGammaValue& b) { return a *= b; }
inline ExactGammaValue operator/(ExactGammaValue a, const ExactGammaValue& b) { return a /= b; }

// Leading coefficient and order (negative for a pole) of a Laurent expansion.
struct GammaLeading {
  ExactGammaValue leading;
  long order = 0;
};

// Gamma*(r) for an integer r: (r-1)! for r >= 1, the residue (-1)^n/n! at r = -n.
ExactGammaValue gamma_star_int(long r);
// Gamma(two_r / 2) for odd two_r; Gamma has no poles at half-integers.
ExactGammaValue gamma_star_half(long two_r);
// Gamma*(num/2) for any integer num, with the pole order at nonpositive integers.
GammaLeading gamma_star_halves(long num);

// Gamma_R(s) = pi^(-s/2) Gamma(s/2) at s = r.
GammaLeading gamma_R_star(long r);
// Gamma_C(s) = (2 pi)^(-s) Gamma(s) at s = r.
GammaLeading gamma_C_star(long r);

// Gamma(s) with radius <= 2^(8 - prec) |Gamma(s)| for exact input.
// Throws PoleError if the input disk meets a nonpositive integer.
ComplexBall gamma_numeric(const ComplexBall& s, Precision prec);
Ball gamma_numeric(const Ball& s, Precision prec);

struct IdentityCheck {
  bool passed = false;     // the two sides overlap as balls
  double deviation = 0.0;  // |lhs - rhs| / |rhs| at the midpoints
  std::string notes;
};

// Gamma(z) Gamma(1 - z) = pi / sin(pi z) at z = num / den.
IdentityCheck check_reflection(long num, long den, Precision prec);
// Gamma(z) Gamma(z + 1/2) = 2^(1 - 2z) Gamma(2z) sqrt(pi).
IdentityCheck check_duplication(const ComplexBall& z, Precision prec);

// Gamma*(r) Gamma*(r/2)^-1 Gamma*((1-r)/2) equals +-2^k sqrt(pi) for even r
// and +-2^k / sqrt(pi) for odd r.  Decided exactly.
ComparisonReport check_gamma_quotient(long r);
ExactGammaValue gamma_quotient_value(long r);

}  // namespace zw
