#pragma once

// Hurwitz zeta by Euler-Maclaurin with a certified remainder, Dirichlet
// L-functions of Kronecker characters, Riemann and Dedekind zeta of Q and
// quadratic fields on the real line, leading Laurent coefficients at
// integers and the completed function phi(s).

#include <string>
#include <vector>

#include "zw/comparison.hpp"
#include "zw/number_field.hpp"
#include "zw/real.hpp"

namespace zw {

struct EvalPrecision {
  Precision working_bits = 256;
  long euler_maclaurin_terms = 0;  // 0: chosen from the remainder bound
  long cutoff_N = 0;               // 0: chosen from the remainder bound
  double target_log2_error = 0.0;  // 0: -(working_bits - 40)

  double target() const {
    return target_log2_error != 0.0 ? target_log2_error : -static_cast<double>(working_bits) + 40.0;
  }
};

// zeta(s, a) for real s != 1 and rational a in (0, 1].  PoleError at s = 1,
// PrecisionError if explicitly configured N, M miss the target.
Ball hurwitz_zeta(const Ball& s, const Rational& a, const EvalPrecision& p = {});

struct KroneckerCharacter {
  long discriminant = 1;
  long modulus = 1;
  std::vector<int> values;  // values[n mod modulus]

  static KroneckerCharacter of(long d);
  int operator()(long n) const;
  bool principal() const { return modulus == 1; }
};

int kronecker_symbol(long d, long n);

// L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q); s = 1 is allowed for
// nonprincipal chi.
Ball dirichlet_L(const Ball& s, const KroneckerCharacter& chi, const EvalPrecision& p = {});
Ball riemann_zeta(const Ball& s, const EvalPrecision& p = {});
// zeta(s) L(s, chi_d) for d != 1, zeta(s) for d = 1.
Ball dedekind_zeta(long d_F, const Ball& s, const EvalPrecision& p = {});

struct LaurentLeading {
  long order = 0;
  Ball leading;
  double slope = 0.0;
  double slope_residual = 0.0;
  double extrapolation_delta = 0.0;
  std::vector<double> epsilons_log2;
};

// Order from the slope of log|zeta_F(r + eps)| against log eps on the ladder
// eps_k = 2^(-10-4k) (OrderDetectionError beyond 0.05 from an integer), then
// lim zeta_F(s) (s - r)^-order by polynomial extrapolation in eps.
LaurentLeading leading_term(long d_F, long r, const EvalPrecision& p = {}, int ladder = 6);

// phi(s) = Gamma(s/2)^r1 Gamma(s)^r2 (2^-r2 sqrt|d| pi^(-n/2))^s zeta_F(s).
Ball completed_phi(long d_F, const Ball& s, const EvalPrecision& p = {});

// Largest |phi(s) - phi(1 - s)| over the points, including ball radii.
ComparisonReport check_functional_equation(long d_F, const std::vector<Rational>& points,
                                           const EvalPrecision& p = {}, double tol = 1e-10);

// r < 0: rank K_{1-2r}; r = 0: r1 + r2 - 1; r = 1: -1; r > 1: 0.
long expected_vanishing_order(const Signature& sig, long r, const KGroupTable& k);

}  // namespace zw
