#include "zw/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "zw/bernoulli.hpp"
#include "zw/errors.hpp"
#include "zw/gamma.hpp"

namespace zw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_up(double x) { return x <= 0.0 ? kNegInf : std::log2(x); }

// log2 of an upper bound on |(s)_n| for s in [sigma - rad, sigma + rad].
double log2_pochhammer(double sigma, double rad, long n) {
  double acc = 0.0;
  for (long j = 0; j < n; ++j) {
    const double f = std::fabs(sigma + static_cast<double>(j)) + rad;
    if (f == 0.0) return kNegInf;
    acc += std::log2(f);
  }
  return acc;
}

// |R| <= 4 |(s)_2M| / (2 pi)^2M * X^(-sigma-2M+1) / (sigma + 2M - 1).
double remainder_log2(double sigma, double rad, double x, long m) {
  const double lo = sigma - rad;
  const double denom = lo + 2.0 * static_cast<double>(m) - 1.0;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  const double poch = log2_pochhammer(sigma, rad, 2 * m);
  if (poch == kNegInf) return kNegInf;
  return 2.0 + poch - 2.0 * static_cast<double>(m) * std::log2(2.0 * M_PI) +
         (-lo - 2.0 * static_cast<double>(m) + 1.0) * std::log2(x) - std::log2(denom);
}

struct Plan {
  long n = 0;
  long m = 0;
  double bound_log2 = 0.0;
};

Plan choose_plan(double sigma, double rad, double a, const EvalPrecision& p) {
  const double target = p.target();
  if (p.cutoff_N > 0 && p.euler_maclaurin_terms > 0) {
    Plan plan{p.cutoff_N, p.euler_maclaurin_terms,
              remainder_log2(sigma, rad, static_cast<double>(p.cutoff_N) + a, p.euler_maclaurin_terms)};
    if (!(plan.bound_log2 < target))
      throw PrecisionError("Euler-Maclaurin parameters N=" + std::to_string(plan.n) +
                           ", M=" + std::to_string(plan.m) + " miss the target error");
    return plan;
  }
  long n = p.cutoff_N > 0 ? p.cutoff_N
                          : std::max<long>(8, static_cast<long>(std::ceil(0.12 * -target + std::fabs(sigma))));
  for (int attempt = 0; attempt < 40; ++attempt) {
    const double x = static_cast<double>(n) + a;
    const long max_m = p.euler_maclaurin_terms > 0 ? p.euler_maclaurin_terms : std::max<long>(50, 4 * n);
    const long min_m = p.euler_maclaurin_terms > 0 ? p.euler_maclaurin_terms : 1;
    for (long m = min_m; m <= max_m; ++m) {
      const double b = remainder_log2(sigma, rad, x, m);
      if (b < target) return {n, m, b};
    }
    if (p.cutoff_N > 0) break;
    n = n + n / 2 + 1;
  }
  throw PrecisionError("Euler-Maclaurin remainder bound not reachable");
}

bool is_exactly_one(const Ball& s) {
  return s.rad() == 0.0 && s.mid() == Real(1L, s.precision());
}

// zeta(s, a), or zeta(s, a) - 1/(s - 1) when drop_pole (used at s = 1).
Ball euler_maclaurin(const Ball& s, const Rational& a, const EvalPrecision& p, bool drop_pole) {
  if (a <= 0 || a > 1) throw std::invalid_argument("Hurwitz parameter must lie in (0, 1]");
  const double sigma = s.mid().to_double();
  const double ad = a.convert_to<double>();
  const Plan plan = choose_plan(sigma, s.rad(), ad, p);
  const double x_top = static_cast<double>(plan.n) + ad;

  // Guard bits for the largest term and for the pole near s = 1.
  double guard = std::max(0.0, -sigma * std::log2(ad));
  guard = std::max(guard, -sigma * std::log2(x_top));
  if (!drop_pole) guard += std::max(0.0, -log2_up(std::fabs(sigma - 1.0)));
  const Precision wp = p.working_bits + 32 + static_cast<Precision>(std::ceil(guard));

  const Ball sw = with_precision(s, wp);
  Ball sum(0L, wp);
  for (long n = 0; n < plan.n; ++n) {
    const Ball x(a + n, wp);
    sum += exp(-sw * log(x));
  }
  const Ball x(a + plan.n, wp);
  const Ball log_x = log(x);
  const Ball x_s = exp(-sw * log_x);  // X^-s
  const Ball one(1L, wp);
  if (drop_pole) sum -= log_x;
  else sum += x_s * x / (sw - one);
  sum += x_s / Ball(2L, wp);

  // T_k = B_2k / (2k)! (s)_{2k-1} X^(-s-2k+1), advanced by exact ratios.
  Ball term = Ball(bernoulli(2) / 2, wp) * sw * x_s / x;
  const Ball inv_x2 = one / (x * x);
  for (long k = 1; k <= plan.m; ++k) {
    sum += term;
    if (k == plan.m) break;
    const Rational ratio = bernoulli(2 * k + 2) / bernoulli(2 * k) / Rational((2 * k + 1) * (2 * k + 2));
    term = term * Ball(ratio, wp) * (sw + Ball(2 * k - 1, wp)) * (sw + Ball(2 * k, wp)) * inv_x2;
  }
  if (plan.bound_log2 != kNegInf) {
    const double e = std::ldexp(1.0, static_cast<int>(std::max(-1074.0, std::floor(plan.bound_log2) + 1.0)));
    sum.add_error(std::max(e, 4.9e-324));
  }
  return with_precision(sum, p.working_bits);
}

long gcd_long(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b != 0) {
    const long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int jacobi(long a, long n) {
  // n odd positive
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

Signature signature_of(long d_F) { return signature_from_discriminant(Integer(d_F)); }

}  // namespace

Ball hurwitz_zeta(const Ball& s, const Rational& a, const EvalPrecision& p) {
  const Ball diff = s - Ball(1L, s.precision());
  if (diff.contains_zero()) throw PoleError("Hurwitz zeta has a pole at s = 1");
  return euler_maclaurin(s, a, p, false);
}

int kronecker_symbol(long d, long n) {
  if (n <= 0) throw std::invalid_argument("kronecker_symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (d % 2 == 0) return 0;
    const long r = ((d % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

KroneckerCharacter KroneckerCharacter::of(long d) {
  KroneckerCharacter chi;
  chi.discriminant = d;
  chi.modulus = std::labs(d);
  if (chi.modulus == 0) throw std::invalid_argument("zero discriminant");
  chi.values.resize(static_cast<size_t>(chi.modulus));
  for (long n = 0; n < chi.modulus; ++n)
    chi.values[static_cast<size_t>(n)] = chi.modulus == 1 ? 1 : (n == 0 ? 0 : kronecker_symbol(d, n));
  return chi;
}

int KroneckerCharacter::operator()(long n) const {
  long r = n % modulus;
  if (r < 0) r += modulus;
  return values[static_cast<size_t>(r)];
}

Ball dirichlet_L(const Ball& s, const KroneckerCharacter& chi, const EvalPrecision& p) {
  if (chi.principal()) return hurwitz_zeta(s, Rational(1), p);
  const bool at_one = is_exactly_one(s);
  if (!at_one && (s - Ball(1L, s.precision())).contains_zero())
    throw PrecisionError("argument ball straddles s = 1");
  const long q = chi.modulus;
  EvalPrecision inner = p;
  inner.working_bits = p.working_bits + 8 + static_cast<Precision>(std::ceil(std::log2(static_cast<double>(q))));
  inner.target_log2_error = p.target() - std::log2(static_cast<double>(q)) - 2.0;
  Ball sum(0L, inner.working_bits);
  for (long a = 1; a < q; ++a) {
    const int c = chi(a);
    if (c == 0 || gcd_long(a, q) != 1) continue;
    const Ball z = euler_maclaurin(s, Rational(a, q), inner, at_one);
    if (c > 0) sum += z;
    else sum -= z;
  }
  const Ball sw = with_precision(s, inner.working_bits);
  sum *= exp(-sw * log(Ball(q, inner.working_bits)));
  return with_precision(sum, p.working_bits);
}

Ball riemann_zeta(const Ball& s, const EvalPrecision& p) { return hurwitz_zeta(s, Rational(1), p); }

Ball dedekind_zeta(long d_F, const Ball& s, const EvalPrecision& p) {
  if (d_F == 1) return riemann_zeta(s, p);
  EvalPrecision inner = p;
  inner.target_log2_error = p.target() - 4.0;
  return riemann_zeta(s, inner) * dirichlet_L(s, KroneckerCharacter::of(d_F), inner);
}

LaurentLeading leading_term(long d_F, long r, const EvalPrecision& p, int ladder) {
  if (ladder < 4) throw std::invalid_argument("ladder needs at least 4 points");
  LaurentLeading out;
  const Precision bits = p.working_bits;
  std::vector<Ball> values;
  std::vector<double> lx, ly;
  for (int k = 0; k < ladder; ++k) {
    const long e = 10 + 4 * k;
    const Rational eps = Rational(1) / Rational(Integer(1) << static_cast<unsigned>(e));
    const Ball s(Rational(r) + eps, bits + 64);
    const Ball f = dedekind_zeta(d_F, s, p);
    if (f.contains_zero()) throw OrderDetectionError("value at r + 2^-" + std::to_string(e) + " contains zero");
    values.push_back(f);
    lx.push_back(-static_cast<double>(e));
    const Real af = abs(f.mid());
    ly.push_back(static_cast<double>(af.exponent()) + std::log2(ldexp(af, -af.exponent()).to_double()));
  }
  out.epsilons_log2 = lx;

  // Least-squares slope on the first four points.
  const int fit = 4;
  double mx = 0, my = 0;
  for (int k = 0; k < fit; ++k) {
    mx += lx[static_cast<size_t>(k)];
    my += ly[static_cast<size_t>(k)];
  }
  mx /= fit;
  my /= fit;
  double sxy = 0, sxx = 0;
  for (int k = 0; k < fit; ++k) {
    sxy += (lx[static_cast<size_t>(k)] - mx) * (ly[static_cast<size_t>(k)] - my);
    sxx += (lx[static_cast<size_t>(k)] - mx) * (lx[static_cast<size_t>(k)] - mx);
  }
  out.slope = sxy / sxx;
  for (int k = 0; k < fit; ++k) {
    const double pred = my + out.slope * (lx[static_cast<size_t>(k)] - mx);
    out.slope_residual = std::max(out.slope_residual, std::fabs(ly[static_cast<size_t>(k)] - pred));
  }
  out.order = std::lround(out.slope);
  if (std::fabs(out.slope - static_cast<double>(out.order)) > 0.05) {
    std::ostringstream os;
    os << "slope " << out.slope << " is not within 0.05 of an integer";
    throw OrderDetectionError(os.str());
  }

  // g(eps) = f(eps) eps^-order, extrapolated to eps = 0 (Neville).
  std::vector<Ball> g;
  std::vector<Rational> eps;
  for (int k = 0; k < ladder; ++k) {
    const long e = 10 + 4 * k;
    eps.push_back(Rational(1) / Rational(Integer(1) << static_cast<unsigned>(e)));
    Ball v = values[static_cast<size_t>(k)];
    g.push_back(Ball(ldexp(v.mid(), e * out.order), std::ldexp(v.rad(), static_cast<int>(e * out.order))));
  }
  auto neville = [&](int count) {
    std::vector<Ball> t(g.begin(), g.begin() + count);
    for (int level = 1; level < count; ++level)
      for (int i = 0; i + level < count; ++i) {
        // P(0) from points i..i+level
        const Rational xi = eps[static_cast<size_t>(i)], xj = eps[static_cast<size_t>(i + level)];
        const Ball wi(xj / (xj - xi), bits + 64), wj(-xi / (xj - xi), bits + 64);
        t[static_cast<size_t>(i)] = wi * t[static_cast<size_t>(i)] + wj * t[static_cast<size_t>(i + 1)];
      }
    return t[0];
  };
  Ball best = neville(ladder);
  const Ball previous = neville(ladder - 1);
  out.extrapolation_delta = (best - previous).mag();
  best.add_error(out.extrapolation_delta);
  out.leading = with_precision(best, bits);
  return out;
}

Ball completed_phi(long d_F, const Ball& s, const EvalPrecision& p) {
  const Signature sig = signature_of(d_F);
  const Precision wp = p.working_bits + 16;
  const Ball sw = with_precision(s, wp);
  Ball phi(1L, wp);
  if (sig.r1 > 0) phi *= pow(gamma_numeric(sw / Ball(2L, wp), wp), sig.r1);
  if (sig.r2 > 0) phi *= pow(gamma_numeric(sw, wp), sig.r2);
  const Ball pi = pi_ball(wp);
  Ball base = sqrt(Ball(std::labs(d_F), wp)) / pow(Ball(2L, wp), sig.r2);
  base /= pow(sqrt(pi), sig.degree());
  phi *= exp(sw * log(base));
  EvalPrecision inner = p;
  inner.working_bits = wp;
  phi *= dedekind_zeta(d_F, sw, inner);
  return with_precision(phi, p.working_bits);
}

ComparisonReport check_functional_equation(long d_F, const std::vector<Rational>& points, const EvalPrecision& p,
                                           double tol) {
  ComparisonReport rep;
  rep.tolerance = tol;
  double worst = 0.0;
  for (const auto& x : points) {
    const Ball s(x, p.working_bits);
    const Ball a = completed_phi(d_F, s, p);
    // s = 1/2 is the fixed point: both sides are the same number
    const bool fixed = x == Rational(1) - x;
    const Ball b = fixed ? a : completed_phi(d_F, Ball(Rational(1) - x, p.working_bits), p);
    const double dev = fixed ? 0.0 : (a - b).mag();
    if (dev >= worst) {
      worst = dev;
      rep.lhs = "phi(" + to_string(x) + ") = " + a.mid().to_string(20);
      rep.rhs = "phi(" + to_string(Rational(1) - x) + ") = " + b.mid().to_string(20);
      rep.ratio = std::fabs(a.mid().to_double() / b.mid().to_double());
      rep.log2_ratio = std::log2(rep.ratio);
    }
  }
  rep.deviation = worst;
  rep.passed = worst < tol;
  return rep;
}

long expected_vanishing_order(const Signature& sig, long r, const KGroupTable& k) {
  if (r < 0) return k.at(1 - 2 * r).rank;
  if (r == 0) return sig.unit_rank();
  if (r == 1) return -1;
  return 0;
}

}  // namespace zw
