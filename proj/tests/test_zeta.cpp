#include <cmath>
#include <random>

#include "doctest.h"
#include "zw/errors.hpp"
#include "zw/random.hpp"
#include "zw/zeta.hpp"

using namespace zw;

namespace {

const Precision kBits = 256;

Ball q(const Rational& x, Precision p = kBits) { return Ball(x, p); }

double diff(const Ball& a, const Ball& b) { return (a - b).mag(); }

FieldSpec field(const std::string& label, std::vector<long> poly) {
  FieldSpec f;
  f.label = label;
  for (long c : poly) f.poly.push_back(Integer(c));
  return f;
}

std::vector<FieldSpec> fixtures() {
  return {field("Q", {0, 1}),          field("Q_i", {1, 0, 1}),    field("Q_sqrt-3", {1, 1, 1}),
          field("Q_sqrt-5", {5, 0, 1}), field("Q_sqrt-23", {6, -1, 1}), field("Q_sqrt2", {-2, 0, 1}),
          field("Q_sqrt5", {-1, -1, 1})};
}

std::vector<long> primes_below(long n) {
  std::vector<bool> sieve(static_cast<size_t>(n), true);
  std::vector<long> out;
  for (long i = 2; i < n; ++i) {
    if (!sieve[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j < n; j += i) sieve[static_cast<size_t>(j)] = false;
  }
  return out;
}

// Number of roots of a monic integer polynomial modulo p, by brute force.
long roots_mod_p(const std::vector<Integer>& poly, long p) {
  std::vector<long> c;
  for (const auto& x : poly) c.push_back(Integer(((x % p) + p) % p).convert_to<long>());
  long count = 0;
  for (long x = 0; x < p; ++x) {
    long v = 0;
    for (size_t i = c.size(); i-- > 0;) v = (v * x + c[i]) % p;
    if (v == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("zeta(2) against pi^2/6 and a bracketed partial sum") {
  const Ball z2 = riemann_zeta(q(2));
  const Ball pi = pi_ball(kBits);
  CHECK(diff(z2, pi * pi / q(6)) < 1e-20);
  CHECK(z2.rad() < 1e-60);

  // sum_{n<=N} n^-2 + 1/(N+1) < zeta(2) < sum_{n<=N} n^-2 + 1/N
  const long n_max = 100000;
  double s = 0.0;
  for (long n = n_max; n >= 1; --n) s += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  const double v = z2.mid().to_double();
  CHECK(v > s + 1.0 / (n_max + 1) - 1e-14);
  CHECK(v < s + 1.0 / n_max + 1e-14);
}

TEST_CASE("zeta(0) = -1/2 and the Hurwitz half-shift identity at s = 3") {
  const Ball z0 = riemann_zeta(q(0));
  CHECK(diff(z0, q(Rational(-1, 2))) < 1e-60);

  // zeta(3, 1/2) = (2^3 - 1) zeta(3)
  const Ball lhs = hurwitz_zeta(q(3), Rational(1, 2));
  const Ball rhs = q(7) * riemann_zeta(q(3));
  CHECK(diff(lhs, rhs) < 1e-60);
  CHECK(lhs.overlaps(rhs));
  CHECK(diff(riemann_zeta(q(3)), Ball(Real::parse("1.2020569031595942853997381615114499907649862923405", kBits))) <
        1e-45);
}

TEST_CASE("pole and precision errors") {
  CHECK_THROWS_AS(riemann_zeta(q(1)), PoleError);
  CHECK_THROWS_AS(hurwitz_zeta(Ball(Real(1L, kBits), 1e-3), Rational(1, 3)), PoleError);
  EvalPrecision tight;
  tight.cutoff_N = 2;
  tight.euler_maclaurin_terms = 1;
  CHECK_THROWS_AS(riemann_zeta(q(2), tight), PrecisionError);
  CHECK_THROWS_AS(hurwitz_zeta(q(2), Rational(0)), std::invalid_argument);
}

TEST_CASE("Euler-Maclaurin value is stable under doubling the cutoff") {
  Rng rng(20240611);
  for (int trial = 0; trial < 20; ++trial) {
    Rational s(uniform_int(rng, -300, 600), 100);
    if (abs(s - 1) < Rational(1, 20)) s += Rational(1, 5);
    const Rational a(uniform_int(rng, 1, 97), 97);
    EvalPrecision p1, p2;
    p1.cutoff_N = uniform_int(rng, 40, 60);
    p2.cutoff_N = 2 * p1.cutoff_N;
    const Ball v1 = hurwitz_zeta(q(s), a, p1);
    const Ball v2 = hurwitz_zeta(q(s), a, p2);
    CAPTURE(to_string(s));
    CAPTURE(to_string(a));
    CHECK(v1.overlaps(v2));
    CHECK(diff(v1, v2) < 1e-50);
  }
}

TEST_CASE("Kronecker characters") {
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(5, 2) == -1);
  CHECK(kronecker_symbol(-23, 2) == 1);
  CHECK(kronecker_symbol(8, 2) == 0);
  CHECK(kronecker_symbol(-20, 3) == 1);  // 3 splits in Q(sqrt -5): 3 = (3, 1 + sqrt -5)(3, 1 - sqrt -5)
  Rng rng(7);
  for (long d : {-3L, -4L, -20L, -23L, 5L, 8L, 12L, -7L}) {
    const auto chi = KroneckerCharacter::of(d);
    CHECK(chi.modulus == std::labs(d));
    CHECK(chi(-1) == (d > 0 ? 1 : -1));
    for (int i = 0; i < 50; ++i) {
      const long m = uniform_int(rng, 1, 300), n = uniform_int(rng, 1, 300);
      CHECK(chi(m * n) == chi(m) * chi(n));
      CHECK(chi(m + chi.modulus) == chi(m));
      CHECK(kronecker_symbol(d, m) == chi(m));
    }
  }
}

TEST_CASE("Dirichlet L-values") {
  // L(1, chi_-4) = pi/4, bracketed by Leibniz partial sums
  const Ball l1 = dirichlet_L(q(1), KroneckerCharacter::of(-4));
  CHECK(diff(l1, pi_ball(kBits) / q(4)) < 1e-50);
  double s = 0.0;
  const long terms = 20001;
  for (long k = terms - 1; k >= 0; --k) s += (k % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(2 * k + 1);
  const double last = 1.0 / static_cast<double>(2 * terms + 1);
  const double lo = std::min(s, s - last), hi = std::max(s, s - last);
  CHECK(l1.mid().to_double() > lo - 1e-13);
  CHECK(l1.mid().to_double() < hi + 1e-13);

  // L(0, chi_-20) = 2h/w = 2
  CHECK(diff(dirichlet_L(q(0), KroneckerCharacter::of(-20)), q(2)) < 1e-50);
  // L(1, chi_5) = 2 log(golden ratio) / sqrt 5
  const Ball phi = (q(1) + sqrt(q(5))) / q(2);
  CHECK(diff(dirichlet_L(q(1), KroneckerCharacter::of(5)), q(2) * log(phi) / sqrt(q(5))) < 1e-50);
  // L(-1, chi_-4) = E_1 / 2 = 0
  CHECK(dirichlet_L(q(-1), KroneckerCharacter::of(-4)).mag() < 1e-50);
}

TEST_CASE("Dedekind zeta against truncated Euler products") {
  const long bound = 10000;
  const auto primes = primes_below(bound);
  const Precision p = 128;
  for (const auto& f : fixtures()) {
    const long d = field_discriminant(f).convert_to<long>();
    const auto order_poly = maximal_order_poly(f);
    std::vector<long> roots;
    for (long pr : primes) roots.push_back(f.degree() == 1 ? 1 : roots_mod_p(order_poly, pr));
    for (long s : {2L, 3L, 10L}) {
      Ball prod(1L, p);
      for (size_t i = 0; i < primes.size(); ++i) {
        const Ball x = q(Rational(1), p) / pow(q(Rational(primes[i]), p), s);
        // split: two primes of norm p; ramified: one; inert: one of norm p^2
        Ball local(1L, p);
        if (roots[i] == 2) local = (q(1, p) - x) * (q(1, p) - x);
        else if (roots[i] == 1) local = q(1, p) - x;
        else local = q(1, p) - x * x;
        prod /= local;
      }
      // primes >= bound contribute a factor in [1, exp(2 sum_{n >= bound} 2 n^-s)]
      const double tail = std::expm1(4.0 * std::pow(static_cast<double>(bound - 1), 1.0 - s) / (s - 1.0));
      EvalPrecision ep;
      ep.working_bits = p;
      const Ball z = dedekind_zeta(d, q(s, p), ep);
      CAPTURE(f.label);
      CAPTURE(s);
      const double rel = (z / prod - q(1, p)).mid().to_double();
      CHECK(rel > -1e-25);
      CHECK(rel <= tail + 1e-25);
    }
  }
}

TEST_CASE("leading terms at classical points") {
  const auto res = leading_term(1, 1);
  CHECK(res.order == -1);
  CHECK(diff(res.leading, q(1)) < 1e-15);
  CHECK(res.leading.overlaps(q(1)));

  const auto z0 = leading_term(1, 0);
  CHECK(z0.order == 0);
  CHECK(diff(z0.leading, q(Rational(-1, 2))) < 1e-15);

  CHECK(leading_term(1, -2).order == 1);
  // zeta'(-2) = -zeta(3) / (4 pi^2)
  const Ball pi = pi_ball(kBits);
  CHECK(diff(leading_term(1, -2).leading, -riemann_zeta(q(3)) / (q(4) * pi * pi)) < 1e-15);

  const auto m5 = leading_term(-20, 0);
  CHECK(m5.order == 0);
  CHECK(diff(m5.leading, q(-1)) < 1e-15);
  CHECK(m5.slope_residual < 0.05);
}

TEST_CASE("residue at s = 1 matches the analytic class number formula") {
  for (const auto& f : fixtures()) {
    const auto inv = compute_invariants(f, kBits);
    const long d = inv.d.convert_to<long>();
    const auto res = leading_term(d, 1);
    CAPTURE(f.label);
    CHECK(res.order == -1);
    // 2^r1 (2 pi)^r2 h R / (w sqrt|d|)
    const Ball pi = pi_ball(kBits);
    Ball expect = q(Rational(inv.h) / inv.w) * inv.R / sqrt(q(Rational(std::labs(d))));
    expect *= pow(q(2), inv.sig.r1) * pow(q(2) * pi, inv.sig.r2);
    CHECK(diff(res.leading, expect) < 1e-8 * expect.mag());
  }
}

TEST_CASE("completed zeta satisfies phi(s) = phi(1 - s)") {
  const auto q03 = check_functional_equation(1, {Rational(3, 10)});
  CHECK(q03.passed);
  CHECK(*q03.deviation < 1e-10);
  const auto s2 = check_functional_equation(8, {Rational(1, 4)});
  CHECK(s2.passed);
  CHECK(*check_functional_equation(-20, {Rational(1, 2)}).deviation == 0.0);
  std::vector<Rational> points;
  for (long k = 1; k <= 5; ++k) points.push_back(Rational(2 * k - 1, 11));
  for (long d : {-3L, -4L, -23L, 5L}) {
    const auto rep = check_functional_equation(d, points);
    CAPTURE(d);
    CHECK(rep.passed);
  }
}

TEST_CASE("vanishing orders agree with rank bookkeeping") {
  KGroupTable kz;
  kz.field = "Q";
  const Signature q_sig{1, 0};
  kz = with_borel_ranks(kz, q_sig, 1, 9);
  CHECK(expected_vanishing_order(q_sig, 0, kz) == 0);
  CHECK(expected_vanishing_order(q_sig, -2, kz) == 1);
  CHECK(expected_vanishing_order(q_sig, 1, kz) == -1);
  CHECK(expected_vanishing_order(q_sig, 3, kz) == 0);
  const Signature im{0, 1};
  KGroupTable km5 = with_borel_ranks(KGroupTable{"Q_sqrt-5", {}}, im, 1, 9);
  CHECK(expected_vanishing_order(im, -1, km5) == 1);
  CHECK_THROWS_AS(expected_vanishing_order(q_sig, -1, KGroupTable{"Q", {}}), MissingDataError);

  for (const auto& f : fixtures()) {
    const Signature sig = signature(f);
    const long d = field_discriminant(f).convert_to<long>();
    const KGroupTable k = with_borel_ranks(KGroupTable{f.label, {}}, sig, 1, 9);
    for (long r = -4; r <= 4; ++r) {
      CAPTURE(f.label);
      CAPTURE(r);
      CHECK(leading_term(d, r).order == expected_vanishing_order(sig, r, k));
    }
  }
}
