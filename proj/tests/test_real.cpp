#include "doctest.h"
#include "zw/bernoulli.hpp"
#include "zw/comparison.hpp"
#include "zw/errors.hpp"
#include "zw/real.hpp"

using namespace zw;

TEST_CASE("ball arithmetic encloses exact rational results") {
  const Precision p = 128;
  const Ball third(Rational(1, 3), p);
  Ball sum(0L, p);
  for (int i = 0; i < 3; ++i) sum += third;
  CHECK((sum - Ball(1L, p)).contains_zero());
  CHECK(sum.rad() < 1e-35);

  const Ball q = Ball(2L, p) / Ball(7L, p);
  const Ball back = q * Ball(7L, p);
  CHECK((back - Ball(2L, p)).contains_zero());
}

TEST_CASE("ball radius tracks input uncertainty") {
  const Precision p = 128;
  Ball x(Real(1L, p), 1e-3);
  const Ball y = x * x;
  CHECK(y.rad() >= 2e-3);
  CHECK(y.rad() < 2.1e-3);
  CHECK_THROWS_AS(Ball(1L, p) / Ball(Real(p), 1e-5), PrecisionError);
}

TEST_CASE("elementary functions agree with known constants") {
  const Precision p = 200;
  const Ball e = exp(Ball(1L, p));
  CHECK(std::abs(e.mid().to_double() - 2.718281828459045) < 1e-15);
  CHECK(e.rad() < 1e-55);
  const Ball l = log(e);
  CHECK((l - Ball(1L, p)).contains_zero());
  const ComplexBall i = ComplexBall::i(p);
  const ComplexBall minus_one = exp(i * ComplexBall(pi_ball(p)));
  CHECK((minus_one + ComplexBall(Ball(1L, p))).contains_zero());
  const ComplexBall z(Real(3L, p), Real(4L, p));
  CHECK((sqrt(z) - ComplexBall(Real(2L, p), Real(1L, p))).contains_zero());
  CHECK_THROWS_AS(log(ComplexBall(Real(-1L, p), Real(p))), PrecisionError);
}

TEST_CASE("complex division inverts multiplication") {
  const Precision p = 160;
  const ComplexBall a(Real(Rational(3, 7), p), Real(-2L, p));
  const ComplexBall b(Real(Rational(-5, 3), p), Real(Rational(1, 9), p));
  const ComplexBall c = (a * b) / b;
  CHECK((c - a).contains_zero());
  CHECK(c.rad() < 1e-40);
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK(bernoulli(20) == Rational(-174611, 330));
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("comparison up to sign and powers of two") {
  const Precision p = 128;
  auto q = [&](long a, long b) { return Ball(Rational(a, b), p); };
  auto r = compare_up_to_sign_and_two(q(1, 1), q(1, 1), 1e-6);
  CHECK(r.passed);
  CHECK(*r.k == 0);
  r = compare_up_to_sign_and_two(q(-1, 12), q(1, 24), 1e-6);
  CHECK(r.passed);
  CHECK(*r.k == 1);
  r = compare_up_to_sign_and_two(pi_ball(p), q(3, 1), 1e-6);
  CHECK_FALSE(r.passed);
  CHECK(r.log2_ratio == doctest::Approx(0.0661).epsilon(1e-3));
  CHECK_THROWS_AS(compare_up_to_sign_and_two(Ball(0L, p), q(1, 1), 1e-6), ZeroComparandError);

  long k = 0;
  CHECK(is_signed_power_of_two(Rational(-1, 8), k));
  CHECK(k == -3);
  CHECK_FALSE(is_signed_power_of_two(Rational(3, 8), k));
  const auto e = compare_exact_up_to_sign_and_two(Rational(-1, 12), Rational(1, 24));
  CHECK(e.passed);
  CHECK(*e.k == 1);
}

TEST_CASE("comparison is symmetric and scale invariant") {
  const Precision p = 128;
  unsigned long state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005UL + 1442695040888963407UL;
    return static_cast<long>((state >> 33) % 1000) + 1;
  };
  for (int t = 0; t < 50; ++t) {
    const Ball x(Rational(next(), next()), p);
    const Ball y(Rational(next(), next()), p);
    const Ball c(Rational(next(), next()), p);
    const auto a = compare_up_to_sign_and_two(x, y, 1e-6);
    const auto b = compare_up_to_sign_and_two(y, x, 1e-6);
    const auto s = compare_up_to_sign_and_two(x * c, y * c, 1e-6);
    CHECK(a.passed == b.passed);
    CHECK(a.passed == s.passed);
    CHECK(std::abs(a.log2_ratio + b.log2_ratio) < 1e-12);
  }
}
