#include "doctest.h"
#include "zw/exact_sequence.hpp"
#include "zw/integer_linalg.hpp"

using namespace zw;

namespace {

ZMatrix random_z(Rng& rng, Eigen::Index r, Eigen::Index c, long bound) {
  ZMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = uniform_int(rng, -bound, bound);
  return m;
}

}  // namespace

TEST_CASE("Smith normal form on random matrices") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index r = uniform_int(rng, 0, 5), c = uniform_int(rng, 0, 5);
    const ZMatrix a = random_z(rng, r, c, 6);
    const SmithForm s = smith_normal_form(a);
    CHECK(s.left * a * s.right == s.diag);
    CHECK(abs(determinant(s.left)) == 1);
    CHECK(abs(determinant(s.right)) == 1);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j)
        if (i != j) CHECK(s.diag(i, j) == 0);
    for (size_t k = 0; k + 1 < s.divisors.size(); ++k) CHECK(s.divisors[k + 1] % s.divisors[k] == 0);
    CHECK(s.rank() == rank<Rational>(to_rational(a)));
  }
}

TEST_CASE("integer kernels are saturated and annihilated") {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const ZMatrix a = random_z(rng, uniform_int(rng, 1, 4), uniform_int(rng, 1, 6), 5);
    const ZMatrix k = integer_kernel(a);
    CHECK(k.cols() == a.cols() - rank<Rational>(to_rational(a)));
    CHECK((a * k).isZero());
    if (k.cols() > 0) {
      // Saturated: the Smith divisors of the kernel basis are all 1.
      for (const auto& d : smith_normal_form(k).divisors) CHECK(d == 1);
    }
  }
}

TEST_CASE("Hermite normal form") {
  ZMatrix a(2, 2);
  a << 4, 6, 2, 4;
  const ZMatrix h = hermite_normal_form(a);
  CHECK(h(1, 0) == 0);
  CHECK(abs(determinant(h)) == abs(determinant(a)));
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const ZMatrix m = random_z(rng, 3, 4, 5);
    const ZMatrix hm = hermite_normal_form(m);
    // Same row lattice: each row of one is an integer combination of the other.
    const ZMatrix u = random_unimodular(rng, 3);
    CHECK(hermite_normal_form(ZMatrix(u * m)) == hm);
  }
}

TEST_CASE("integer solve and group structure") {
  ZMatrix a(2, 2);
  a << 2, 0, 0, 3;
  ZVector b(2), x;
  b << 4, 9;
  CHECK(integer_solve(a, b, x));
  CHECK(a * x == b);
  b << 1, 0;
  CHECK_FALSE(integer_solve(a, b, x));
  const GroupStructure g = cokernel_structure(a, 2);
  CHECK(g.free_rank == 0);
  CHECK(g.torsion_order() == 6);
  CHECK(g.torsion.size() == 1);
  ZMatrix r(3, 1);
  r << 2, 4, 0;
  const GroupStructure h = cokernel_structure(r, 3);
  CHECK(h.free_rank == 2);
  CHECK(h.torsion_order() == 2);
  CHECK(determinant(a) == 6);
}
