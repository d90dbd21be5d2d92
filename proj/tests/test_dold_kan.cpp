#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "zw/dold_kan.hpp"
#include "zw/errors.hpp"
#include "zw/exact_linalg.hpp"

using namespace zw;

namespace {

std::vector<Integer> poly(std::initializer_list<long> c) { return {c.begin(), c.end()}; }

ZMatrix z(std::initializer_list<std::initializer_list<long>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  ZMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ChainComplex two_term(const ZMatrix& d) {
  const long rows = static_cast<long>(d.rows()), cols = static_cast<long>(d.cols());
  return make_complex(BaseRing::integers(), {rows, cols}, {FreeModuleMap{cols, rows, d}});
}

// Counts monotone surjections [n] -> [k] by walking all nondecreasing maps.
long count_surjections(long n, long k) {
  long count = 0;
  std::vector<long> f(static_cast<size_t>(n + 1), 0);
  for (;;) {
    if (f.front() == 0 && f.back() == k) {
      bool steps = true;
      for (size_t i = 1; i < f.size(); ++i) steps = steps && f[i] - f[i - 1] <= 1;
      if (steps) ++count;
    }
    long i = n;
    while (i >= 0 && f[static_cast<size_t>(i)] == k) --i;
    if (i < 0) break;
    ++f[static_cast<size_t>(i)];
    for (long j = i + 1; j <= n; ++j) f[static_cast<size_t>(j)] = f[static_cast<size_t>(i)];
  }
  return count;
}

// Rational rank oracle for homology ranks.
std::vector<long> rational_betti(const ChainComplex& c) {
  std::vector<long> rk(c.ranks.size() + 1, 0);
  for (size_t i = 0; i < c.differentials.size(); ++i)
    rk[i + 1] = static_cast<long>(rank<Rational>(to_rational(c.differentials[i].matrix)));
  std::vector<long> out;
  for (size_t i = 0; i < c.ranks.size(); ++i) out.push_back(c.ranks[i] * c.ring.rank() - rk[i] - rk[i + 1]);
  return out;
}

// Coefficients of M e_J1 ^ ... ^ M e_Jk on e_I1 ^ ... ^ e_Ik via the signed
// sum over permutations of the full tensor.
Integer wedge_oracle(const ZMatrix& m, const std::vector<long>& rows, const std::vector<long>& cols) {
  std::vector<size_t> perm(rows.size());
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    long inversions = 0;
    for (size_t a = 0; a < perm.size(); ++a)
      for (size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
    Integer term = 1;
    for (size_t a = 0; a < perm.size(); ++a) term *= m(rows[perm[a]], cols[a]);
    total += inversions % 2 == 0 ? term : Integer(-term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("rings") {
  const BaseRing o = BaseRing::monogenic(poly({5, 0, 1}));
  CHECK(o.rank() == 2);
  const ZVector a = o.generator();
  const ZVector a2 = o.multiply(a, a);
  CHECK(a2(0) == -5);
  CHECK(a2(1) == 0);
  CHECK_NOTHROW(o.validate());
  CHECK_NOTHROW(BaseRing::monogenic(poly({1, 1, 1})).validate());
  CHECK_THROWS(BaseRing::monogenic(poly({1, 2})));
}

TEST_CASE("homology examples") {
  HomologyResult h = homology(two_term(z({{2}})));
  REQUIRE(h.at(0));
  CHECK(h.at(0)->free_rank == 0);
  CHECK(h.at(0)->divisors == std::vector<Integer>{2});
  CHECK(h.at(1)->free_rank == 0);
  CHECK(h.at(1)->divisors.empty());

  h = homology(two_term(z({{0}})));
  CHECK(h.at(0)->free_rank == 1);
  CHECK(h.at(1)->free_rank == 1);
  CHECK(h.torsion_order() == 1);

  h = homology(two_term(z({{2, 0}, {0, 6}, {0, 0}})));
  CHECK(h.at(0)->free_rank == 1);
  CHECK(h.at(0)->divisors == std::vector<Integer>{2, 6});
}

TEST_CASE("homology free ranks agree with rational ranks") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const ChainComplex c = random_bounded_complex(rng, 3, 4);
    const HomologyResult h = homology(c);
    const auto betti = rational_betti(c);
    for (size_t i = 0; i < betti.size(); ++i) CHECK(h.degrees[i].free_rank == betti[i]);
    for (const auto& d : h.degrees)
      for (size_t i = 0; i < d.divisors.size(); ++i) {
        CHECK(d.divisors[i] > 1);
        if (i + 1 < d.divisors.size()) CHECK(d.divisors[i + 1] % d.divisors[i] == 0);
      }
  }
}

TEST_CASE("K level ranks count monotone surjections") {
  const ChainComplex c = make_complex(BaseRing::integers(), {2, 1, 3},
                                      {FreeModuleMap{1, 2, z({{0}, {0}})}, FreeModuleMap{3, 1, z({{0, 0, 0}})}});
  const SimplicialModule s = dold_kan_K(c, 5);
  for (long n = 0; n <= 5; ++n) {
    long expected = 0;
    for (long k = 0; k <= n; ++k) expected += count_surjections(n, k) * c.rank_at(k);
    CHECK(s.level_ranks[static_cast<size_t>(n)] == expected);
  }

  const ChainComplex one = make_complex(BaseRing::integers(), {0, 1}, {FreeModuleMap{1, 0, ZMatrix(0, 1)}});
  const SimplicialModule k1 = dold_kan_K(one, 4);
  CHECK(k1.level_ranks == std::vector<long>{0, 1, 2, 3, 4});

  const ChainComplex point = make_complex(BaseRing::integers(), {1}, {});
  const SimplicialModule k0 = dold_kan_K(point, 4);
  CHECK(k0.level_ranks == std::vector<long>{1, 1, 1, 1, 1});
  const ChainComplex n0 = normalize(k0);
  CHECK(n0.ranks == std::vector<long>{1, 0, 0, 0, 0});
}

TEST_CASE("NK is the identity on random complexes") {
  Rng rng(2024);
  for (int t = 0; t < 50; ++t) {
    const ChainComplex c = random_bounded_complex(rng, 3, 3);
    const long truncation = c.top() + 2;
    const SimplicialModule s = dold_kan_K(c, truncation);
    CHECK_NOTHROW(check_simplicial_identities(s));
    const ChainComplex n = normalize(s);
    for (long d = 0; d <= truncation; ++d) CHECK(n.rank_at(d) == c.rank_at(d));
    for (size_t i = 0; i < c.differentials.size(); ++i) CHECK(n.differentials[i].matrix == c.differentials[i].matrix);
  }
}

TEST_CASE("normalized and unnormalized complexes have the same homology") {
  Rng rng(99);
  for (int t = 0; t < 12; ++t) {
    const ChainComplex c = random_bounded_complex(rng, 2, 2);
    const long k = uniform_int(rng, 0, 2);
    const long truncation = k * c.length() + 2;
    const SimplicialModule s = levelwise_exterior_power(dold_kan_K(c, truncation), k);
    const HomologyResult hn = homology(normalize(s));
    const HomologyResult hu = homology(unnormalized_complex(s));
    for (long d = 0; d < truncation; ++d) {
      CHECK(hn.at(d)->free_rank == hu.at(d)->free_rank);
      CHECK(hn.at(d)->divisors == hu.at(d)->divisors);
    }
  }
}

TEST_CASE("exterior powers of maps") {
  const BaseRing zr = BaseRing::integers();
  const FreeModuleMap m{3, 3, z({{1, 2, 0}, {-1, 3, 4}, {2, 0, 5}})};
  const FreeModuleMap l2 = exterior_power(zr, m, 2);
  REQUIRE(l2.matrix.rows() == 3);
  const std::vector<std::vector<long>> pairs = {{0, 1}, {0, 2}, {1, 2}};
  for (size_t a = 0; a < 3; ++a)
    for (size_t b = 0; b < 3; ++b)
      CHECK(l2.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) == wedge_oracle(m.matrix, pairs[a], pairs[b]));

  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    ZMatrix r(4, 5);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 5; ++j) r(i, j) = uniform_int(rng, -3, 3);
    const FreeModuleMap l3 = exterior_power(zr, FreeModuleMap{5, 4, r}, 3);
    CHECK(l3.matrix.rows() == 4);
    CHECK(l3.matrix.cols() == 10);
    CHECK(l3.matrix(1, 6) == wedge_oracle(r, {0, 1, 3}, {1, 2, 3}));
    CHECK(l3.matrix(3, 9) == wedge_oracle(r, {1, 2, 3}, {2, 3, 4}));
  }

  const FreeModuleMap l0 = exterior_power(zr, m, 0);
  CHECK(l0.matrix == z({{1}}));
  CHECK(exterior_power(zr, m, 1).matrix == m.matrix);

  // Over Z[sqrt(-5)]: the 2x2 minor of [[a, 1], [0, a]] is a^2 = -5.
  const BaseRing o = BaseRing::monogenic(poly({5, 0, 1}));
  const ZVector a = o.generator();
  const FreeModuleMap om = FreeModuleMap::from_entries(o, 2, 2, {{a, o.one()}, {o.zero(), a}});
  const ZVector det = exterior_power(o, om, 2).entry(o, 0, 0);
  CHECK(det(0) == -5);
  CHECK(det(1) == 0);
}

TEST_CASE("simplicial identities hold for K and exterior powers") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const ChainComplex c = random_bounded_complex(rng, 2, 2);
    const SimplicialModule s = dold_kan_K(c, 4);
    CHECK_NOTHROW(check_simplicial_identities(s));
    CHECK_NOTHROW(check_simplicial_identities(levelwise_exterior_power(s, 2)));
  }
  const SimplicialModule so = dold_kan_K(conormal_complex(poly({5, 0, 1})), 3);
  CHECK_NOTHROW(check_simplicial_identities(levelwise_exterior_power(so, 2)));

  SimplicialModule broken = dold_kan_K(two_term(z({{3}})), 3);
  broken.faces[2][1].matrix(0, 0) += 1;
  CHECK_THROWS_AS(check_simplicial_identities(broken), SimplicialIdentityError);
}

TEST_CASE("derived exterior powers in degrees zero and one") {
  Rng rng(77);
  for (int t = 0; t < 12; ++t) {
    const ChainComplex c = random_bounded_complex(rng, 2, 2);
    const HomologyResult h0 = homology(derived_exterior_power(c, 0));
    REQUIRE(h0.at(0));
    CHECK(h0.at(0)->free_rank == 1);
    CHECK(h0.torsion_order() == 1);
    for (const auto& d : h0.degrees)
      if (d.degree != 0) CHECK(d.free_rank == 0);

    const HomologyResult h1 = homology(derived_exterior_power(c, 1));
    CHECK(h1 == homology(c));
  }

  const ChainComplex conormal = conormal_complex(poly({5, 0, 1}));
  const HomologyResult h0 = homology(derived_exterior_power(conormal, 0));
  CHECK(h0.at(0)->free_rank == 2);
  CHECK(homology(derived_exterior_power(conormal, 1)) == homology(conormal));
}

TEST_CASE("derived exterior powers vanish above k times the length") {
  Rng rng(123);
  for (int t = 0; t < 10; ++t) {
    const ChainComplex c = random_bounded_complex(rng, 2, 2);
    for (long k = 1; k <= 2; ++k) {
      const long bound = k * c.length();
      const long truncation = bound + 2;
      const ChainComplex full = normalize(levelwise_exterior_power(dold_kan_K(c, truncation), k));
      for (long d = bound + 1; d <= truncation; ++d) CHECK(full.rank_at(d) == 0);
    }
  }
  CHECK_THROWS_AS(derived_exterior_power(two_term(z({{2}})), 2, 2), TruncationError);
  CHECK_NOTHROW(derived_exterior_power(two_term(z({{2}})), 2, 3));
}

TEST_CASE("conormal complexes of monogenic rings") {
  CHECK(homology(conormal_complex(poly({0, 1}))).torsion_order() == 1);
  const HomologyResult h5 = homology(conormal_complex(poly({5, 0, 1})));
  CHECK(h5.at(0)->torsion_order() == 20);
  CHECK(h5.at(0)->free_rank == 0);
  CHECK(h5.at(1)->free_rank == 0);
  CHECK(homology(conormal_complex(poly({-2, 0, 1}))).at(0)->torsion_order() == 8);
  CHECK(homology(conormal_complex(poly({1, 1, 1}))).at(0)->torsion_order() == 3);
  CHECK(norm_of_derivative(poly({5, 0, 1})) == 20);
  CHECK(norm_of_derivative(poly({-1, -1, 1})) == 5);
}

TEST_CASE("second derived exterior power of the conormal complex") {
  const HomologyResult h = homology(derived_exterior_power(conormal_complex(poly({5, 0, 1})), 2));
  REQUIRE(h.at(1));
  CHECK(h.at(1)->torsion_order() == 20);
  CHECK(h.at(1)->free_rank == 0);
  CHECK(h.torsion_order() == 20);
  for (const auto& d : h.degrees) CHECK(d.free_rank == 0);
}

TEST_CASE("t complexes") {
  const auto f = poly({5, 0, 1});
  const HomologyResult h1 = homology(t_complex(f, 1));
  CHECK(h1.at(0)->free_rank == 2);
  CHECK(h1.torsion_order() == 1);

  for (long r = 1; r <= 3; ++r) CHECK(homology(t_complex(poly({0, 1}), r)).torsion_order() == 1);
  CHECK(t_complex(f, 0).ranks.empty());
  CHECK(t_complex(f, -2).ranks.empty());

  const HomologyResult h3 = homology(t_complex(f, 3));
  REQUIRE(h3.at(-1));
  CHECK(h3.at(-1)->torsion_order() == 400);

  for (const auto& p : {poly({5, 0, 1}), poly({-2, 0, 1}), poly({1, 1, 1})})
    for (long r = 2; r <= 3; ++r) CHECK(check_t_complex_torsion(p, r).passed);
  CHECK(check_t_complex_torsion(f, 2, Integer(-20)).passed);
  CHECK_FALSE(check_t_complex_torsion(f, 2, Integer(21)).passed);
}

TEST_CASE("exterior Euler characteristics multiply along short exact sequences") {
  // F' = 0.
  const ShortExactSequence trivial_sub = make_extension(ZMatrix(0, 0), z({{3, 0}, {0, 0}}).leftCols(1), ZMatrix(0, 1));
  for (long n = 0; n <= 3; ++n) CHECK(check_exterior_euler_multiplicativity(trivial_sub, n).passed);

  // Z + Z, n = 2.
  const ShortExactSequence free = make_extension(ZMatrix(1, 0), ZMatrix(1, 0), ZMatrix(1, 0));
  const RankIdentityResult r = check_exterior_euler_multiplicativity(free, 2);
  CHECK(r.lhs == 1);
  CHECK(r.rhs == 1);

  Rng rng(4242);
  for (int t = 0; t < 50; ++t) {
    const ShortExactSequence ses = random_short_exact_sequence(rng);
    for (long n = 0; n <= 3; ++n) CHECK(check_exterior_euler_multiplicativity(ses, n).passed);
  }
  CHECK_THROWS_AS(make_extension(z({{0}}), ZMatrix(0, 0), ZMatrix(1, 0)), NotExactError);
}
