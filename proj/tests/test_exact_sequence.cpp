#include "doctest.h"
#include "zw/exact_sequence.hpp"

using namespace zw;

namespace {

QMatrix q(std::initializer_list<std::initializer_list<long>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  QMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ZMatrix z(std::initializer_list<std::initializer_list<long>> rows) {
  const QMatrix m = q(rows);
  return m.unaryExpr([](const Rational& x) { return numerator(x); });
}

// Splitting oracle: choose s_i in V_i whose images form a basis of im f_i
// (standard vectors at independent columns); then
// det = prod_i det[f_{i-1}(s_{i-1}) | s_i]^((-1)^(i+1)).
Rational splitting_oracle(const BasedExactSequence<Rational>& seq) {
  const size_t n = seq.maps.size();
  std::vector<QMatrix> maps;
  for (size_t k = 0; k < n; ++k) {
    QMatrix m = seq.maps[k];
    if (seq.spaces[k + 1].lattice_basis) m = inverse<Rational>(*seq.spaces[k + 1].lattice_basis) * m;
    if (seq.spaces[k].lattice_basis) m = m * *seq.spaces[k].lattice_basis;
    maps.push_back(m);
  }
  std::vector<QMatrix> s(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    const Eigen::Index d = seq.spaces[i].dimension;
    const QMatrix id = identity_like<Rational>(d, Rational(0));
    s[i] = i < n ? select_columns<Rational>(id, independent_columns<Rational>(maps[i])) : QMatrix(d, 0);
  }
  Rational result = 1;
  for (size_t i = 0; i <= n; ++i) {
    const Eigen::Index d = seq.spaces[i].dimension;
    QMatrix basis(d, d);
    const QMatrix prev = i > 0 ? QMatrix(maps[i - 1] * s[i - 1]) : QMatrix(d, 0);
    basis.leftCols(prev.cols()) = prev;
    basis.rightCols(s[i].cols()) = s[i];
    const Rational f = d == 0 ? Rational(1) : determinant<Rational>(basis);
    result = i % 2 == 1 ? result * f : result / f;
  }
  return result;
}

BasedExactSequence<Rational> random_sequence(Rng& rng) {
  const long maps = uniform_int(rng, 1, 5);
  auto ranks = random_ranks(rng, maps, 3);
  return random_exact_sequence<Rational>(rng, ranks, Rational(0));
}

}  // namespace

TEST_CASE("exactness checks") {
  CHECK(check_exactness(make_sequence<Rational>({2, 2}, {q({{1, 0}, {0, 1}})})));
  CHECK(check_exactness(make_sequence<Rational>({1, 2, 1}, {q({{1}, {0}}), q({{0, 1}})})));
  CHECK_FALSE(check_exactness(make_sequence<Rational>({1, 2, 1}, {q({{1}, {0}}), q({{1, 1}})})));
  CHECK_FALSE(check_exactness(make_sequence<Rational>({2, 2}, {q({{1, 1}, {1, 1}})})));
  Rng rng(7);
  for (int t = 0; t < 20; ++t) CHECK(check_exactness(random_sequence(rng)));
}

TEST_CASE("determinants of small sequences") {
  CHECK(determinant_of_exact_sequence(make_sequence<Rational>({2, 2}, {q({{1, 0}, {0, 1}})})) == 1);
  const auto diag = make_sequence<Rational>({0, 2, 2}, {QMatrix(2, 0), q({{2, 0}, {0, 3}})});
  CHECK(determinant_of_exact_sequence(diag) == Rational(1, 6));
  CHECK(determinant_of_exact_sequence(make_sequence<Rational>({1, 1}, {q({{5}})})) == 5);
  CHECK_THROWS_AS(determinant_of_exact_sequence(make_sequence<Rational>({1, 2, 1}, {q({{1}, {0}}), q({{1, 1}})})),
                  NotExactError);
}

TEST_CASE("determinant agrees with the splitting oracle") {
  Rng rng(2024);
  for (int t = 0; t < 100; ++t) {
    const auto seq = random_sequence(rng);
    CHECK(determinant_of_exact_sequence(seq) == splitting_oracle(seq));
  }
}

TEST_CASE("determinant does not depend on lifts or the splicing basis") {
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    const auto seq = random_sequence(rng);
    const Rational plain = determinant_of_exact_sequence(seq);
    Rng choice(static_cast<std::uint64_t>(t) + 1000);
    CHECK(determinant_of_exact_sequence(seq, &choice) == plain);
    CHECK(determinant_of_exact_sequence(seq, &choice) == plain);
  }
}

TEST_CASE("splicing multiplicativity at every splice point") {
  Rng rng(31337);
  int spliced = 0;
  for (int t = 0; t < 100; ++t) {
    const auto seq = random_sequence(rng);
    const Rational whole = determinant_of_exact_sequence(seq);
    for (size_t j = 1; j < seq.maps.size(); ++j) {
      const auto [first, second] = splice_at(seq, j);
      const Rational a = determinant_of_exact_sequence(first);
      const Rational b = determinant_of_exact_sequence(second);
      CHECK(whole == (j % 2 == 1 ? a * b : a / b));
      ++spliced;
    }
  }
  CHECK(spliced > 50);
}

TEST_CASE("unimodular change of lattice basis changes the determinant by a sign") {
  Rng rng(4242);
  for (int t = 0; t < 50; ++t) {
    auto seq = random_sequence(rng);
    const Rational before = determinant_of_exact_sequence(seq);
    const size_t v = static_cast<size_t>(uniform_int(rng, 0, static_cast<long>(seq.spaces.size()) - 1));
    seq.spaces[v].lattice_basis = to_rational(random_unimodular(rng, seq.spaces[v].dimension));
    const Rational after = determinant_of_exact_sequence(seq);
    CHECK(abs(after) == abs(before));
    CHECK(after == splitting_oracle(seq));
  }
}

TEST_CASE("numeric determinant matches the exact one") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto seq = random_sequence(rng);
    BasedExactSequence<ComplexBall> num;
    for (const auto& sp : seq.spaces) num.spaces.push_back({sp.dimension, std::nullopt});
    for (const auto& m : seq.maps) {
      num.maps.push_back(m.unaryExpr([](const Rational& x) { return ComplexBall(x, 192); }));
    }
    REQUIRE(check_exactness(num));
    const ComplexBall d = determinant_of_exact_sequence(num);
    const ComplexBall exact(determinant_of_exact_sequence(seq), 192);
    CHECK((d - exact).contains_zero());
  }
}

TEST_CASE("Euler characteristic examples") {
  AcyclicComplexData<Rational> two_term;
  two_term.groups = {{1, 1}, {1, 1}};
  two_term.theta = {q({{7}})};
  CHECK(abs(euler_characteristic(two_term, Rational(0))) == Rational(1, 7));

  AcyclicComplexData<Rational> torsion_only;
  torsion_only.groups = {{0, 5}};
  CHECK(euler_characteristic(torsion_only, Rational(0)) == 5);

  // Class number formula shape: H^1 = units, H^2 = dual of units with h,
  // H^3 = dual of roots of unity; theta_1 is the regulator map.
  AcyclicComplexData<Rational> imaginary;
  imaginary.groups = {{0, 1}, {0, 1}, {0, 2}, {0, 2}};
  imaginary.theta = {QMatrix(0, 0), QMatrix(0, 0), QMatrix(0, 0)};
  CHECK(euler_characteristic(imaginary, Rational(0)) == 1);

  const Precision p = 128;
  const Ball reg = log(Ball(1L, p) + sqrt(Ball(2L, p)));
  AcyclicComplexData<ComplexBall> real;
  real.groups = {{0, 1}, {1, 1}, {1, 1}, {0, 2}};
  Matrix<ComplexBall> theta(1, 1);
  theta(0, 0) = ComplexBall(reg);
  real.theta = {Matrix<ComplexBall>(1, 0), theta, Matrix<ComplexBall>(0, 1)};
  const ComplexBall chi = euler_characteristic(real, ComplexBall(Ball(0L, p)));
  CHECK((chi - ComplexBall(reg * Ball(Rational(1, 2), p))).contains_zero());
}

TEST_CASE("Euler characteristic is invariant under isomorphic replacements") {
  Rng rng(555);
  for (int t = 0; t < 30; ++t) {
    const auto seq = random_sequence(rng);
    AcyclicComplexData<Rational> data;
    for (const auto& sp : seq.spaces) data.groups.push_back({static_cast<long>(sp.dimension), Integer(uniform_int(rng, 1, 9))});
    data.theta = seq.maps;
    const Rational chi = euler_characteristic(data, Rational(0));
    // Replace each free part by an isomorphic lattice (unimodular change of basis).
    AcyclicComplexData<Rational> twisted = data;
    std::vector<QMatrix> changes;
    for (const auto& g : data.groups) changes.push_back(to_rational(random_unimodular(rng, g.rank)));
    for (size_t k = 0; k < twisted.theta.size(); ++k) {
      twisted.theta[k] = inverse<Rational>(changes[k + 1]) * data.theta[k] * changes[k];
    }
    CHECK(abs(euler_characteristic(twisted, Rational(0))) == abs(chi));
  }
}

TEST_CASE("derived rank") {
  CHECK(derived_rank({{0, 1}, {0, 1}}) == 0);
  CHECK(derived_rank({{0, 1}, {1, 1}, {1, 1}, {0, 1}}) == 1);
  CHECK(derived_rank({{0, 1}, {0, 1}, {2, 1}, {0, 1}}) == 4);
}

TEST_CASE("lattice comparison: trivial and torsion examples") {
  LatticeComparisonInstance triv;
  triv.a1 = {1, ZMatrix(1, 0)};
  triv.a2 = {1, ZMatrix(1, 0)};
  triv.a3 = {0, ZMatrix(0, 0)};
  triv.alpha1 = z({{1}});
  triv.alpha2 = ZMatrix(0, 1);
  triv.beta1 = z({{1}});
  triv.beta2 = ZMatrix(0, 1);
  triv.phi1 = q({{1}});
  triv.phi2 = q({{1}});
  triv.phi3 = QMatrix(0, 0);
  CHECK(check_lattice_comparison(triv).passed);

  // A1 = Z, A2 = Z + Z/3 (A1 onto the free part), A3 = Z/3; B = Z -> Z -> 0.
  LatticeComparisonInstance tor;
  tor.a1 = {1, ZMatrix(1, 0)};
  tor.a2 = {2, z({{0}, {3}})};
  tor.a3 = {1, z({{3}})};
  tor.alpha1 = z({{1}, {0}});
  tor.alpha2 = z({{0, 1}});
  tor.beta1 = z({{1}});
  tor.beta2 = ZMatrix(0, 1);
  tor.phi1 = q({{3}});
  tor.phi2 = q({{3, 0}});
  tor.phi3 = QMatrix(0, 1);
  const auto r = check_lattice_comparison(tor);
  CHECK(r.w2 == 3);
  CHECK(r.w3 == 3);
  CHECK(r.passed);

  tor.phi2 = q({{2, 0}});
  CHECK_THROWS_AS(check_lattice_comparison(tor), DiagramError);
}

TEST_CASE("lattice comparison on random instances") {
  Rng rng(8080);
  int with_torsion = 0;
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_lattice_comparison_instance(rng);
    const auto r = check_lattice_comparison(inst);
    CHECK(r.passed);
    if (r.w1 * r.w2 * r.w3 > 1) ++with_torsion;
  }
  CHECK(with_torsion > 10);
}

TEST_CASE("cross composites: identity and diagonal examples") {
  CrossCompositeInstance id;
  id.i1 = q({{1}, {0}});
  id.i2 = q({{0, 1}});
  id.j1 = id.i1;
  id.j2 = id.i2;
  id.rho = q({{1, 0}, {0, 1}});
  auto r = check_cross_composite(id);
  CHECK(r.passed);
  CHECK(abs(r.det_theta) == 1);
  CHECK(abs(r.det_psi) == 1);

  CrossCompositeInstance diag = id;
  diag.rho = q({{5, 0}, {0, 1}});
  r = check_cross_composite(diag);
  CHECK(r.passed);
  CHECK(r.kernel_dim == 1);
  CHECK(abs(r.det_theta) == 1);
  CHECK(abs(r.det_psi) == 5);

  CrossCompositeInstance swap = id;
  swap.rho = q({{0, 2}, {3, 0}});
  r = check_cross_composite(swap);
  CHECK(r.passed);
  CHECK(r.kernel_dim == 0);
  // theta = 3 and psi = 1/2; a two-term sequence after a zero kernel has the
  // reciprocal of the classical determinant.
  CHECK(abs(r.det_theta) == Rational(1, 3));
  CHECK(abs(r.det_psi) == 2);
}

TEST_CASE("cross composites on random instances") {
  Rng rng(777);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_cross_composite_instance(rng);
    CHECK(check_cross_composite(inst).passed);
  }
}
