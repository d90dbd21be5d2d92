#include <cmath>
#include <fstream>

#include "doctest.h"
#include "zw/errors.hpp"
#include "zw/number_field.hpp"
#include "zw/zeta.hpp"

using namespace zw;

namespace {

const Precision kBits = 256;
const std::string kData = ZW_TEST_DATA_DIR;

FieldSpec field(const std::string& label, std::vector<long> poly) {
  FieldSpec f;
  f.label = label;
  for (long c : poly) f.poly.push_back(Integer(c));
  return f;
}

// Q(sqrt D) through its maximal-order polynomial.
FieldSpec quadratic(long D) {
  if (((D % 4) + 4) % 4 == 1) return field("Q_sqrt" + std::to_string(D), {(1 - D) / 4, -1, 1});
  return field("Q_sqrt" + std::to_string(D), {-D, 0, 1});
}

bool squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

const std::vector<std::string> kFixtures = {"Q", "Q_i", "Q_sqrt-3", "Q_sqrt-5", "Q_sqrt-23", "Q_sqrt2", "Q_sqrt5"};

FieldSpec fixture(const std::string& label) { return load_field_file(kData + "/fields/" + label + ".json"); }

}  // namespace

TEST_CASE("discriminants and signatures") {
  CHECK(field_discriminant(field("Q", {0, 1})) == 1);
  CHECK(field_discriminant(field("Q_sqrt-5", {5, 0, 1})) == -20);
  CHECK(field_discriminant(field("Q_sqrt5", {-1, -1, 1})) == 5);
  CHECK(field_discriminant(field("Q_sqrt-3", {1, 1, 1})) == -3);
  CHECK(field_discriminant(field("Q_sqrt2", {-2, 0, 1})) == 8);
  // non-maximal model of Q(sqrt 5): x^2 - 5
  CHECK(field_discriminant(field("Q_sqrt5", {-5, 0, 1})) == 5);
  // x^2 - 12 generates Q(sqrt 3)
  CHECK(quadratic_radicand(field("Q_sqrt3", {-12, 0, 1})) == 3);
  CHECK_THROWS_AS(quadratic_radicand(field("cubic", {-2, 0, 0, 1})), UnsupportedDegreeError);
  CHECK_THROWS_AS(quadratic_radicand(field("split", {-4, 0, 1})), std::invalid_argument);

  const auto s = signature(field("Q_sqrt2", {-2, 0, 1}));
  CHECK(s.r1 == 2);
  CHECK(s.r2 == 0);
  CHECK(signature(field("Q_i", {1, 0, 1})).r2 == 1);
  for (const auto& label : kFixtures) {
    const auto f = fixture(label);
    const auto sig = signature(f);
    CHECK(sig.degree() == f.degree());
    CHECK(maximal_order_poly(f) == f.poly);
  }
}

TEST_CASE("roots of unity") {
  CHECK(roots_of_unity(field("Q", {0, 1})) == 2);
  CHECK(roots_of_unity(field("Q_i", {1, 0, 1})) == 4);
  CHECK(roots_of_unity(field("Q_sqrt-3", {1, 1, 1})) == 6);
  CHECK(roots_of_unity(quadratic(-7)) == 2);
  CHECK(roots_of_unity(quadratic(5)) == 2);
}

TEST_CASE("imaginary quadratic class numbers by reduced forms") {
  CHECK(class_number(field("Q_i", {1, 0, 1})) == 1);
  CHECK(class_number(field("Q_sqrt-5", {5, 0, 1})) == 2);
  CHECK(class_number(field("Q_sqrt-23", {6, -1, 1})) == 3);
  const auto forms = reduced_forms(Integer(-23));
  REQUIRE(forms.size() == 3);
  CHECK(forms[0] == std::array<Integer, 3>{1, 1, 6});

  // h = -(w / 2|d|) sum_{0<a<|d|} a chi(a), exact in integers
  for (long D = -1; D >= -200; --D) {
    if (!squarefree(D)) continue;
    const auto f = quadratic(D);
    const long d = field_discriminant(f).convert_to<long>();
    const auto chi = KroneckerCharacter::of(d);
    long s = 0;
    for (long a = 1; a < -d; ++a) s += a * chi(a);
    const long w = roots_of_unity(f);
    CAPTURE(d);
    CHECK(class_number(f) * Integer(2 * -d) == Integer(-w * s));
  }
}

TEST_CASE("real quadratic class numbers from L(1, chi)") {
  CHECK(class_number(quadratic(2)) == 1);
  CHECK(class_number(quadratic(5)) == 1);
  CHECK(class_number(quadratic(10)) == 2);
  CHECK(class_number(quadratic(15)) == 2);
  CHECK(class_number(quadratic(79)) == 3);
  CHECK(class_number(quadratic(229)) == 3);
}

TEST_CASE("analytic class number of the imaginary fixtures is an integer equal to h") {
  for (const auto& label : {"Q_i", "Q_sqrt-3", "Q_sqrt-5", "Q_sqrt-23"}) {
    const auto f = fixture(label);
    const long d = field_discriminant(f).convert_to<long>();
    const Ball L = dirichlet_L(Ball(1L, kBits), KroneckerCharacter::of(d));
    // h = w sqrt|d| L(1, chi) / (2 pi)
    const Ball h = Ball(roots_of_unity(f), kBits) * sqrt(Ball(-d, kBits)) * L / (Ball(2L, kBits) * pi_ball(kBits));
    CAPTURE(label);
    const double hv = h.mid().to_double();
    CHECK(std::fabs(hv - std::round(hv)) < 1e-6);
    CHECK(Integer(std::llround(hv)) == class_number(f));
  }
}

TEST_CASE("fundamental units agree with a brute-force search") {
  CHECK(fundamental_unit(quadratic(2)) == std::make_pair(Integer(1), Integer(1)));
  CHECK(fundamental_unit(quadratic(5)) == std::make_pair(Integer(0), Integer(1)));
  CHECK(!fundamental_unit(quadratic(-5)));
  CHECK(regulator(quadratic(-5), kBits).mid() == Real(1L, kBits));
  const Ball r2 = regulator(quadratic(2), kBits);
  CHECK((r2 - log(Ball(1L, kBits) + sqrt(Ball(2L, kBits)))).mag() < 1e-60);

  for (long D = 2; D <= 150; ++D) {
    if (!squarefree(D)) continue;
    const bool one_mod_4 = D % 4 == 1;
    const long t = one_mod_4 ? 1 : 0, n = one_mod_4 ? (1 - D) / 4 : -D;
    const double omega = one_mod_4 ? (1 + std::sqrt(D)) / 2 : std::sqrt(D);
    // the smallest b >= 1 admitting an integer a with N(a + b omega) = +-1 and a + b omega > 1
    std::optional<std::pair<Integer, Integer>> brute;
    for (long b = 1; b <= 20000 && !brute; ++b) {
      for (long sgn : {1L, -1L}) {
        // a^2 + a b t + b^2 n - sgn = 0
        const long disc = b * b * t * t - 4 * (b * b * n - sgn);
        if (disc < 0) continue;
        const long r = std::lround(std::sqrt(static_cast<double>(disc)));
        if (r * r != disc || (r - b * t) % 2 != 0) continue;
        for (long a : {(-b * t + r) / 2, (-b * t - r) / 2})
          if (a + b * omega > 1.0) brute = std::make_pair(Integer(a), Integer(b));
      }
    }
    if (!brute) continue;  // unit too large for the search
    CAPTURE(D);
    CHECK(fundamental_unit(quadratic(D)) == brute);
  }
  // a large one: D = 94 has unit 2143295 + 221064 sqrt 94
  CHECK(fundamental_unit(quadratic(94)) == std::make_pair(Integer(2143295), Integer(221064)));
}

TEST_CASE("Betti ranks") {
  const Signature q{1, 0}, im{0, 1}, re{2, 0};
  CHECK(betti_ranks(q, 2).a == 0);
  CHECK(betti_ranks(q, 2).b == 1);
  CHECK(betti_ranks(im, 3).a == 1);
  CHECK(betti_ranks(im, 3).b == 1);
  CHECK(betti_ranks(re, 0).a == 0);
  CHECK(betti_ranks(re, 0).b == 2);
  for (const auto& sig : {q, im, re, Signature{3, 2}})
    for (long r = -10; r <= 10; ++r) {
      const auto b = betti_ranks(sig, r);
      CHECK(b.a + b.b == sig.degree());
    }
}

TEST_CASE("embedding determinant") {
  const auto mq = embedding_matrix(field("Q", {0, 1}), kBits);
  CHECK(mq.rows() == 1);
  const auto m5 = embedding_matrix(field("Q_sqrt-5", {5, 0, 1}), kBits);
  const ComplexBall det = m5(0, 0) * m5(1, 1) - m5(0, 1) * m5(1, 0);
  // det = -2 sqrt 5 i
  CHECK(det.real().mag() < 1e-60);
  CHECK((abs(det.imag()) - Ball(2L, kBits) * sqrt(Ball(5L, kBits))).mag() < 1e-60);
  for (const auto& label : kFixtures) {
    const auto rep = check_embedding_determinant(fixture(label), kBits);
    CAPTURE(label);
    CHECK(rep.passed);
    CHECK(*rep.deviation < 1e-10);
  }
}

TEST_CASE("K-group table for Z") {
  const auto k = load_kgroup_file(kData + "/kgroups/Z.json");
  CHECK(k.field == "Q");
  CHECK(k.torsion(3) == 48);
  CHECK(k.at(9).rank == 1);
  CHECK(borel_mismatches(k, Signature{1, 0}).empty());
  for (const auto& [n, e] : k.entries) CHECK(!e.source.empty());
  CHECK_THROWS_AS(k.at(40), MissingDataError);

  auto broken = k;
  broken.entries[5].rank = 0;
  CHECK(borel_mismatches(broken, Signature{1, 0}).size() == 1);

  const auto filled = with_borel_ranks(KGroupTable{"Q_sqrt2", {}}, Signature{2, 0}, 1, 9);
  CHECK(filled.at(1).rank == 1);
  CHECK(filled.at(3).rank == 0);
  CHECK(filled.at(5).rank == 2);
  CHECK(!filled.at(5).torsion);
  CHECK_THROWS_AS(filled.torsion(5), MissingDataError);
}

TEST_CASE("Weil-etale cohomology tables") {
  const auto kz = load_kgroup_file(kData + "/kgroups/Z.json");
  const auto m5 = compute_invariants(fixture("Q_sqrt-5"), kBits);
  const auto t1 = weil_etale_table(m5, 1, KGroupTable{});
  REQUIRE(t1.at(1));
  CHECK(t1.at(1)->rank == 0);
  CHECK(*t1.at(1)->torsion == 2);
  CHECK(*t1.at(2)->torsion == 2);
  CHECK(t1.at(3)->rank == 1);
  CHECK(t1.up_to_two_torsion);

  const auto q = compute_invariants(fixture("Q"), kBits);
  const auto t0 = weil_etale_table(q, 0, kz);
  CHECK(t0.at(0)->rank == 1);
  CHECK(t0.at(2)->rank == 0);
  CHECK(*t0.at(2)->torsion == 1);
  CHECK(*t0.at(3)->torsion == 2);

  const auto tm1 = weil_etale_table(q, -1, kz);
  CHECK(tm1.at(2)->rank == 0);
  CHECK(*tm1.at(2)->torsion == 2);
  CHECK(*tm1.at(3)->torsion == 48);
  CHECK(!tm1.sources.empty());

  const auto t2 = weil_etale_table(q, 2, kz);
  CHECK(*t2.at(1)->torsion == 48);
  CHECK(*t2.at(2)->torsion == 2);
  CHECK_THROWS_AS(weil_etale_table(q, 9, kz), MissingDataError);

  // for r < 0 only degrees 2 and 3 occur
  for (const auto& label : kFixtures) {
    const auto f = fixture(label);
    const auto inv = compute_invariants(f, 128);
    const auto k = with_borel_ranks(KGroupTable{label, {}}, inv.sig, 1, 12);
    for (long r = -5; r < 0; ++r)
      for (const auto& g : weil_etale_table(inv, r, k).groups) CHECK((g.j == 2 || g.j == 3));
    CHECK(weil_etale_table(inv, 0, k).at(2)->rank == inv.sig.unit_rank());
  }
}

TEST_CASE("field files") {
  for (const auto& label : kFixtures) {
    const auto f = fixture(label);
    CHECK(f.label == label);
    const auto inv = compute_invariants(f, kBits);  // cross-checks every ingested value
    CHECK(inv.h >= 1);
    if (inv.sig.unit_rank() == 0) CHECK(inv.R.mid() == Real(1L, kBits));
  }
  CHECK(compute_invariants(fixture("Q_sqrt-23"), kBits).h == 3);

  const auto minimal = parse_field_json(R"({"format": 1, "label": "Q", "poly": [0, 1]})", "inline");
  CHECK(minimal.degree() == 1);
  CHECK(!minimal.h);
  const auto partial = parse_field_json(R"({"format": 1, "label": "m5", "poly": [5, 0, 1], "h": 2})", "inline");
  CHECK(*partial.h == 2);
  CHECK(compute_invariants(partial, 128).w == 2);

  const auto wrong = parse_field_json(R"({"format": 1, "label": "m5", "poly": [5, 0, 1], "h": 3})", "inline");
  CHECK_THROWS_AS(compute_invariants(wrong, 128), ParseError);

  const auto cubic = parse_field_json(
      R"({"format": 1, "label": "Q_cbrt2", "poly": [-2, 0, 0, 1], "d": -108, "h": 1, "w": 2, "reg": "1.3473"})",
      "inline");
  const auto ci = compute_invariants(cubic, 128);
  CHECK(ci.sig.r1 == 1);
  CHECK(ci.sig.r2 == 1);
  CHECK(ci.d == -108);
  CHECK(ci.R.rad() == doctest::Approx(1e-4));
  CHECK_THROWS_AS(compute_invariants(parse_field_json(R"({"format": 1, "label": "c", "poly": [-2, 0, 0, 1]})", "x"), 128),
                  MissingDataError);
}

TEST_CASE("malformed data files are parse errors") {
  const char* bad[] = {
      R"({"format": 1, "label": "Q", "poly": [0, 1])",
      R"({"label": "Q", "poly": [0, 1]})",
      R"({"format": 2, "label": "Q", "poly": [0, 1]})",
      R"({"format": 1, "poly": [0, 1]})",
      R"({"format": 1, "label": "Q", "poly": [0, 2]})",
      R"({"format": 1, "label": "Q", "poly": [0, "x", 1]})",
      R"({"format": 1, "label": "Q", "poly": [0, 1], "h": -1})",
      R"({"format": 1, "label": "Q", "poly": [0, 1], "reg": "abc"})",
      R"([1, 2])",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_field_json(text, "inline"), ParseError);
  }
  try {
    parse_field_json("{\n\"format\": 1,\n\"label\": \n}", "broken.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where() == "broken.json");
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(load_field_file(kData + "/fields/does-not-exist.json"), ParseError);

  const char* bad_k[] = {
      R"({"format": 1, "field": "Q", "groups": [{"n": 3, "rank": 0, "torsion": 48}]})",
      R"({"format": 1, "field": "Q", "groups": [{"n": 3, "rank": -1, "torsion": 48, "source": "s"}]})",
      R"({"format": 1, "field": "Q", "groups": [{"n": 3, "rank": 0, "torsion": 0, "source": "s"}]})",
      R"({"format": 1, "field": "Q", "groups": [{"n": 3, "rank": 0, "source": "s"}, {"n": 3, "rank": 0, "source": "s"}]})",
      R"({"format": 1, "field": "Q", "groups": {}})",
  };
  for (const char* text : bad_k) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_kgroup_json(text, "inline"), ParseError);
  }
}
