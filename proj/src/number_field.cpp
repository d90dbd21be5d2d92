#include "zw/number_field.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "zw/errors.hpp"
#include "zw/zeta.hpp"

namespace zw {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

Integer isqrt(const Integer& n) { return boost::multiprecision::sqrt(n); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer mod(const Integer& a, long m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw std::invalid_argument("zero has no squarefree part");
  Integer m = abs(n);
  Integer out = 1;
  for (Integer p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2 == 1) out *= p;
  }
  out *= m;
  return n < 0 ? Integer(-out) : out;
}

void require_quadratic(const FieldSpec& f) {
  if (f.degree() < 1) throw std::invalid_argument("field polynomial must have degree >= 1");
  if (f.degree() > 2)
    throw UnsupportedDegreeError("invariants of degree " + std::to_string(f.degree()) +
                                 " fields are available only by ingestion");
}

// omega is a root of x^2 - t x + n.
struct Omega {
  Integer t;
  Integer n;
};

Omega omega_of(const Integer& D) {
  if (mod(D, 4) == 1) return {Integer(1), Integer((1 - D) / 4)};
  return {Integer(0), Integer(-D)};
}

// Counts real roots of a monic integer polynomial from the companion matrix.
long count_real_roots(const std::vector<Integer>& poly) {
  const long n = static_cast<long>(poly.size()) - 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (long i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (long i = 0; i < n; ++i) c(i, n - 1) = -poly[static_cast<size_t>(i)].convert_to<double>();
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  long real = 0;
  for (long i = 0; i < n; ++i)
    if (std::fabs(es.eigenvalues()(i).imag()) < 1e-9 * (1.0 + std::abs(es.eigenvalues()(i)))) ++real;
  return real;
}

long to_long(const Integer& x, const char* what) {
  if (abs(x) > Integer(1000000000L)) throw UnsupportedDegreeError(std::string(what) + " too large");
  return x.convert_to<long>();
}

}  // namespace

Integer quadratic_radicand(const FieldSpec& f) {
  require_quadratic(f);
  if (f.degree() == 1) return 1;
  const Integer& c = f.poly[0];
  const Integer& b = f.poly[1];
  const Integer disc = b * b - 4 * c;
  if (disc == 0) throw std::invalid_argument(f.label + ": polynomial is not squarefree");
  const Integer D = squarefree_part(disc);
  if (D == 1) throw std::invalid_argument(f.label + ": polynomial is reducible over Q");
  return D;
}

Integer field_discriminant(const FieldSpec& f) {
  if (f.degree() > 2) {
    if (!f.d) throw MissingDataError(f.label + ": no ingested discriminant");
    return *f.d;
  }
  const Integer D = quadratic_radicand(f);
  if (D == 1) return 1;
  return mod(D, 4) == 1 ? D : Integer(4 * D);
}

Signature signature_from_discriminant(const Integer& d) {
  if (d == 1) return {1, 0};
  if (d > 0) return {2, 0};
  return {0, 1};
}

Signature signature(const FieldSpec& f) {
  if (f.degree() <= 2) return signature_from_discriminant(field_discriminant(f));
  const long r1 = count_real_roots(f.poly);
  return {r1, (f.degree() - r1) / 2};
}

long roots_of_unity(const FieldSpec& f) {
  if (f.degree() > 2) {
    if (!f.w) throw MissingDataError(f.label + ": no ingested w");
    return *f.w;
  }
  const Integer d = field_discriminant(f);
  if (d == -4) return 4;
  if (d == -3) return 6;
  return 2;
}

std::vector<std::array<Integer, 3>> reduced_forms(const Integer& d) {
  if (d >= 0) throw std::invalid_argument("reduced_forms needs d < 0");
  const Integer m = mod(d, 4);
  if (m != 0 && m != 1) throw std::invalid_argument("d is not a discriminant");
  std::vector<std::array<Integer, 3>> out;
  const Integer bound = isqrt(Integer(-d / 3)) + 1;
  for (Integer a = 1; a <= bound; ++a) {
    for (Integer b = -a + 1; b <= a; ++b) {
      if (mod(b - d, 2) != 0) continue;
      const Integer num = b * b - d;
      if (num % (4 * a) != 0) continue;
      const Integer c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd(gcd(a, abs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

std::optional<std::pair<Integer, Integer>> fundamental_unit(const FieldSpec& f) {
  const Integer d = field_discriminant(f);
  if (d <= 1) return std::nullopt;
  const Integer D = quadratic_radicand(f);
  const Omega om = omega_of(D);
  const Integer s = isqrt(D);
  // -conj(omega) = (P + sqrt D) / Q
  Integer P = om.t == 1 ? Integer(-1) : Integer(0);
  Integer Q = om.t == 1 ? Integer(2) : Integer(1);
  // convergents p_k / q_k = a_k p_{k-1} + p_{k-2} over the same for q
  Integer pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
  for (int k = 0; k < 100000; ++k) {
    if (Q <= 0) throw std::logic_error("continued fraction left the reduced range");
    const Integer a = floor_div(P + s, Q);
    const Integer pk = a * pm1 + pm2;
    const Integer qk = a * qm1 + qm2;
    const Integer norm = pk * pk + pk * qk * om.t + qk * qk * om.n;
    if (qk > 0 && (norm == 1 || norm == -1)) return std::make_pair(pk, qk);
    pm2 = pm1;
    pm1 = pk;
    qm2 = qm1;
    qm1 = qk;
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  throw std::logic_error("no fundamental unit found");
}

Ball regulator(const FieldSpec& f, Precision prec) {
  if (f.degree() > 2) {
    if (!f.reg) throw MissingDataError(f.label + ": no ingested regulator");
    const Real r = Real::parse(*f.reg, prec);
    // ingested decimals are trusted to their last printed digit
    const size_t dot = f.reg->find('.');
    const long digits = dot == std::string::npos ? 0 : static_cast<long>(f.reg->size() - dot - 1);
    return Ball(r, std::pow(10.0, -static_cast<double>(digits)));
  }
  const auto unit = fundamental_unit(f);
  if (!unit) return Ball(1L, prec);
  const Integer D = quadratic_radicand(f);
  const Omega om = omega_of(D);
  const Precision wp = prec + 32;
  Ball omega = sqrt(Ball(Rational(D), wp));
  if (om.t == 1) omega = (omega + Ball(1L, wp)) / Ball(2L, wp);
  const Ball eps = Ball(Rational(unit->first), wp) + Ball(Rational(unit->second), wp) * omega;
  return with_precision(log(eps), prec);
}

std::vector<Integer> maximal_order_poly(const FieldSpec& f) {
  const Integer D = quadratic_radicand(f);
  if (D == 1) return {Integer(0), Integer(1)};
  const Omega om = omega_of(D);
  return {om.n, Integer(-om.t), Integer(1)};
}

Integer class_number(const FieldSpec& f) {
  if (f.degree() > 2) {
    if (!f.h) throw MissingDataError(f.label + ": no ingested class number");
    return *f.h;
  }
  const Integer d = field_discriminant(f);
  if (d == 1) return 1;
  if (d < 0) return Integer(static_cast<long>(reduced_forms(d).size()));
  // h = sqrt(d) L(1, chi_d) / (2 R)
  EvalPrecision p;
  p.working_bits = 128;
  const Ball L = dirichlet_L(Ball(1L, p.working_bits), KroneckerCharacter::of(to_long(d, "discriminant")), p);
  const Ball R = regulator(f, p.working_bits);
  const Ball hv = sqrt(Ball(Rational(d), p.working_bits)) * L / (Ball(2L, p.working_bits) * R);
  const Real nearest = round(hv.mid());
  const double dev = (hv - Ball(nearest, 0.0)).mag();
  if (dev > 1e-6)
    throw PrecisionError(f.label + ": analytic class number " + hv.mid().to_string(15) + " is not an integer");
  return Integer(std::llround(nearest.to_double()));
}

FieldInvariants compute_invariants(const FieldSpec& f, Precision prec) {
  FieldInvariants inv;
  inv.label = f.label;
  inv.d = field_discriminant(f);
  inv.sig = signature(f);
  inv.h = class_number(f);
  inv.w = roots_of_unity(f);
  inv.R = regulator(f, prec);
  if (f.degree() <= 2) {
    inv.unit = fundamental_unit(f);
    inv.sources.push_back(inv.d < 0 ? "h: reduced binary quadratic forms"
                                     : (inv.d == 1 ? "h: trivial" : "h: analytic class number formula"));
    inv.sources.push_back(inv.unit ? "R: continued fraction unit" : "R: unit rank 0");
    auto mismatch = [&](const std::string& what) {
      throw ParseError(f.source, f.label + ": ingested " + what + " disagrees with the computed value");
    };
    if (f.d && *f.d != inv.d) mismatch("d");
    if (f.h && *f.h != inv.h) mismatch("h");
    if (f.w && *f.w != inv.w) mismatch("w");
    if (f.reg) {
      const Real r = Real::parse(*f.reg, prec);
      if ((inv.R - Ball(r, 0.0)).mag() > 1e-8) mismatch("reg");
    }
  } else {
    inv.sources.push_back("ingested: " + f.source);
  }
  return inv;
}

BettiRanks betti_ranks(const Signature& sig, long r) {
  const bool even = r % 2 == 0;
  return {even ? sig.r2 : sig.r1 + sig.r2, even ? sig.r1 + sig.r2 : sig.r2};
}

Matrix<ComplexBall> embedding_matrix(const FieldSpec& f, Precision prec) {
  const Integer D = quadratic_radicand(f);
  if (D == 1) {
    Matrix<ComplexBall> m(1, 1);
    m(0, 0) = ComplexBall(Rational(1), prec);
    return m;
  }
  const Omega om = omega_of(D);
  const Ball root = sqrt(Ball(Rational(abs(D)), prec));
  const Ball zero(0L, prec);
  ComplexBall s1 = D > 0 ? ComplexBall(root) : ComplexBall(zero, root);
  ComplexBall s2 = -s1;
  if (om.t == 1) {
    const ComplexBall half(Rational(1, 2), prec);
    s1 = half + half * s1;
    s2 = half + half * s2;
  }
  Matrix<ComplexBall> m(2, 2);
  m(0, 0) = ComplexBall(Rational(1), prec);
  m(0, 1) = s1;
  m(1, 0) = ComplexBall(Rational(1), prec);
  m(1, 1) = s2;
  return m;
}

ComparisonReport check_embedding_determinant(const FieldSpec& f, Precision prec, double tol) {
  const Matrix<ComplexBall> m = embedding_matrix(f, prec);
  const ComplexBall det = m.rows() == 1 ? m(0, 0) : m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Integer d = field_discriminant(f);
  const Signature sig = signature(f);
  ComparisonReport rep;
  rep.tolerance = tol;
  const ComplexBall sq = det * det - ComplexBall(Rational(d), prec);
  const Ball root = sqrt(Ball(Rational(abs(d)), prec));
  const ComplexBall ratio = det / ComplexBall(root);
  // +-i^r2 is +-1 or +-i
  const ComplexBall unit = sig.r2 % 2 == 0 ? ComplexBall(Rational(1), prec) : ComplexBall::i(prec);
  const double dev_ratio = std::min((ratio - unit).mag(), (ratio + unit).mag());
  rep.deviation = std::max(sq.mag(), dev_ratio);
  rep.lhs = "det^2 = " + (det * det).re().to_string(20);
  rep.rhs = "d_F = " + d.str();
  rep.notes = "det / sqrt|d_F| = " + ratio.re().to_string(10) + " + " + ratio.im().to_string(10) + "i";
  rep.passed = *rep.deviation < tol;
  return rep;
}

const KGroupEntry& KGroupTable::at(long n) const {
  const auto it = entries.find(n);
  if (it == entries.end()) throw MissingDataError("K-group table for " + field + " lacks K_" + std::to_string(n));
  return it->second;
}

const Integer& KGroupTable::torsion(long n) const {
  const KGroupEntry& e = at(n);
  if (!e.torsion) throw MissingDataError("K-group table for " + field + " lacks the torsion of K_" + std::to_string(n));
  return *e.torsion;
}

long borel_rank(const Signature& sig, long n) {
  if (n < 0) throw std::invalid_argument("negative K-group index");
  if (n == 0) return 1;
  if (n == 1) return sig.unit_rank();
  if (n % 2 == 0) return 0;
  const long m = (n + 1) / 2;
  return m % 2 == 0 ? sig.r2 : sig.r1 + sig.r2;
}

std::vector<std::string> borel_mismatches(const KGroupTable& t, const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& [n, e] : t.entries) {
    const long expect = borel_rank(sig, n);
    if (e.rank != expect)
      out.push_back("K_" + std::to_string(n) + "(" + t.field + "): rank " + std::to_string(e.rank) +
                    ", Borel rank " + std::to_string(expect));
  }
  return out;
}

KGroupTable with_borel_ranks(KGroupTable t, const Signature& sig, long lo, long hi) {
  for (long n = lo; n <= hi; ++n)
    if (!t.has(n)) t.entries[n] = KGroupEntry{n, borel_rank(sig, n), std::nullopt, "Borel rank formula"};
  return t;
}

const WeilEtaleGroup* WeilEtaleTable::at(long j) const {
  for (const auto& g : groups)
    if (g.j == j) return &g;
  return nullptr;
}

WeilEtaleTable weil_etale_table(const FieldInvariants& inv, long r, const KGroupTable& k) {
  WeilEtaleTable t;
  t.r = r;
  const long units = inv.sig.unit_rank();
  auto add = [&](long j, long rank, std::optional<Integer> tor, std::string what) {
    t.groups.push_back({j, rank, std::move(tor), std::move(what)});
  };
  auto kg = [&](long n) -> const KGroupEntry& {
    const KGroupEntry& e = k.at(n);
    if (!e.source.empty()) t.sources.push_back("K_" + std::to_string(n) + ": " + e.source);
    return e;
  };
  if (r == 0) {
    add(0, 1, Integer(1), "Z");
    add(2, units, inv.h, "extension of the dual of the units by the dual of Pic");
    add(3, 0, Integer(inv.w), "dual of mu_F");
    t.sources.insert(t.sources.end(), inv.sources.begin(), inv.sources.end());
  } else if (r == 1) {
    add(1, units, Integer(inv.w), "O_F^*");
    add(2, 0, inv.h, "Pic(O_F)");
    add(3, 1, Integer(1), "Z");
    t.sources.insert(t.sources.end(), inv.sources.begin(), inv.sources.end());
  } else if (r > 1) {
    const KGroupEntry& odd = kg(2 * r - 1);
    const KGroupEntry& even = kg(2 * r - 2);
    add(1, odd.rank, odd.torsion, "K_" + std::to_string(2 * r - 1) + "(O_F)");
    add(2, even.rank, even.torsion, "K_" + std::to_string(2 * r - 2) + "(O_F)");
  } else {
    const KGroupEntry& odd = kg(1 - 2 * r);
    const KGroupEntry& even = kg(-2 * r);
    // even K-groups are finite by Borel, so the torsion order is the group order
    add(2, odd.rank, even.torsion,
        "dual of K_" + std::to_string(-2 * r) + "(O_F), extended by the dual of K_" + std::to_string(1 - 2 * r) +
            "(O_F) mod torsion");
    add(3, 0, odd.torsion, "dual of K_" + std::to_string(1 - 2 * r) + "(O_F)_tors");
  }
  return t;
}

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where, e.what());
  }
}

void require_format(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "top-level value must be an object");
  if (!j.contains("format")) throw ParseError(where, "missing \"format\" key");
  if (!j["format"].is_number_integer() || j["format"].get<long>() != 1)
    throw ParseError(where, "unsupported \"format\" (expected 1)");
}

Integer integer_field(const json& v, const std::string& where, const std::string& key) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError(where, "field \"" + key + "\" must be an integer");
}

std::string string_field(const json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(where, "field \"" + key + "\" must be a string");
  return j[key].get<std::string>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

FieldSpec parse_field_json(const std::string& text, const std::string& where) {
  const json j = parse_json(text, where);
  require_format(j, where);
  FieldSpec f;
  f.source = where;
  f.label = string_field(j, where, "label");
  if (!j.contains("poly") || !j["poly"].is_array() || j["poly"].size() < 2)
    throw ParseError(where, "field \"poly\" must be an array of at least two integers");
  for (size_t i = 0; i < j["poly"].size(); ++i)
    f.poly.push_back(integer_field(j["poly"][i], where, "poly[" + std::to_string(i) + "]"));
  if (f.poly.back() != 1) throw ParseError(where, "field \"poly\" must be monic (last coefficient 1)");
  if (j.contains("h")) {
    f.h = integer_field(j["h"], where, "h");
    if (*f.h <= 0) throw ParseError(where, "field \"h\" must be positive");
  }
  if (j.contains("w")) {
    const Integer w = integer_field(j["w"], where, "w");
    if (w <= 0 || w % 2 != 0) throw ParseError(where, "field \"w\" must be a positive even integer");
    f.w = w.convert_to<long>();
  }
  if (j.contains("d")) f.d = integer_field(j["d"], where, "d");
  if (j.contains("reg")) {
    f.reg = string_field(j, where, "reg");
    try {
      if (Real::parse(*f.reg, 64).sign() <= 0) throw ParseError(where, "field \"reg\" must be positive");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(where, "field \"reg\" is not a decimal number");
    }
  }
  return f;
}

KGroupTable parse_kgroup_json(const std::string& text, const std::string& where) {
  const json j = parse_json(text, where);
  require_format(j, where);
  KGroupTable t;
  t.field = string_field(j, where, "field");
  if (!j.contains("groups") || !j["groups"].is_array()) throw ParseError(where, "field \"groups\" must be an array");
  for (size_t i = 0; i < j["groups"].size(); ++i) {
    const json& g = j["groups"][i];
    const std::string at = where + ": groups[" + std::to_string(i) + "]";
    if (!g.is_object()) throw ParseError(at, "entry must be an object");
    KGroupEntry e;
    if (!g.contains("n")) throw ParseError(at, "missing \"n\"");
    e.n = integer_field(g["n"], at, "n").convert_to<long>();
    if (e.n < 0) throw ParseError(at, "\"n\" must be nonnegative");
    if (!g.contains("rank")) throw ParseError(at, "missing \"rank\"");
    e.rank = integer_field(g["rank"], at, "rank").convert_to<long>();
    if (e.rank < 0) throw ParseError(at, "\"rank\" must be nonnegative");
    if (g.contains("torsion")) {
      e.torsion = integer_field(g["torsion"], at, "torsion");
      if (*e.torsion <= 0) throw ParseError(at, "\"torsion\" must be positive");
    }
    e.source = string_field(g, at, "source");
    if (t.entries.count(e.n)) throw ParseError(at, "duplicate entry for n = " + std::to_string(e.n));
    t.entries[e.n] = e;
  }
  return t;
}

FieldSpec load_field_file(const std::string& path) { return parse_field_json(read_file(path), path); }

KGroupTable load_kgroup_file(const std::string& path) { return parse_kgroup_json(read_file(path), path); }

}  // namespace zw
