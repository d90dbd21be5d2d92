#pragma once

// Invariants of Q and quadratic fields (discriminant, signature, class
// number, regulator, roots of unity, embeddings), K-group tables with
// provenance, Betti ranks and the Weil-etale cohomology tables of Spec O_F.
// Higher-degree fields are supported only through ingested data.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zw/comparison.hpp"
#include "zw/real.hpp"
#include "zw/types.hpp"

namespace zw {

struct FieldSpec {
  std::string label;
  std::vector<Integer> poly;  // ascending coefficients, monic
  // Ingested values; for degree <= 2 they are cross-checked against the
  // computed ones.
  std::optional<Integer> d;
  std::optional<Integer> h;
  std::optional<long> w;
  std::optional<std::string> reg;
  std::string source = "builtin";

  long degree() const { return static_cast<long>(poly.size()) - 1; }
};

struct Signature {
  long r1 = 1;
  long r2 = 0;
  long degree() const { return r1 + 2 * r2; }
  long unit_rank() const { return r1 + r2 - 1; }
};

// Squarefree D with F = Q(sqrt D); 1 for Q.  Degree <= 2 only.
Integer quadratic_radicand(const FieldSpec& f);
Integer field_discriminant(const FieldSpec& f);
Signature signature(const FieldSpec& f);
Signature signature_from_discriminant(const Integer& d);
long roots_of_unity(const FieldSpec& f);

// Reduced primitive forms of discriminant d < 0.
std::vector<std::array<Integer, 3>> reduced_forms(const Integer& d);
Integer class_number(const FieldSpec& f);

// Fundamental unit a + b*omega (b > 0) with omega = sqrt D or (1 + sqrt D)/2,
// from the continued fraction of -conj(omega).  Empty when the unit rank is 0.
std::optional<std::pair<Integer, Integer>> fundamental_unit(const FieldSpec& f);
Ball regulator(const FieldSpec& f, Precision prec);

// Minimal polynomial of omega (ascending): a monogenic model of O_F.
std::vector<Integer> maximal_order_poly(const FieldSpec& f);

struct FieldInvariants {
  std::string label;
  Integer d;
  Signature sig;
  Integer h;
  Ball R;
  long w = 2;
  std::optional<std::pair<Integer, Integer>> unit;
  std::vector<std::string> sources;
};

FieldInvariants compute_invariants(const FieldSpec& f, Precision prec);

struct BettiRanks {
  long a = 0;
  long b = 0;
};

BettiRanks betti_ranks(const Signature& sig, long r);

// Rows are embeddings (real ones, then one of each conjugate pair and its
// conjugate), columns the integral basis (1, omega).
Matrix<ComplexBall> embedding_matrix(const FieldSpec& f, Precision prec);
// det^2 = d_F within tol and det / sqrt|d_F| = +-i^r2.
ComparisonReport check_embedding_determinant(const FieldSpec& f, Precision prec, double tol = 1e-10);

struct KGroupEntry {
  long n = 0;
  long rank = 0;
  std::optional<Integer> torsion;  // order of the torsion subgroup
  std::string source;
};

struct KGroupTable {
  std::string field;
  std::map<long, KGroupEntry> entries;

  // Throws MissingDataError.
  const KGroupEntry& at(long n) const;
  const Integer& torsion(long n) const;
  bool has(long n) const { return entries.count(n) != 0; }
};

// rank K_n(O_F): n = 2m - 1 >= 3 gives r2 (m even) or r1 + r2 (m odd);
// n = 1 gives the unit rank; even n >= 2 gives 0.
long borel_rank(const Signature& sig, long n);

// Entries whose rank disagrees with borel_rank, as messages.
std::vector<std::string> borel_mismatches(const KGroupTable& t, const Signature& sig);

// Ranks from borel_rank for n in [lo, hi] not already present; torsion left
// unknown.
KGroupTable with_borel_ranks(KGroupTable t, const Signature& sig, long lo, long hi);

struct WeilEtaleGroup {
  long j = 0;
  long rank = 0;
  std::optional<Integer> torsion;  // unknown when the input lacks it
  std::string description;
};

// Groups H^j_W(Spec O_F, Z(r)) in the degrees where they can be nonzero; all
// other degrees vanish.  Orders hold only up to finite 2-torsion.
struct WeilEtaleTable {
  long r = 0;
  std::vector<WeilEtaleGroup> groups;
  bool up_to_two_torsion = true;
  std::vector<std::string> sources;

  const WeilEtaleGroup* at(long j) const;
};

WeilEtaleTable weil_etale_table(const FieldInvariants& inv, long r, const KGroupTable& k);

FieldSpec parse_field_json(const std::string& text, const std::string& where);
KGroupTable parse_kgroup_json(const std::string& text, const std::string& where);
FieldSpec load_field_file(const std::string& path);
KGroupTable load_kgroup_file(const std::string& path);

}  // namespace zw
