#pragma once

// Special-value predictions for Spec O_F compared with numeric leading terms
// "up to sign and powers of 2", the Gamma-factor identities behind the
// functional equation, the cohomology tables of the complexes D(r), and the
// registry of named checks run by the command line and the acceptance suite.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zw/comparison.hpp"
#include "zw/gamma.hpp"
#include "zw/number_field.hpp"
#include "zw/random.hpp"
#include "zw/zeta.hpp"

namespace zw {

// rational * pi^(pi_half_exponent / 2) * i^i_exponent * sqrt|d_F|^sqrt_disc_exponent
// * (regulator if with_regulator).  sqrt(d_F) is rewritten as i^r2 sqrt|d_F|
// (sign dropped), so every value is a real or purely imaginary number.
struct SymbolicValue {
  Rational rational = 1;
  long pi_half_exponent = 0;
  long i_exponent = 0;
  long sqrt_disc_exponent = 0;
  Integer abs_disc = 1;
  bool with_regulator = false;
  std::string regulator_name;  // "R" or "R_r"

  SymbolicValue& operator*=(const SymbolicValue& o);
  // |value| with the given regulator value (ignored unless with_regulator).
  Ball magnitude(Precision prec, const Ball& regulator = Ball(1L, 64)) const;
  std::string to_string() const;
};

// ((2 pi i)^k), and sqrt(d_F)^e = (i^r2 sqrt|d_F|)^e.
SymbolicValue two_pi_i_power(long k);
SymbolicValue sqrt_disc_power(const FieldInvariants& inv, long e);
SymbolicValue from_exact(const ExactGammaValue& v);

// hR/w.
SymbolicValue predict_r0(const FieldInvariants& inv);
// (hR/w) (2 pi i)^r2 sqrt(d_F)^-1.
SymbolicValue predict_r1(const FieldInvariants& inv);

struct SpecialValuePrediction {
  SymbolicValue value;  // carries R_r symbolically when regulator_rank > 0
  long regulator_rank = 0;
  std::vector<std::string> sources;
  std::string notes;
};

// r > 1: |K_{2r-2}| / |K_{2r-1,tors}| R_r ((2 pi i)^r / (r-1)!)^b_r sqrt(d_F)^(1-2r).
// r < 0: |K_{-2r}| / |K_{1-2r,tors}| R_r.
// R_r is the empty determinant 1 when the regulator rank (rank K_{2r-1} for
// r > 1, rank K_{1-2r} for r < 0) vanishes.  MissingDataError when the table
// lacks a needed group or torsion order.
SpecialValuePrediction predict_special_value(const FieldInvariants& inv, long r, const KGroupTable& k);

ComparisonReport verify_r0(const FieldInvariants& inv, const EvalPrecision& p, double tol);
ComparisonReport verify_r1(const FieldInvariants& inv, const EvalPrecision& p, double tol);

struct SpecialValueCheck {
  SpecialValuePrediction prediction;
  LaurentLeading numeric;
  std::optional<ComparisonReport> comparison;  // set when the regulator rank is 0
  std::optional<Ball> implied_regulator;       // |zeta*| / explicit part otherwise
};

SpecialValueCheck verify_special_value(const FieldInvariants& inv, long r, const KGroupTable& k,
                                       const EvalPrecision& p, double tol);

// Expected vanishing order (rank bookkeeping of the K-groups and units)
// against the order detected numerically by leading_term.
ComparisonReport verify_vanishing_order(const FieldInvariants& inv, long r, const KGroupTable& k,
                                        const EvalPrecision& p);

// ------------------------------------------------------------------ Serre Gamma factors

enum class PlaceType { real, complex };

// Hodge numbers h(p, j - p) of H^j of a smooth projective variety of
// dimension d - 1 at one archimedean place; for even j = 2n at a real place
// h(n, n) splits as h(n, +) + h(n, -).
struct HodgeData {
  long j = 0;
  long d = 1;
  PlaceType place = PlaceType::real;
  std::map<long, long> h;  // p -> h(p, j - p)
  long h_plus = 0;
  long h_minus = 0;

  long hodge(long p) const;
  long betti() const;
  long betti_plus() const;   // rank fixed by complex conjugation (real place)
  long betti_minus() const { return betti() - betti_plus(); }
  // Hodge data of H^(2d-2-j) under h'(d-1-p, d-1-q) = h(p, q), with the
  // middle eigenspace dimensions carried over.
  HodgeData dual() const;
  // Throws std::invalid_argument unless h(p, q) = h(q, p), indices lie in
  // [0, d-1], and h(n, +) + h(n, -) = h(n, n) at a real place.
  void validate() const;
};

// Gamma^j_v(s): prod Gamma_C(s - min(p, q))^h(p, q) at a complex place;
// Gamma_R(s - n)^h(n,+) Gamma_R(s - n + 1)^h(n,-) prod_{p < q} Gamma_C(s - p)^h(p, q)
// at a real place.
Ball serre_gamma_factor(const HodgeData& hodge, const Ball& s, Precision prec);
GammaLeading serre_gamma_leading(const HodgeData& hodge, long r);

// Gamma^j_v*(r) / Gamma^(2d-2-j)_v*(d - r) against
//   real place, j even: prod_p Gamma*(r - p)^h(p,q) pi^(-B (r - j/2) + B^(j,r)-)
//   real place, j odd:  prod_p Gamma*(r - p)^h(p,q) pi^(-B (r - (j+1)/2))
//   complex place:      (prod_p Gamma*(r - p)^h(p,q))^2 pi^(-B (2r - (j+1)))
// where B^(j,r)- is B^- for even r and B^+ for odd r.  Passes when the pi
// exponents agree exactly and the rational parts agree up to +-2^k.
ComparisonReport check_serre_gamma_quotient(const HodgeData& hodge, long r);
ExactGammaValue serre_gamma_quotient_closed_form(const HodgeData& hodge, long r);

// Gamma^j_v(s) = Gamma^(2d-2-j)_v(s + d - j - 1), numerically.
IdentityCheck check_serre_gamma_shift(const HodgeData& hodge, const Ball& s, Precision prec);

// Dimensions <= 4, Hodge numbers <= 3, symmetric by construction.
HodgeData random_hodge_data(Rng& rng);

// ------------------------------------------------------------------ functional equation

// Exact form of the compatibility of the r > 1 and r < 0 predictions with
// phi(s) = phi(1 - s), for r >= 2:
//   ((2 pi i)^r / (r-1)!)^b_r sqrt(d_F)^(1-2r) Gamma(r/2)^r1 Gamma(r)^r2
//   = Gamma*((1-r)/2)^r1 Gamma*(1-r)^r2 (2^-r2 sqrt|d_F| pi^(-n/2))^(1-2r)
//     ((2 pi i)^(1-r) (r-1)!)^a_r
// up to sign and powers of 2.
struct FunctionalEquationCompatibility {
  SymbolicValue lhs;
  SymbolicValue rhs;
  ComparisonReport exact;
  // |zeta*(r) / zeta*(1-r)| against |((2 pi)^r/(r-1)!)^b_r sqrt|d|^(1-2r) / ((2 pi)^(1-r) (r-1)!)^a_r|;
  // K-group orders and regulators cancel in this quotient.
  std::optional<ComparisonReport> numeric;
};

FunctionalEquationCompatibility check_functional_equation_compatibility(const FieldInvariants& inv, long r,
                                                                        const EvalPrecision* numeric = nullptr,
                                                                        double tol = 1e-8);

// Seeded non-integral rationals in (-5/2, 7/2) for the functional equation test.
std::vector<Rational> functional_equation_points(Rng& rng, int count);

// ------------------------------------------------------------------ D(r) cohomology

struct DGroup {
  long j = 0;
  long rank = 0;
  std::optional<Integer> torsion;  // unknown for extensions whose torsion is not determined
  std::string description;
};

struct DCohomologyTable {
  long r = 0;
  std::vector<DGroup> groups;
  bool up_to_two_torsion = true;
  std::vector<std::string> sources;

  const DGroup* at(long j) const;
  long alternating_rank_sum() const;
};

// Degrees 0..3 of H^j_W(Spec O_F, D(r)).  For r > 1 the order of H^3 =
// H^1(t(r)) is computed through derived exterior powers when r <= max_dold_kan_r
// and taken as |d_F|^(r-1) otherwise.
DCohomologyTable describe_D_cohomology(const FieldSpec& f, const FieldInvariants& inv, long r, const KGroupTable& k,
                                       long max_dold_kan_r = 3);

// ------------------------------------------------------------------ checks and registry

enum class CheckStatus { passed, failed, skipped, informational };
std::string to_string(CheckStatus s);

struct CheckItem {
  std::string check;
  std::string field;
  std::optional<long> r;
  std::string lhs;
  std::string rhs;
  std::optional<double> log2_ratio;
  std::optional<long> k;
  CheckStatus status = CheckStatus::failed;
  std::vector<std::string> sources;
  std::string notes;
};

CheckItem item_from_report(const std::string& check, const std::string& field, std::optional<long> r,
                           const ComparisonReport& rep);

struct FieldRecord {
  FieldSpec spec;
  FieldInvariants inv;
  KGroupTable k;  // ingested table, or Borel ranks only
  bool k_ingested = false;
};

struct CheckConfig {
  Precision bits = 256;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::optional<std::string> field;  // restrict to one field label
  std::optional<long> r;             // restrict to one r
};

struct CheckContext {
  std::vector<FieldRecord> fields;
  CheckConfig config;

  std::vector<const FieldRecord*> selected_fields(const std::vector<std::string>& default_labels = {}) const;
  std::vector<long> selected_r(long lo, long hi) const;
  EvalPrecision precision() const;
};

// Loads every field file under data_dir/fields and K-group tables under
// data_dir/kgroups (matched to fields by label).  ParseError on bad data;
// compute_invariants cross-checks ingested values.
CheckContext load_context(const std::string& data_dir, const CheckConfig& config);

struct CheckDefinition {
  std::string name;
  std::string description;
  std::function<std::vector<CheckItem>(const CheckContext&)> run;
};

// Checks register themselves at static initialization; order is by name.
const std::vector<CheckDefinition>& check_registry();
const CheckDefinition* find_check(const std::string& name);

struct CheckRegistrar {
  explicit CheckRegistrar(CheckDefinition def);
};

// Runs the checks on config.jobs workers; items keep registry order.
// Exceptions inside a check become failed (or, for MissingDataError,
// skipped) items instead of aborting the batch.
std::vector<CheckItem> run_checks(const std::vector<std::string>& names, const CheckContext& ctx);

}  // namespace zw
