#pragma once

// Chain complexes and truncated simplicial modules of free modules over Z or
// a monogenic order Z[x]/(f), the Dold-Kan functors N and K, levelwise
// exterior powers, derived exterior powers, and homology via Smith form.
//
// A map O^a -> O^b is stored already expanded to a (b*d) x (a*d) integer
// matrix, d = rank of O over Z; block (i, j) is the multiplication matrix of
// the (i, j) entry, so the entry itself is the first column of the block.

#include <cstdint>
#include <vector>

#include "zw/comparison.hpp"
#include "zw/random.hpp"
#include "zw/types.hpp"

namespace zw {

class BaseRing {
 public:
  enum class Kind { integers, order };

  static BaseRing integers();
  // Z[x]/(f) for monic f given by ascending coefficients.
  static BaseRing monogenic(std::vector<Integer> poly);

  Kind kind() const { return kind_; }
  long rank() const { return rank_; }
  const std::vector<Integer>& poly() const { return poly_; }

  ZVector one() const;
  ZVector zero() const { return ZVector::Constant(rank_, Integer(0)); }
  ZVector generator() const;  // alpha = class of x
  ZVector multiply(const ZVector& a, const ZVector& b) const;
  ZMatrix multiplication_matrix(const ZVector& a) const;
  // Associativity, commutativity and unit on the basis; throws Error.
  void validate() const;

  bool operator==(const BaseRing& o) const { return kind_ == o.kind_ && poly_ == o.poly_; }

 private:
  Kind kind_ = Kind::integers;
  long rank_ = 1;
  std::vector<Integer> poly_;
  std::vector<ZMatrix> basis_mult_;  // basis_mult_[i] = multiplication by e_i
};

struct FreeModuleMap {
  long domain_rank = 0;
  long codomain_rank = 0;
  ZMatrix matrix;  // expanded over Z

  static FreeModuleMap zero(const BaseRing& ring, long domain, long codomain);
  static FreeModuleMap identity(const BaseRing& ring, long n);
  // From a codomain x domain table of ring elements.
  static FreeModuleMap from_entries(const BaseRing& ring, long domain, long codomain,
                                    const std::vector<std::vector<ZVector>>& entries);
  ZVector entry(const BaseRing& ring, long i, long j) const;
};

FreeModuleMap compose(const FreeModuleMap& g, const FreeModuleMap& f);  // g after f

// Modules in degrees base .. base + ranks.size() - 1; differentials[i] maps
// degree base+i+1 to degree base+i.
struct ChainComplex {
  BaseRing ring = BaseRing::integers();
  long base = 0;
  std::vector<long> ranks;
  std::vector<FreeModuleMap> differentials;

  long top() const { return base + static_cast<long>(ranks.size()) - 1; }
  long rank_at(long degree) const;
  // Highest index (from base) carrying a nonzero module; 0 if none.
  long length() const;
  void validate() const;  // shapes and d o d = 0; throws NotExactError
};

ChainComplex make_complex(const BaseRing& ring, std::vector<long> ranks,
                          std::vector<FreeModuleMap> differentials, long base = 0);

// faces[n][i] : level n -> n-1 (n >= 1, 0 <= i <= n);
// degeneracies[n][j] : level n -> n+1 (n < truncation, 0 <= j <= n).
struct SimplicialModule {
  BaseRing ring = BaseRing::integers();
  long truncation = 0;
  std::vector<long> level_ranks;
  std::vector<std::vector<FreeModuleMap>> faces;
  std::vector<std::vector<FreeModuleMap>> degeneracies;
};

// Throws SimplicialIdentityError naming the first failing identity.
void check_simplicial_identities(const SimplicialModule& s);

struct DegreeHomology {
  long degree = 0;
  long free_rank = 0;
  std::vector<Integer> divisors;  // elementary divisors > 1
  Integer torsion_order() const;
  bool operator==(const DegreeHomology&) const = default;
};

struct HomologyResult {
  std::vector<DegreeHomology> degrees;
  Integer torsion_order() const;
  const DegreeHomology* at(long degree) const;
  // Trivial in every degree except those listed.
  bool operator==(const HomologyResult& o) const;
};

HomologyResult homology(const ChainComplex& c);

// K(C)_n = sum over monotone surjections [n] -> [k] of C_k.
SimplicialModule dold_kan_K(const ChainComplex& c, long truncation);

// Moore complex: N_n = intersection of ker d_i (i >= 1), differential d_0.
// Degrees 0 .. truncation.  Over an order the result is returned over Z.
ChainComplex normalize(const SimplicialModule& s);

// Sum of (-1)^i d_i on the full levels, as a complex over Z.
ChainComplex unnormalized_complex(const SimplicialModule& s);

SimplicialModule levelwise_exterior_power(const SimplicialModule& s, long k);

// k x k minors of the map, k-subsets in lexicographic order.
FreeModuleMap exterior_power(const BaseRing& ring, const FreeModuleMap& m, long k);

long default_truncation(const ChainComplex& c, long k);

// N Lambda^k K (C) in degrees 0 .. truncation - 1.  Throws TruncationError
// if truncation < k * length(C) + 1; truncation < 0 selects the default.
ChainComplex derived_exterior_power(const ChainComplex& c, long k, long truncation = -1);

// [O --f'(alpha)--> O] in degrees 1, 0.
ChainComplex conormal_complex(const std::vector<Integer>& poly);

// Sum over q < r of lambda^q(conormal) shifted so that its degree-p term sits
// in homological degree p - q; cohomological H^j is homological H_{-j}.
ChainComplex t_complex(const std::vector<Integer>& poly, long r, long truncation = -1);

// |H^1(t(r))| against |disc|^(r-1); the discriminant is the norm of f'(alpha)
// unless abs_disc is given.
ComparisonReport check_t_complex_torsion(const std::vector<Integer>& poly, long r,
                                         const Integer& abs_disc = Integer(0));

Integer norm_of_derivative(const std::vector<Integer>& poly);

long euler_char_rank(const ChainComplex& c);

// Module Z^generators / relations, presented as [Z^m --relations--> Z^g]
// in degrees 1, 0 (relations injective).
struct Presentation {
  ZMatrix relations;
  long generators() const { return static_cast<long>(relations.rows()); }
  ChainComplex complex() const;
};

// 0 -> F' -> F -> F'' -> 0 with F presented by [[R', X], [0, R'']].
struct ShortExactSequence {
  Presentation sub, total, quotient;
};

ShortExactSequence make_extension(const ZMatrix& sub_relations, const ZMatrix& quotient_relations,
                                  const ZMatrix& glue);

struct RankIdentityResult {
  long lhs = 0;
  long rhs = 0;
  bool passed = false;
};

// chi^n(F) = sum_{p+q=n} chi^p(F') chi^q(F'') at the level of ranks.
RankIdentityResult check_exterior_euler_multiplicativity(const ShortExactSequence& ses, long n);

ChainComplex random_bounded_complex(Rng& rng, long max_length, long max_rank);
ShortExactSequence random_short_exact_sequence(Rng& rng);

}  // namespace zw
