#pragma once

// Integer matrix normal forms: Smith form with unimodular transforms,
// row Hermite form, saturated integer kernels.

#include <vector>

#include "zw/types.hpp"

namespace zw {

struct SmithForm {
  ZMatrix left;    // unimodular U
  ZMatrix diag;    // D = U * A * V
  ZMatrix right;   // unimodular V
  std::vector<Integer> divisors;  // nonzero diagonal entries, d_i | d_{i+1}, all positive
  Eigen::Index rank() const { return static_cast<Eigen::Index>(divisors.size()); }
};

SmithForm smith_normal_form(const ZMatrix& a);

// Row-style Hermite normal form: H = U * A upper echelon with positive pivots
// and entries above each pivot reduced into [0, pivot).  Zero rows removed.
ZMatrix hermite_normal_form(const ZMatrix& a);

// Columns form a basis of the lattice {x in Z^n : a x = 0}.
ZMatrix integer_kernel(const ZMatrix& a);

// x in Z^n with a x = b, if one exists.
bool integer_solve(const ZMatrix& a, const ZVector& b, ZVector& x);

// Absolute value of the determinant of the lattice spanned by the columns of
// a, restricted to its rational span (product of Smith divisors).
Integer lattice_index(const ZMatrix& a);

Integer determinant(const ZMatrix& a);

// Finitely generated abelian group Z^n / (column span of relations).
struct GroupStructure {
  long free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
  Integer torsion_order() const;
};

GroupStructure cokernel_structure(const ZMatrix& relations, Eigen::Index generators);

}  // namespace zw
