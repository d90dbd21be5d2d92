#pragma once

// Determinants of based exact sequences 0 -> V_0 -> ... -> V_n -> 0,
// Euler characteristics of acyclic complexes of finitely generated abelian
// groups, and two constructions comparing integral structures across
// commutative diagrams.

#include <cstdint>
#include <optional>
#include <vector>

#include "zw/errors.hpp"
#include "zw/exact_linalg.hpp"
#include "zw/integer_linalg.hpp"
#include "zw/random.hpp"

namespace zw {

template <class S>
struct BasedSpace {
  Eigen::Index dimension = 0;
  // Columns express the distinguished basis in ambient coordinates.  When
  // absent the standard basis is used.
  std::optional<Matrix<S>> lattice_basis;
};

template <class S>
struct BasedExactSequence {
  std::vector<BasedSpace<S>> spaces;  // V_0 .. V_n
  std::vector<Matrix<S>> maps;        // maps[k] : V_k -> V_{k+1}

  Eigen::Index length() const { return static_cast<Eigen::Index>(spaces.size()) - 1; }
};

template <class S>
BasedExactSequence<S> make_sequence(const std::vector<Eigen::Index>& dims, std::vector<Matrix<S>> maps) {
  BasedExactSequence<S> seq;
  for (auto d : dims) seq.spaces.push_back({d, std::nullopt});
  seq.maps = std::move(maps);
  return seq;
}

template <class S>
S scalar_from_rational(const Rational& q, const S& ref);

template <>
inline Rational scalar_from_rational<Rational>(const Rational& q, const Rational&) {
  return q;
}

template <>
inline ComplexBall scalar_from_rational<ComplexBall>(const Rational& q, const ComplexBall& ref) {
  return ComplexBall(Ball(q, ref.precision()));
}

namespace detail {

template <class S>
void check_shapes(const BasedExactSequence<S>& seq) {
  if (seq.spaces.empty()) throw NotExactError("sequence has no spaces");
  if (seq.maps.size() + 1 != seq.spaces.size()) throw NotExactError("sequence needs one map between consecutive spaces");
  for (size_t k = 0; k < seq.maps.size(); ++k) {
    if (seq.maps[k].rows() != seq.spaces[k + 1].dimension || seq.maps[k].cols() != seq.spaces[k].dimension) {
      throw NotExactError("map " + std::to_string(k) + " has the wrong shape");
    }
  }
  for (const auto& sp : seq.spaces) {
    if (sp.lattice_basis &&
        (sp.lattice_basis->rows() != sp.dimension || sp.lattice_basis->cols() != sp.dimension)) {
      throw NotExactError("lattice basis has the wrong shape");
    }
  }
}

// Maps rewritten in the coordinates of the distinguished bases.
template <class S>
std::vector<Matrix<S>> based_maps(const BasedExactSequence<S>& seq) {
  std::vector<Matrix<S>> out;
  for (size_t k = 0; k < seq.maps.size(); ++k) {
    Matrix<S> m = seq.maps[k];
    if (seq.spaces[k + 1].lattice_basis) m = inverse(*seq.spaces[k + 1].lattice_basis) * m;
    if (seq.spaces[k].lattice_basis) m = m * *seq.spaces[k].lattice_basis;
    out.push_back(std::move(m));
  }
  return out;
}

template <class S>
Matrix<S> random_matrix_like(Rng& rng, Eigen::Index rows, Eigen::Index cols, const S& ref, long bound) {
  Matrix<S> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = scalar_from_rational<S>(Rational(uniform_int(rng, -bound, bound)), ref);
  return m;
}

template <class S>
Matrix<S> random_invertible_like(Rng& rng, Eigen::Index n, const S& ref) {
  for (;;) {
    Matrix<S> m = random_matrix_like<S>(rng, n, n, ref, 3);
    if (row_echelon(m).rank() == n) return m;
  }
}

// dims d_0..d_n, maps in basis coordinates.
template <class S>
S determinant_recursive(const std::vector<Eigen::Index>& dims, const std::vector<Matrix<S>>& maps, const S& ref,
                        Rng* rng) {
  using T = ScalarTraits<S>;
  const size_t n = dims.size() - 1;
  const S one = T::one_like(ref);
  if (n == 0) {
    if (dims[0] != 0) throw NotExactError("a one-term exact sequence must be zero");
    return one;
  }
  if (n == 1) {
    if (dims[0] != dims[1]) throw NotExactError("isomorphism between spaces of different dimension");
    return dims[0] == 0 ? one : determinant(maps[0]);
  }
  if (n == 2) {
    const Matrix<S>& t = maps[0];
    const Matrix<S>& u = maps[1];
    // B'_2: preimages of the basis of V_2 under U.
    auto lift = solve<S>(u, identity_like<S>(dims[2], ref));
    if (!lift) throw NotExactError("last map is not surjective");
    Matrix<S> b2 = *lift;
    if (rng != nullptr && b2.cols() > 0) {
      const Matrix<S> ker = kernel_basis<S>(u);
      if (ker.cols() > 0) b2 += ker * random_matrix_like<S>(*rng, ker.cols(), b2.cols(), ref, 4);
    }
    if (dims[1] == 0) return one;
    Matrix<S> basis(dims[1], dims[1]);
    basis.leftCols(t.cols()) = t;
    basis.rightCols(b2.cols()) = b2;
    return determinant(basis);
  }
  // Split at I = image of V_{n-2} in V_{n-1}.
  const Matrix<S>& f = maps[n - 2];
  Matrix<S> b_i = select_columns<S>(f, independent_columns<S>(f));
  const Eigen::Index m = b_i.cols();
  if (rng != nullptr && m > 0) b_i = b_i * random_invertible_like<S>(*rng, m, ref);
  auto g = solve<S>(b_i, f);
  if (!g) throw NotExactError("image basis does not span the image");
  std::vector<Eigen::Index> dims1(dims.begin(), dims.begin() + static_cast<long>(n - 1));
  dims1.push_back(m);
  std::vector<Matrix<S>> maps1(maps.begin(), maps.begin() + static_cast<long>(n - 2));
  maps1.push_back(*g);
  const std::vector<Eigen::Index> dims2{m, dims[n - 1], dims[n]};
  const std::vector<Matrix<S>> maps2{b_i, maps[n - 1]};
  const S d1 = determinant_recursive<S>(dims1, maps1, ref, rng);
  const S d2 = determinant_recursive<S>(dims2, maps2, ref, rng);
  return n % 2 == 0 ? d1 * d2 : d1 / d2;
}

template <class S>
S reference_of(const BasedExactSequence<S>& seq) {
  for (const auto& m : seq.maps)
    if (m.size() > 0) return m(0, 0);
  for (const auto& sp : seq.spaces)
    if (sp.lattice_basis && sp.lattice_basis->size() > 0) return (*sp.lattice_basis)(0, 0);
  return S(0);
}

}  // namespace detail

// Exactness: consecutive composites vanish and ranks add up at every space,
// the first map is injective and the last surjective.
template <class S>
bool check_exactness(const BasedExactSequence<S>& seq) {
  try {
    detail::check_shapes(seq);
  } catch (const NotExactError&) {
    return false;
  }
  const size_t n = seq.maps.size();
  std::vector<Eigen::Index> ranks;
  for (const auto& m : seq.maps) ranks.push_back(rank<S>(m));
  for (size_t k = 0; k + 1 < n; ++k) {
    if (!is_zero_matrix<S>(Matrix<S>(seq.maps[k + 1] * seq.maps[k]))) return false;
  }
  for (size_t v = 0; v <= n; ++v) {
    const Eigen::Index in = v == 0 ? 0 : ranks[v - 1];
    const Eigen::Index out = v == n ? 0 : ranks[v];
    if (in + out != seq.spaces[v].dimension) return false;
  }
  return true;
}

// Determinant of a based exact sequence, defined inductively: classical for
// one map; for 0 -> V_0 -T-> V_1 -U-> V_2 -> 0 the change of basis from
// (T(B_0), B'_2) to B_1 where U(B'_2) = B_2; longer sequences are split at
// I = im(V_{n-2} -> V_{n-1}) and combined with exponent (-1)^n.
// When `rng` is given the auxiliary lifts and the basis of I are randomized;
// the result does not depend on these choices.
template <class S>
S determinant_of_exact_sequence(const BasedExactSequence<S>& seq, Rng* rng = nullptr) {
  detail::check_shapes(seq);
  if (!check_exactness(seq)) throw NotExactError("sequence is not exact");
  std::vector<Eigen::Index> dims;
  for (const auto& sp : seq.spaces) dims.push_back(sp.dimension);
  return detail::determinant_recursive<S>(dims, detail::based_maps(seq), detail::reference_of(seq), rng);
}

// Splits the sequence at I = im(V_{j-1} -> V_j), 1 <= j <= n-1:
//   0 -> V_0 -> ... -> V_{j-1} -> I -> 0   and   0 -> I -> V_j -> ... -> V_n -> 0.
// det(whole) = det(first) * det(second)^((-1)^(j+1)).
template <class S>
std::pair<BasedExactSequence<S>, BasedExactSequence<S>> splice_at(const BasedExactSequence<S>& seq, size_t j) {
  const size_t n = seq.maps.size();
  if (j < 1 || j + 1 > n) throw std::invalid_argument("splice point out of range");
  const std::vector<Matrix<S>> maps = detail::based_maps(seq);
  const Matrix<S>& f = maps[j - 1];
  const Matrix<S> b_i = select_columns<S>(f, independent_columns<S>(f));
  auto g = solve<S>(b_i, f);
  if (!g) throw NotExactError("image basis does not span the image");
  BasedExactSequence<S> first, second;
  for (size_t k = 0; k < j; ++k) first.spaces.push_back({seq.spaces[k].dimension, std::nullopt});
  first.spaces.push_back({b_i.cols(), std::nullopt});
  for (size_t k = 0; k + 1 < j; ++k) first.maps.push_back(maps[k]);
  first.maps.push_back(*g);
  second.spaces.push_back({b_i.cols(), std::nullopt});
  for (size_t k = j; k <= n; ++k) second.spaces.push_back({seq.spaces[k].dimension, std::nullopt});
  second.maps.push_back(b_i);
  for (size_t k = j; k < n; ++k) second.maps.push_back(maps[k]);
  return {first, second};
}

// Random sequence exact by construction: V_k = (image of V_{k-1}) + (complement
// mapped isomorphically onward), conjugated by random invertible changes of basis.
template <class S>
BasedExactSequence<S> random_exact_sequence(Rng& rng, const std::vector<Eigen::Index>& ranks, const S& ref) {
  // ranks[k] = rank of maps[k]; dims[k] = ranks[k-1] + ranks[k].
  const size_t n = ranks.size();
  std::vector<Eigen::Index> dims(n + 1);
  for (size_t k = 0; k <= n; ++k) dims[k] = (k > 0 ? ranks[k - 1] : 0) + (k < n ? ranks[k] : 0);
  std::vector<Matrix<S>> change;
  for (size_t k = 0; k <= n; ++k) change.push_back(detail::random_invertible_like<S>(rng, dims[k], ref));
  std::vector<Matrix<S>> maps;
  const S zero = ScalarTraits<S>::zero_like(ref);
  for (size_t k = 0; k < n; ++k) {
    Matrix<S> e = filled<S>(dims[k + 1], dims[k], zero);
    const Eigen::Index offset = k > 0 ? ranks[k - 1] : 0;
    if (ranks[k] > 0) {
      e.block(0, offset, ranks[k], ranks[k]) = detail::random_invertible_like<S>(rng, ranks[k], ref);
    }
    maps.push_back(change[k + 1] * e * inverse<S>(change[k]));
  }
  return make_sequence<S>(dims, std::move(maps));
}

// Random ranks for a sequence with n maps, entries in [0, max_rank].
std::vector<Eigen::Index> random_ranks(Rng& rng, long maps, long max_rank);

// ----------------------------------------------------------------- Euler characteristic

struct GroupDatum {
  long rank = 0;
  Integer torsion_order = 1;
};

template <class S>
struct AcyclicComplexData {
  std::vector<GroupDatum> groups;  // H^0, H^1, ...
  std::vector<Matrix<S>> theta;    // theta[i] : H^i_C -> H^{i+1}_C in the integral bases
};

// prod_i |H^i_tor|^((-1)^i) / det(V_*, theta_*); meaningful up to sign.
template <class S>
S euler_characteristic(const AcyclicComplexData<S>& data, const S& ref) {
  if (data.theta.size() + 1 != data.groups.size()) {
    throw NotExactError("need one theta map between consecutive groups");
  }
  std::vector<Eigen::Index> dims;
  for (const auto& g : data.groups) dims.push_back(g.rank);
  const BasedExactSequence<S> seq = make_sequence<S>(dims, data.theta);
  const S det = determinant_of_exact_sequence(seq);
  Rational torsion = 1;
  for (size_t i = 0; i < data.groups.size(); ++i) {
    const Rational t(data.groups[i].torsion_order);
    torsion = i % 2 == 0 ? torsion * t : torsion / t;
  }
  return scalar_from_rational<S>(torsion, ref) / det;
}

long derived_rank(const std::vector<GroupDatum>& groups);

// ----------------------------------------------------------------- lattice comparison

// Z^generators / (column span of relations).
struct GroupPresentation {
  Eigen::Index generators = 0;
  ZMatrix relations;
};

// Short exact sequences 0 -> A1 -> A2 -> A3 -> 0 (presented groups, maps on
// generators) and 0 -> B1 -> B2 -> B3 -> 0 (free), with rational maps
// phi_i : (A_i)_Q -> (B_i)_Q given on generators, killing relations,
// commuting with both sequences.  w_i = |tors A_i|, z_i = det phi_i in the
// integral bases; the identity checked is w2/(w1 w3) = +-z2/(z1 z3).
struct LatticeComparisonInstance {
  GroupPresentation a1, a2, a3;
  ZMatrix alpha1, alpha2;
  ZMatrix beta1, beta2;
  QMatrix phi1, phi2, phi3;
};

struct LatticeComparisonResult {
  Integer w1, w2, w3;
  Rational z1, z2, z3;
  Rational lhs, rhs;  // w2/(w1 w3), z2/(z1 z3)
  bool passed = false;
};

LatticeComparisonResult check_lattice_comparison(const LatticeComparisonInstance& inst);
LatticeComparisonInstance random_lattice_comparison_instance(Rng& rng);

// Two short exact sequences 0 -> A1 -i1-> A2 -i2-> A3 -> 0 and
// 0 -> A1' -j1-> A2' -j2-> A3' -> 0 with rho : A2 -> A2' invertible.
// theta = j2 rho i1, psi = i2 rho^-1 j1; the four-term determinants of
// 0 -> ker -> source -> target -> coker -> 0 satisfy
// det~(psi) = +- det(rho) det~(theta) for compatible kernel/cokernel bases,
// with Ker in position 0 of each sequence.
struct CrossCompositeInstance {
  QMatrix i1, i2, j1, j2, rho;
};

struct CrossCompositeResult {
  Rational det_theta, det_psi, det_rho;
  Eigen::Index kernel_dim = 0, cokernel_dim = 0;
  bool passed = false;
};

CrossCompositeResult check_cross_composite(const CrossCompositeInstance& inst);
CrossCompositeInstance random_cross_composite_instance(Rng& rng);

ZMatrix random_unimodular(Rng& rng, Eigen::Index n, int steps = 12);

}  // namespace zw
