#include "zw/exact_sequence.hpp"

namespace zw {

namespace {

using Index = Eigen::Index;

QMatrix to_q(const ZMatrix& m) { return to_rational(m); }

ZMatrix to_z(const QMatrix& m) {
  ZMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (denominator(m(i, j)) != 1) throw std::logic_error("expected an integral matrix");
      out(i, j) = numerator(m(i, j));
    }
  return out;
}

QMatrix q_identity(Index n) { return identity_like<Rational>(n, Rational(0)); }

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

QMatrix random_q(Rng& rng, Index rows, Index cols, long bound) {
  return detail::random_matrix_like<Rational>(rng, rows, cols, Rational(0), bound);
}

// Random invertible rational matrix with small denominators.
QMatrix random_invertible_q(Rng& rng, Index n) {
  QMatrix m = detail::random_invertible_like<Rational>(rng, n, Rational(0));
  for (Index i = 0; i < n; ++i) m.row(i) /= Rational(uniform_int(rng, 1, 3));
  return m;
}

// Coordinates on the free quotient A / A_tor of a presented group.
struct FreeCoordinates {
  QMatrix project;  // free x generators, kernel = span of relations
  QMatrix lift;     // generators x free, project * lift = 1, columns integral
  Integer torsion = 1;
};

FreeCoordinates free_coordinates(const GroupPresentation& a) {
  if (a.relations.rows() != a.generators) throw DiagramError("relation matrix has the wrong number of rows");
  const SmithForm s = smith_normal_form(a.relations);
  const Index free = a.generators - s.rank();
  FreeCoordinates fc;
  const QMatrix u = to_q(s.left);
  fc.project = u.bottomRows(free);
  fc.lift = inverse<Rational>(u).rightCols(free);
  for (const auto& d : s.divisors) fc.torsion *= d;
  return fc;
}

}  // namespace

long uniform_int(Rng& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

std::vector<Eigen::Index> random_ranks(Rng& rng, long maps, long max_rank) {
  std::vector<Eigen::Index> r;
  for (long k = 0; k < maps; ++k) r.push_back(uniform_int(rng, 0, max_rank));
  return r;
}

long derived_rank(const std::vector<GroupDatum>& groups) {
  long r = 0;
  for (size_t j = 0; j < groups.size(); ++j) {
    const long term = static_cast<long>(j) * groups[j].rank;
    r += j % 2 == 0 ? term : -term;
  }
  return r;
}

ZMatrix random_unimodular(Rng& rng, Eigen::Index n, int steps) {
  ZMatrix m = ZMatrix::Constant(n, n, Integer(0));
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  if (n < 2) {
    if (n == 1 && uniform_int(rng, 0, 1) == 1) m(0, 0) = -1;
    return m;
  }
  for (int s = 0; s < steps; ++s) {
    const Index i = uniform_int(rng, 0, n - 1);
    Index j = uniform_int(rng, 0, n - 2);
    if (j >= i) ++j;
    const Integer c(uniform_int(rng, -2, 2));
    m.row(i) += c * m.row(j);
    if (uniform_int(rng, 0, 5) == 0) m.row(i).swap(m.row(j));
  }
  return m;
}

// ----------------------------------------------------------------- lattice comparison

LatticeComparisonResult check_lattice_comparison(const LatticeComparisonInstance& inst) {
  const FreeCoordinates c1 = free_coordinates(inst.a1);
  const FreeCoordinates c2 = free_coordinates(inst.a2);
  const FreeCoordinates c3 = free_coordinates(inst.a3);
  const Index g1 = inst.a1.generators, g2 = inst.a2.generators, g3 = inst.a3.generators;
  if (inst.alpha1.rows() != g2 || inst.alpha1.cols() != g1 || inst.alpha2.rows() != g3 ||
      inst.alpha2.cols() != g2) {
    throw DiagramError("maps between presented groups have the wrong shape");
  }
  const QMatrix a1 = to_q(inst.alpha1), a2 = to_q(inst.alpha2);
  // Maps must respect relations, and the composite must vanish.
  if (!is_zero_matrix<Rational>(QMatrix(c2.project * a1 * to_q(inst.a1.relations))) ||
      !is_zero_matrix<Rational>(QMatrix(c3.project * a2 * to_q(inst.a2.relations))) ||
      !is_zero_matrix<Rational>(QMatrix(c3.project * a2 * a1))) {
    throw DiagramError("maps of presented groups are not well defined or do not compose to zero");
  }
  const Index b1 = inst.beta1.cols(), b2 = inst.beta1.rows(), b3 = inst.beta2.rows();
  if (inst.beta2.cols() != b2) throw DiagramError("free sequence maps have mismatched shapes");
  if (!check_exactness(make_sequence<Rational>({0, b1, b2, b3, 0},
                                               {QMatrix(b1, 0), to_q(inst.beta1), to_q(inst.beta2),
                                                QMatrix(0, b3)}))) {
    throw DiagramError("free sequence is not exact");
  }
  auto check_phi = [](const QMatrix& phi, Index rows, const GroupPresentation& a) {
    if (phi.rows() != rows || phi.cols() != a.generators) throw DiagramError("phi has the wrong shape");
    if (!is_zero_matrix<Rational>(QMatrix(phi * to_q(a.relations)))) {
      throw DiagramError("phi does not vanish on relations");
    }
  };
  check_phi(inst.phi1, b1, inst.a1);
  check_phi(inst.phi2, b2, inst.a2);
  check_phi(inst.phi3, b3, inst.a3);
  if (inst.phi2 * a1 != to_q(inst.beta1) * inst.phi1 || inst.phi3 * a2 != to_q(inst.beta2) * inst.phi2) {
    throw DiagramError("diagram does not commute");
  }
  auto z = [](const QMatrix& phi, const FreeCoordinates& c) {
    const QMatrix m = phi * c.lift;
    if (m.rows() != m.cols()) throw DiagramError("phi is not an isomorphism of the free parts");
    const Rational d = determinant<Rational>(m);
    if (d == 0) throw DiagramError("phi is singular");
    return d;
  };
  LatticeComparisonResult r;
  r.w1 = c1.torsion;
  r.w2 = c2.torsion;
  r.w3 = c3.torsion;
  r.z1 = z(inst.phi1, c1);
  r.z2 = z(inst.phi2, c2);
  r.z3 = z(inst.phi3, c3);
  r.lhs = Rational(r.w2) / Rational(r.w1 * r.w3);
  r.rhs = r.z2 / (r.z1 * r.z3);
  r.passed = abs(r.lhs) == abs(r.rhs);
  return r;
}

LatticeComparisonInstance random_lattice_comparison_instance(Rng& rng) {
  LatticeComparisonInstance inst;
  const Index n = uniform_int(rng, 1, 4);
  const Index m = uniform_int(rng, 0, 3);
  const Index g = uniform_int(rng, 0, 3);
  ZMatrix r2(n, m), gen(n, g);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) r2(i, j) = uniform_int(rng, -4, 4);
    for (Index j = 0; j < g; ++j) gen(i, j) = uniform_int(rng, -2, 2);
  }
  // A1 = subgroup generated by gen, presented by the relations among its generators.
  ZMatrix stacked(n, g + m);
  stacked.leftCols(g) = gen;
  stacked.rightCols(m) = -r2;
  const ZMatrix ker = integer_kernel(stacked);
  inst.a1 = {g, ker.topRows(g)};
  inst.a2 = {n, r2};
  ZMatrix r3(n, g + m);
  r3.leftCols(g) = gen;
  r3.rightCols(m) = r2;
  inst.a3 = {n, r3};
  inst.alpha1 = gen;
  inst.alpha2 = ZMatrix::Constant(n, n, Integer(0));
  for (Index i = 0; i < n; ++i) inst.alpha2(i, i) = 1;

  const FreeCoordinates c1 = free_coordinates(inst.a1);
  const FreeCoordinates c2 = free_coordinates(inst.a2);
  const FreeCoordinates c3 = free_coordinates(inst.a3);
  const Index f1 = c1.project.rows(), f2 = c2.project.rows(), f3 = c3.project.rows();
  const QMatrix fa1 = c2.project * to_q(inst.alpha1) * c1.lift;
  const QMatrix fa2 = c3.project * c2.lift;

  const ZMatrix w = random_unimodular(rng, f2);
  const QMatrix wq = to_q(w);
  const QMatrix w_inv = inverse<Rational>(wq);
  const QMatrix j1 = wq.leftCols(f1);
  const QMatrix t = wq.rightCols(f3);
  const QMatrix j2 = w_inv.bottomRows(f3);
  inst.beta1 = to_z(j1);
  inst.beta2 = to_z(j2);

  const QMatrix phi1 = random_invertible_q(rng, f1);
  const QMatrix phi3 = random_invertible_q(rng, f3);
  const QMatrix x = random_q(rng, f1, f3, 3);
  const QMatrix s = *solve<Rational>(fa2, q_identity(f3));
  const QMatrix basis = hstack(fa1, s);
  const QMatrix phi2 = hstack(QMatrix(j1 * phi1), QMatrix(j1 * x + t * phi3)) * inverse<Rational>(basis);
  inst.phi1 = phi1 * c1.project;
  inst.phi2 = phi2 * c2.project;
  inst.phi3 = phi3 * c3.project;
  return inst;
}

// ----------------------------------------------------------------- cross composites

CrossCompositeResult check_cross_composite(const CrossCompositeInstance& inst) {
  const Index a1 = inst.i1.cols(), a2 = inst.i1.rows(), a3 = inst.i2.rows();
  const Index b1 = inst.j1.cols(), b2 = inst.j1.rows(), b3 = inst.j2.rows();
  if (inst.i2.cols() != a2 || inst.j2.cols() != b2 || inst.rho.rows() != b2 || inst.rho.cols() != a2) {
    throw DiagramError("maps have mismatched shapes");
  }
  if (!check_exactness(make_sequence<Rational>({0, a1, a2, a3, 0}, {QMatrix(a1, 0), inst.i1, inst.i2, QMatrix(0, a3)})) ||
      !check_exactness(make_sequence<Rational>({0, b1, b2, b3, 0}, {QMatrix(b1, 0), inst.j1, inst.j2, QMatrix(0, b3)}))) {
    throw DiagramError("rows of the diagram are not short exact");
  }
  const Rational det_rho = a2 == b2 ? determinant<Rational>(inst.rho) : Rational(0);
  if (det_rho == 0) throw DiagramError("rho is not an isomorphism");
  const QMatrix rho_inv = inverse<Rational>(inst.rho);
  const QMatrix theta = inst.j2 * inst.rho * inst.i1;
  const QMatrix psi = inst.i2 * rho_inv * inst.j1;

  // Compatible kernel bases: x in ker theta maps to j1^-1 rho i1 x in ker psi.
  const QMatrix k_theta = kernel_basis<Rational>(theta);
  const auto k_psi = solve<Rational>(inst.j1, QMatrix(inst.rho * inst.i1 * k_theta));
  if (!k_psi) throw DiagramError("kernel of theta does not land in the image of j1");

  // Compatible cokernel bases: standard vectors u completing im theta; a lift
  // u' with j2 u' = u maps to i2 rho^-1 u'.
  const QMatrix im_theta = select_columns<Rational>(theta, independent_columns<Rational>(theta));
  std::vector<Index> complement;
  for (auto p : independent_columns<Rational>(hstack(im_theta, q_identity(b3))))
    if (p >= im_theta.cols()) complement.push_back(p - im_theta.cols());
  const QMatrix u = select_columns<Rational>(q_identity(b3), complement);
  const auto u_lift = solve<Rational>(inst.j2, u);
  if (!u_lift) throw DiagramError("j2 is not surjective");
  const QMatrix c_psi = inst.i2 * rho_inv * *u_lift;
  const QMatrix im_psi = select_columns<Rational>(psi, independent_columns<Rational>(psi));

  const QMatrix full_theta = hstack(im_theta, u);
  const QMatrix full_psi = hstack(im_psi, c_psi);
  if (full_psi.rows() != full_psi.cols() || rank<Rational>(full_psi) != full_psi.rows()) {
    throw DiagramError("induced map on cokernels is not an isomorphism");
  }
  const Index c = u.cols();
  const QMatrix proj_theta = inverse<Rational>(full_theta).bottomRows(c);
  const QMatrix proj_psi = inverse<Rational>(full_psi).bottomRows(c);

  const Index k = k_theta.cols();
  CrossCompositeResult r;
  r.kernel_dim = k;
  r.cokernel_dim = c;
  r.det_theta = determinant_of_exact_sequence(make_sequence<Rational>({k, a1, b3, c}, {k_theta, theta, proj_theta}));
  r.det_psi = determinant_of_exact_sequence(make_sequence<Rational>({k, b1, a3, c}, {*k_psi, psi, proj_psi}));
  r.det_rho = det_rho;
  // With Ker in position 0 the determinant is the reciprocal of the classical
  // one, so the identity reads det~(psi) = +- det(rho) det~(theta).
  r.passed = abs(r.det_psi) == abs(r.det_rho * r.det_theta);
  return r;
}

CrossCompositeInstance random_cross_composite_instance(Rng& rng) {
  const Index a1 = uniform_int(rng, 0, 3), a3 = uniform_int(rng, 0, 3);
  const Index n = a1 + a3;
  const Index b1 = uniform_int(rng, 0, n);
  // Rows are split sequences of free groups in integral bases, so each has
  // determinant +-1.
  auto split_row = [&](Index k, QMatrix& first, QMatrix& second) {
    const QMatrix w = to_q(random_unimodular(rng, n));
    const QMatrix w_inv = inverse<Rational>(w);
    first = w.leftCols(k);
    second = w_inv.bottomRows(n - k);
  };
  CrossCompositeInstance inst;
  split_row(a1, inst.i1, inst.i2);
  split_row(b1, inst.j1, inst.j2);
  inst.rho = random_invertible_q(rng, n);
  return inst;
}

}  // namespace zw
