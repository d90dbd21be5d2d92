#include "zw/integer_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace zw {

namespace {

using Index = Eigen::Index;

ZMatrix identity(Index n) {
  ZMatrix m = ZMatrix::Constant(n, n, Integer(0));
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

void add_row_multiple(ZMatrix& m, Index target, Index source, const Integer& q) {
  if (q == 0) return;
  for (Index j = 0; j < m.cols(); ++j) m(target, j) -= q * m(source, j);
}

void add_col_multiple(ZMatrix& m, Index target, Index source, const Integer& q) {
  if (q == 0) return;
  for (Index i = 0; i < m.rows(); ++i) m(i, target) -= q * m(i, source);
}

}  // namespace

SmithForm smith_normal_form(const ZMatrix& a) {
  const Index m = a.rows(), n = a.cols();
  SmithForm s;
  s.diag = a;
  s.left = identity(m);
  s.right = identity(n);
  ZMatrix& d = s.diag;
  ZMatrix& u = s.left;
  ZMatrix& v = s.right;

  for (Index t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    Index pi = -1, pj = -1;
    for (Index i = t; i < m; ++i)
      for (Index j = t; j < n; ++j)
        if (d(i, j) != 0 && (pi < 0 || abs_int(d(i, j)) < abs_int(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    d.row(pi).swap(d.row(t));
    u.row(pi).swap(u.row(t));
    d.col(pj).swap(d.col(t));
    v.col(pj).swap(v.col(t));

    for (;;) {
      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = d(i, t) / d(t, t);
        add_row_multiple(d, i, t, q);
        add_row_multiple(u, i, t, q);
        if (d(i, t) != 0) {
          clean = false;
          d.row(i).swap(d.row(t));
          u.row(i).swap(u.row(t));
        }
      }
      for (Index j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = d(t, j) / d(t, t);
        add_col_multiple(d, j, t, q);
        add_col_multiple(v, j, t, q);
        if (d(t, j) != 0) {
          clean = false;
          d.col(j).swap(d.col(t));
          v.col(j).swap(v.col(t));
        }
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row and retry.
      Index bad = -1;
      for (Index i = t + 1; i < m && bad < 0; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row_multiple(d, t, bad, Integer(-1));
      add_row_multiple(u, t, bad, Integer(-1));
    }
    if (d(t, t) < 0) {
      d.row(t) *= Integer(-1);
      u.row(t) *= Integer(-1);
    }
    s.divisors.push_back(d(t, t));
  }
  return s;
}

ZMatrix hermite_normal_form(const ZMatrix& a) {
  ZMatrix h = a;
  const Index m = h.rows(), n = h.cols();
  Index row = 0;
  for (Index col = 0; col < n && row < m; ++col) {
    for (;;) {
      Index best = -1;
      for (Index i = row; i < m; ++i)
        if (h(i, col) != 0 && (best < 0 || abs_int(h(i, col)) < abs_int(h(best, col)))) best = i;
      if (best < 0) break;
      h.row(best).swap(h.row(row));
      bool clean = true;
      for (Index i = row + 1; i < m; ++i) {
        if (h(i, col) == 0) continue;
        add_row_multiple(h, i, row, Integer(h(i, col) / h(row, col)));
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (row >= m || h(row, col) == 0) continue;
    if (h(row, col) < 0) h.row(row) *= Integer(-1);
    for (Index i = 0; i < row; ++i) {
      Integer q = h(i, col) / h(row, col);
      if (h(i, col) - q * h(row, col) < 0) q -= 1;
      add_row_multiple(h, i, row, q);
    }
    ++row;
  }
  return h.topRows(row);
}

ZMatrix integer_kernel(const ZMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  const Index k = a.cols() - s.rank();
  if (k == 0) return ZMatrix(a.cols(), 0);
  const ZMatrix basis = s.right.rightCols(k);
  return hermite_normal_form(basis.transpose()).transpose();
}

bool integer_solve(const ZMatrix& a, const ZVector& b, ZVector& x) {
  const SmithForm s = smith_normal_form(a);
  const ZVector ub = s.left * b;
  ZVector y = ZVector::Constant(a.cols(), Integer(0));
  for (Index i = 0; i < ub.size(); ++i) {
    if (i < s.rank()) {
      if (ub(i) % s.divisors[static_cast<size_t>(i)] != 0) return false;
      y(i) = ub(i) / s.divisors[static_cast<size_t>(i)];
    } else if (ub(i) != 0) {
      return false;
    }
  }
  x = s.right * y;
  return true;
}

Integer lattice_index(const ZMatrix& a) {
  Integer p = 1;
  for (const auto& d : smith_normal_form(a).divisors) p *= d;
  return p;
}

Integer determinant(const ZMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Index n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  ZMatrix m = a;
  Integer sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Index swap = -1;
      for (Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Integer GroupStructure::torsion_order() const {
  Integer p = 1;
  for (const auto& t : torsion) p *= t;
  return p;
}

GroupStructure cokernel_structure(const ZMatrix& relations, Eigen::Index generators) {
  if (relations.rows() != generators) throw std::invalid_argument("relation matrix has wrong row count");
  GroupStructure g;
  const SmithForm s = smith_normal_form(relations);
  g.free_rank = static_cast<long>(generators - s.rank());
  for (const auto& d : s.divisors)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

}  // namespace zw
