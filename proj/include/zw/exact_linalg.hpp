#pragma once

// Gaussian elimination over a field-like scalar.  Instantiated for exact
// rationals and for complex balls; the scalar-specific parts (zero test,
// pivot preference, constants) live in ScalarTraits.

#include <optional>
#include <vector>

#include "zw/errors.hpp"
#include "zw/real.hpp"
#include "zw/types.hpp"

namespace zw {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x == 0; }
  // Exact elimination takes the first nonzero entry as pivot.
  static double pivot_score(const Rational& x) { return x == 0 ? 0.0 : 1.0; }
  static Rational zero_like(const Rational&) { return Rational(0); }
  static Rational one_like(const Rational&) { return Rational(1); }
};

// A ball counts as zero when its midpoint is within 2^12 radii of zero.
inline constexpr double kNumericZeroSlack = 4096.0;

template <>
struct ScalarTraits<ComplexBall> {
  static constexpr bool exact = false;
  static bool is_zero(const ComplexBall& x) {
    return x.mag() <= (1.0 + kNumericZeroSlack) * x.rad();
  }
  static double pivot_score(const ComplexBall& x) { return is_zero(x) ? 0.0 : x.mig() + x.mag(); }
  static ComplexBall zero_like(const ComplexBall& x) {
    return ComplexBall(Real(x.precision()), Real(x.precision()));
  }
  static ComplexBall one_like(const ComplexBall& x) {
    return ComplexBall(Real(1L, x.precision()), Real(x.precision()));
  }
};

template <class S>
Matrix<S> filled(Eigen::Index rows, Eigen::Index cols, const S& value) {
  Matrix<S> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = value;
  return m;
}

template <class S>
Matrix<S> identity_like(Eigen::Index n, const S& ref) {
  using T = ScalarTraits<S>;
  Matrix<S> m = filled<S>(n, n, T::zero_like(ref));
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = T::one_like(ref);
  return m;
}

template <class S>
struct RowEchelon {
  Matrix<S> reduced;                  // reduced row echelon form of A
  Matrix<S> transform;                // invertible, transform * A == reduced
  std::vector<Eigen::Index> pivots;   // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

template <class S>
S reference_scalar(const Matrix<S>& a) {
  if (a.size() > 0) return a(0, 0);
  return S(0);
}

template <class S>
RowEchelon<S> row_echelon(const Matrix<S>& a) {
  using T = ScalarTraits<S>;
  const Eigen::Index m = a.rows(), n = a.cols();
  const S ref = reference_scalar(a);
  RowEchelon<S> out;
  out.reduced = a;
  out.transform = identity_like<S>(m, ref);
  Matrix<S>& r = out.reduced;
  Matrix<S>& t = out.transform;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    Eigen::Index best = -1;
    double best_score = 0.0;
    for (Eigen::Index i = row; i < m; ++i) {
      const double score = T::pivot_score(r(i, col));
      if (score > best_score) {
        best = i;
        best_score = score;
        if (T::exact) break;
      }
    }
    if (best < 0) continue;
    if (best != row) {
      r.row(best).swap(r.row(row));
      t.row(best).swap(t.row(row));
    }
    const S inv = T::one_like(ref) / r(row, col);
    for (Eigen::Index j = 0; j < n; ++j) r(row, j) = r(row, j) * inv;
    for (Eigen::Index j = 0; j < m; ++j) t(row, j) = t(row, j) * inv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == row || T::is_zero(r(i, col))) continue;
      const S f = r(i, col);
      for (Eigen::Index j = 0; j < n; ++j) r(i, j) = r(i, j) - f * r(row, j);
      for (Eigen::Index j = 0; j < m; ++j) t(i, j) = t(i, j) - f * t(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <class S>
Eigen::Index rank(const Matrix<S>& a) {
  return row_echelon(a).rank();
}

// Columns form a basis of the null space, one column per free variable.
template <class S>
Matrix<S> kernel_basis(const Matrix<S>& a) {
  using T = ScalarTraits<S>;
  const RowEchelon<S> e = row_echelon(a);
  const Eigen::Index n = a.cols();
  const S ref = reference_scalar(a);
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (auto p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
  Matrix<S> k = filled<S>(n, n - e.rank(), T::zero_like(ref));
  Eigen::Index c = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    k(free, c) = T::one_like(ref);
    for (Eigen::Index row = 0; row < e.rank(); ++row) {
      k(e.pivots[static_cast<size_t>(row)], c) = -e.reduced(row, free);
    }
    ++c;
  }
  return k;
}

// Indices of the first maximal linearly independent set of columns.
template <class S>
std::vector<Eigen::Index> independent_columns(const Matrix<S>& a) {
  return row_echelon(a).pivots;
}

template <class S>
Matrix<S> select_columns(const Matrix<S>& a, const std::vector<Eigen::Index>& cols) {
  Matrix<S> out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(cols[j]);
  return out;
}

// Some x with a * x == b, or nullopt if b is not in the column space.
template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b) {
  using T = ScalarTraits<S>;
  const RowEchelon<S> e = row_echelon(a);
  const Matrix<S> tb = e.transform * b;
  for (Eigen::Index i = e.rank(); i < tb.rows(); ++i)
    for (Eigen::Index j = 0; j < tb.cols(); ++j)
      if (!T::is_zero(tb(i, j))) return std::nullopt;
  const S ref = a.size() > 0 ? a(0, 0) : reference_scalar(b);
  Matrix<S> x = filled<S>(a.cols(), b.cols(), T::zero_like(ref));
  for (Eigen::Index row = 0; row < e.rank(); ++row) x.row(e.pivots[static_cast<size_t>(row)]) = tb.row(row);
  return x;
}

template <class S>
S determinant(const Matrix<S>& a) {
  using T = ScalarTraits<S>;
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const S ref = reference_scalar(a);
  Matrix<S> r = a;
  const Eigen::Index n = a.rows();
  S det = T::one_like(ref);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index best = -1;
    double best_score = 0.0;
    for (Eigen::Index i = col; i < n; ++i) {
      const double score = T::pivot_score(r(i, col));
      if (score > best_score) {
        best = i;
        best_score = score;
        if (T::exact) break;
      }
    }
    if (best < 0) return T::zero_like(ref);
    if (best != col) {
      r.row(best).swap(r.row(col));
      det = -det;
    }
    det = det * r(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (T::is_zero(r(i, col))) continue;
      const S f = r(i, col) / r(col, col);
      for (Eigen::Index j = col; j < n; ++j) r(i, j) = r(i, j) - f * r(col, j);
    }
  }
  return det;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const RowEchelon<S> e = row_echelon(a);
  if (e.rank() != a.rows()) throw NotExactError("matrix is singular");
  return e.transform;
}

template <class S>
bool is_zero_matrix(const Matrix<S>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!ScalarTraits<S>::is_zero(a(i, j))) return false;
  return true;
}

}  // namespace zw
