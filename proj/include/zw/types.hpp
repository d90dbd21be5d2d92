#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>

namespace zw {

using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int,
                                  boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ZMatrix = Matrix<Integer>;
using QMatrix = Matrix<Rational>;
using ZVector = Vector<Integer>;
using QVector = Vector<Rational>;

inline Integer numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline QMatrix to_rational(const ZMatrix& m) {
  return m.unaryExpr([](const Integer& x) { return Rational(x); });
}

Integer factorial(long n);
Integer binomial(long n, long k);

}  // namespace zw
