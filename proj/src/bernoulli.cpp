#include "zw/bernoulli.hpp"

#include <mutex>
#include <stdexcept>
#include <algorithm>
#include <deque>

namespace zw {

Integer factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  Integer r = 1;
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (long j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

namespace {

std::mutex bernoulli_mutex;
// deque: growth keeps earlier references valid.
std::deque<Rational> bernoulli_cache{Rational(1)};

}  // namespace

const Rational& bernoulli(long n) {
  if (n < 0) throw std::invalid_argument("negative Bernoulli index");
  std::lock_guard<std::mutex> lock(bernoulli_mutex);
  if (static_cast<size_t>(n) >= bernoulli_cache.size()) {
    const size_t target = std::max<size_t>(static_cast<size_t>(n) + 1, 2 * bernoulli_cache.size());
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    for (size_t m = bernoulli_cache.size(); m < target; ++m) {
      Rational s = 0;
      if (m > 1 && m % 2 == 1) {
        bernoulli_cache.emplace_back(0);
        continue;
      }
      for (size_t k = 0; k < m; ++k) {
        if (k > 1 && k % 2 == 1) continue;
        s += Rational(binomial(static_cast<long>(m + 1), static_cast<long>(k))) * bernoulli_cache[k];
      }
      bernoulli_cache.push_back(-s / Rational(static_cast<long>(m + 1)));
    }
  }
  return bernoulli_cache[static_cast<size_t>(n)];
}

}  // namespace zw
