// Independent reference computations used to check the library.  Nothing here
// calls into the library's series arithmetic.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Int = mpz_class;
using Rat = mpq_class;

// Number of partitions of n with parts <= max_part, by direct recursion.
inline std::int64_t count_partitions(int n, int max_part) {
  if (n == 0) return 1;
  std::int64_t s = 0;
  for (int k = std::min(n, max_part); k >= 1; --k) s += count_partitions(n - k, k);
  return s;
}

inline std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t n) {
  std::vector<Int> c(n);
  for (std::size_t i = 0; i < a.size() && i < n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// prod_{k=1}^{n-1} (1 - q^k) expanded factor by factor.
inline std::vector<Int> euler_product(std::size_t n) {
  std::vector<Int> c(n);
  c[0] = 1;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) c[i] -= c[i - k];
  return c;
}

inline Int sigma(std::int64_t s, std::int64_t n) {
  Int total = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(s));
    total += p;
  }
  return total;
}

// Quotient a / b of power series with b[0] = 1, first n coefficients.
inline std::vector<Int> series_divide(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t n) {
  std::vector<Int> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int s = i < a.size() ? a[i] : Int(0);
    for (std::size_t j = 1; j <= i && j < b.size(); ++j) s -= b[j] * q[i - j];
    q[i] = s;
  }
  return q;
}

// Coefficients of J = E4^3 / Delta - 744 from q^-1 up to q^(n-2), using
// E4 = 1 + 240 sum sigma_3(n) q^n and Delta / q = prod (1 - q^k)^24.
inline std::vector<Int> j_function(std::size_t n) {
  std::vector<Int> e4(n);
  e4[0] = 1;
  for (std::size_t k = 1; k < n; ++k) e4[k] = 240 * sigma(3, static_cast<std::int64_t>(k));
  const auto e4_3 = poly_mul(poly_mul(e4, e4, n), e4, n);
  std::vector<Int> d(n);
  d[0] = 1;
  const auto phi = euler_product(n);
  for (int r = 0; r < 24; ++r) d = poly_mul(d, phi, n);
  auto j = series_divide(e4_3, d, n);
  j[1] -= 744;
  return j;  // j[k] is the coefficient of q^(k-1)
}

// Exhaustive count of x in [-r, r]^n with x^T G x = 2k for each k < prec.
inline std::vector<std::int64_t> gram_box_theta(const std::vector<std::vector<std::int64_t>>& g, int r,
                                                std::int64_t prec) {
  const std::size_t n = g.size();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(prec), 0);
  std::vector<std::int64_t> x(n, -r);
  for (;;) {
    std::int64_t norm = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) norm += x[i] * g[i][j] * x[j];
    if (norm % 2 == 0 && norm / 2 < prec) ++counts[static_cast<std::size_t>(norm / 2)];
    std::size_t i = 0;
    while (i < n && x[i] == r) x[i++] = -r;
    if (i == n) break;
    ++x[i];
  }
  return counts;
}

// Theta of E8 in the even coordinate model: y = 2x in Z^8, all y_i of one
// parity, sum y = 0 mod 4, norm (x, x) = |y|^2 / 4.  Box |y_i| <= r.
inline std::vector<std::int64_t> e8_coordinate_theta(int r, std::int64_t prec) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(prec), 0);
  const std::int64_t max_sq = 8 * prec;  // |y|^2 < 4 * 2 * prec
  std::vector<int> y(8);
  std::function<void(int, std::int64_t, int, int)> rec = [&](int i, std::int64_t sq, int sum, int parity) {
    if (sq >= max_sq) return;
    if (i == 8) {
      if (((sum % 4) + 4) % 4 == 0 && sq % 8 == 0) ++counts[static_cast<std::size_t>(sq / 8)];
      return;
    }
    for (int v = -r; v <= r; ++v) {
      if (((v % 2) + 2) % 2 != parity) continue;
      rec(i + 1, sq + v * v, sum + v, parity);
    }
  };
  rec(0, 0, 0, 0);
  rec(0, 0, 0, 1);
  return counts;
}

// Dense random rational series data with a fixed generator.
struct RandomSeries {
  explicit RandomSeries(unsigned seed) : rng(seed) {}
  std::mt19937 rng;
  Rat rational(int span = 9, int den_span = 4) {
    std::uniform_int_distribution<int> num(-span, span), den(1, den_span);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
};

}  // namespace oracle
