#include "voachar/modforms.hpp"

#include <mutex>
#include <vector>

#include "voachar/error.hpp"

namespace voachar {

namespace {

void require_prec(std::int64_t prec, std::int64_t min) {
  if (prec < min) throw InvalidArgument("precision must be at least " + std::to_string(min));
}

Integer binomial(std::int64_t n, std::int64_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer factorial(std::int64_t n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace

EisensteinIndex::EisensteinIndex(std::int64_t k_) : k(k_) {
  if (k < 1) throw InvalidArgument("Eisenstein index must be >= 1");
}

Rational bernoulli(std::int64_t n) {
  if (n < 0) throw InvalidArgument("Bernoulli index must be nonnegative");
  static std::mutex lock;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> guard(lock);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  while (static_cast<std::int64_t>(cache.size()) <= n) {
    const auto m = static_cast<std::int64_t>(cache.size());
    Rational s = 0;
    for (std::int64_t j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * cache[static_cast<std::size_t>(j)];
    cache.push_back(-s / Rational(m + 1));
  }
  return cache[static_cast<std::size_t>(n)];
}

QSeries euler_phi(std::int64_t prec) {
  require_prec(prec, 1);
  std::vector<Integer> c(static_cast<std::size_t>(prec));
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t e1 = k * (3 * k - 1) / 2;
    const std::int64_t e2 = k * (3 * k + 1) / 2;
    if (e1 >= prec) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(e1)] += sign;
    if (k > 0 && e2 < prec) c[static_cast<std::size_t>(e2)] += sign;
  }
  return QSeries::from_integers(c);
}

QSeries partition_series(std::int64_t prec) {
  require_prec(prec, 1);
  std::vector<Integer> p(static_cast<std::size_t>(prec));
  p[0] = 1;
  for (std::int64_t n = 1; n < prec; ++n) {
    Integer s = 0;
    for (std::int64_t k = 1;; ++k) {
      const std::int64_t g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const std::int64_t g2 = k * (3 * k + 1) / 2;
      const bool plus = (k % 2) == 1;
      const Integer& a = p[static_cast<std::size_t>(n - g1)];
      if (plus) s += a; else s -= a;
      if (g2 <= n) {
        const Integer& b = p[static_cast<std::size_t>(n - g2)];
        if (plus) s += b; else s -= b;
      }
    }
    p[static_cast<std::size_t>(n)] = s;
  }
  return QSeries::from_integers(p);
}

QSeries eta(std::int64_t prec) { return shift(euler_phi(prec), make_rational(1, 24)); }

QSeries sigma_series(std::int64_t s, std::int64_t prec) {
  if (s < 0) throw InvalidArgument("divisor power must be nonnegative");
  require_prec(prec, 1);
  std::vector<Integer> c(static_cast<std::size_t>(prec));
  Integer dp;
  for (std::int64_t d = 1; d < prec; ++d) {
    mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(s));
    for (std::int64_t n = d; n < prec; n += d) c[static_cast<std::size_t>(n)] += dp;
  }
  return QSeries::from_integers(c);
}

QSeries eisenstein(EisensteinIndex idx, std::int64_t prec) {
  const std::int64_t k = idx.k;
  const Rational constant = -bernoulli(2 * k) / Rational(factorial(2 * k));
  const Rational factor = Rational(2) / Rational(factorial(2 * k - 1));
  return QSeries::constant(constant, Rational(prec)) + scale(sigma_series(2 * k - 1, prec), factor);
}

QSeries eisenstein_classical(EisensteinIndex idx, std::int64_t prec) {
  const std::int64_t k = idx.k;
  const Rational factor = -Rational(4 * k) / bernoulli(2 * k);
  return QSeries::constant(Rational(1), Rational(prec)) + scale(sigma_series(2 * k - 1, prec), factor);
}

QSeries delta(std::int64_t prec) {
  require_prec(prec, 2);
  // phi^24 needed below q^(prec-1)
  const std::int64_t rel = prec - 1;
  std::vector<Integer> cube(static_cast<std::size_t>(rel));
  for (std::int64_t m = 0;; ++m) {
    const std::int64_t e = m * (m + 1) / 2;
    if (e >= rel) break;
    cube[static_cast<std::size_t>(e)] = (m % 2 == 0 ? 1 : -1) * (2 * m + 1);
  }
  QSeries phi3 = QSeries::from_integers(cube);
  QSeries phi6 = phi3 * phi3;
  QSeries phi12 = phi6 * phi6;
  return shift(phi12 * phi12, Rational(1));
}

QSeries moonshine_J(std::int64_t prec) {
  require_prec(prec, 2);
  // 1/Delta has lead -1, so both factors are needed one step further.
  const QSeries e4 = eisenstein_classical(EisensteinIndex(2), prec + 1);
  const QSeries j = mul(mul(e4, mul(e4, e4)), invert(delta(prec + 2)));
  return j - QSeries::constant(Rational(744), Rational(prec));
}

}  // namespace voachar
