#pragma once

#include <cstdint>

#include "voachar/qseries.hpp"

namespace voachar {

/// Index k of the weight-2k Eisenstein series E_{2k}; k >= 1.
struct EisensteinIndex {
  explicit EisensteinIndex(std::int64_t k);
  std::int64_t k;
};

/// Exact Bernoulli number B_n (B_1 = -1/2), memoized and thread-safe.
Rational bernoulli(std::int64_t n);

/// prod_{n >= 1} (1 - q^n) below q^prec, from the pentagonal-number theorem.
QSeries euler_phi(std::int64_t prec);

/// sum p(n) q^n below q^prec, via the pentagonal recurrence.
QSeries partition_series(std::int64_t prec);

/// q^(1/24) phi(q); trusted below q^(prec + 1/24).
QSeries eta(std::int64_t prec);

/// sum_{n >= 1} sigma_s(n) q^n below q^prec.
QSeries sigma_series(std::int64_t s, std::int64_t prec);

/// E_{2k} = -B_{2k}/(2k)! + 2/(2k-1)! sum sigma_{2k-1}(n) q^n.
QSeries eisenstein(EisensteinIndex k, std::int64_t prec);

/// Constant-term-one normalization 1 - (4k/B_{2k}) sum sigma_{2k-1}(n) q^n.
QSeries eisenstein_classical(EisensteinIndex k, std::int64_t prec);

/// q prod (1 - q^n)^24 below q^prec, built from Jacobi's cube identity
/// phi^3 = sum (-1)^m (2m+1) q^(m(m+1)/2).
QSeries delta(std::int64_t prec);

/// (720 E_4)^3 / Delta - 744 below q^prec.
QSeries moonshine_J(std::int64_t prec);

}  // namespace voachar
