#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "voachar/qseries.hpp"

namespace voachar {

/// Virasoro minimal model data for coprime 2 <= p < q.
struct MinimalModel {
  std::int64_t p = 0;
  std::int64_t q = 0;
  Rational c;
  std::vector<Rational> weights;  // distinct values of the Kac grid, ascending
};

/// Throws InvalidArgument("not coprime") or InvalidArgument("range violation").
MinimalModel minimal_model(std::int64_t p, std::int64_t q);

Rational central_charge(std::int64_t p, std::int64_t q);

/// lambda_{m,n} = ((np - mq)^2 - (p - q)^2) / 4pq.
Rational kac_weight(std::int64_t p, std::int64_t q, std::int64_t m, std::int64_t n);

/// In-range (m, n) with np - mq = -1, giving the minimal weight.
std::pair<std::int64_t, std::int64_t> lambda_min_certificate(std::int64_t p, std::int64_t q);

/// Graded dimensions sum dim L(c, h)_{h+n} q^n of the irreducible module
/// labelled (m, n), 1 <= m < p, 1 <= n < q; trusted below q^prec.
QSeries irreducible_character(std::int64_t p, std::int64_t q, std::int64_t m, std::int64_t n, std::int64_t prec);

/// (1 - q) / phi(q), the vacuum character at generic c.
QSeries generic_verma_character(std::int64_t prec);

constexpr std::int64_t kMaxShapovalovLevel = 8;

/// Rank of the Shapovalov form at the given level of Ver(c, h), taken modulo
/// L(-1)v when h = 0.  Throws InvalidArgument("level too large") past
/// kMaxShapovalovLevel.
std::int64_t shapovalov_rank(const Rational& c, const Rational& h, std::int64_t level);

}  // namespace voachar
