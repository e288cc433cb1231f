#include "voachar/zhu.hpp"

#include "voachar/error.hpp"
#include "voachar/modforms.hpp"

namespace voachar {

namespace {

Rational R(std::int64_t v) { return Rational(static_cast<long>(v)); }

// ln(1+z)/z trusted below z^n.
QSeries log1p_over_z(std::int64_t n) {
  std::map<Rational, Rational> t;
  for (std::int64_t k = 0; k < n; ++k) t[R(k)] = Rational((k % 2 == 0) ? 1 : -1, k + 1);
  return QSeries::from_terms(t, R(n));
}

// (1+z)^a trusted below z^n, generalized binomial coefficients.
QSeries binomial_series(std::int64_t a, std::int64_t n) {
  std::map<Rational, Rational> t;
  Rational c = 1;
  for (std::int64_t k = 0; k < n; ++k) {
    t[R(k)] = c;
    c = c * R(a - k) / R(k + 1);
  }
  return QSeries::from_terms(t, R(n));
}

// A state of the vacuum module spanned by u(-1)v(-1)1 and 1.
struct WeightOneProduct {
  Rational normal_ordered;  // coefficient of u(-1)v(-1)1
  Rational vacuum;          // coefficient of <u,v> 1
};

// u[m] v(-1)1 = sum_{i >= m} c(1, i, m) u(i) v(-1)1, where u(-1)v(-1)1 is kept,
// u(0) and u(i), i >= 2, kill v(-1)1, and u(1) v(-1)1 = <u,v> 1.
WeightOneProduct square_bracket_action(std::int64_t m) {
  if (m < -1) throw InvalidArgument("only u[m] with m >= -1 is needed");
  WeightOneProduct out;
  if (m == -1) out.normal_ordered = bracket_coeff(1, -1, m);
  if (m <= 1) out.vacuum = bracket_coeff(1, 1, m);
  return out;
}

}  // namespace

Rational bracket_coeff(std::int64_t wt, std::int64_t i, std::int64_t m) {
  if (i < m) return 0;
  const std::int64_t n = i - m + 1;  // relative terms needed past z^m
  const QSeries u = log1p_over_z(n);
  const QSeries logm = m >= 0 ? pow(u, m) : pow(invert(u), -m);
  const QSeries full = shift(logm * binomial_series(wt - 1, n), R(m));
  return full.coefficient(R(i));
}

HeisenbergPair::HeisenbergPair(EvenLattice l, RationalVector u_, RationalVector v_)
    : lattice(std::move(l)), u(std::move(u_)), v(std::move(v_)) {
  pairing = lattice.pairing(u, v);
}

QSeries fock_quadratic_trace(const Rational& pairing, std::int64_t prec) {
  return scale(sigma_series(1, prec), pairing);
}

namespace {

QSeries fock_character(const EvenLattice& l, std::int64_t prec) {
  const auto rank = static_cast<std::int64_t>(l.rank());
  return shift(pow(partition_series(prec), rank), -make_rational(rank, 24));
}

}  // namespace

QSeries lhs_trace(const HeisenbergPair& pair, const CosetRep& coset, std::int64_t prec) {
  return weighted_theta(pair.lattice, coset, pair.u, pair.v, prec) * fock_character(pair.lattice, prec);
}

QSeries rhs_trace(const HeisenbergPair& pair, const CosetRep& coset, std::int64_t prec, E2Mode mode) {
  const EvenLattice& l = pair.lattice;
  const QSeries fock = fock_character(l, prec);
  const QSeries th = coset_theta(l, coset, prec);
  const QSeries z_one = th * fock;
  // Z(u(-1)v(-1)1): zero mode u(0)v(0) plus both orders of the oscillator sum.
  const QSeries z_normal =
      (weighted_theta(l, coset, pair.u, pair.v, prec) + scale(fock_quadratic_trace(pair.pairing, prec) * th, 2)) *
      fock;

  auto z_of = [&](const WeightOneProduct& s) {
    return scale(z_normal, s.normal_ordered) + scale(z_one, s.vacuum * pair.pairing);
  };
  QSeries out = z_of(square_bracket_action(-1));
  const QSeries e2 = mode == E2Mode::exact ? eisenstein(EisensteinIndex(1), prec)
                                           : QSeries::constant(Rational(-1, 12), Rational(static_cast<long>(prec)));
  out = out - e2 * z_of(square_bracket_action(1));
  // u[2k-1]v has negative L[0]-weight for k >= 2.
  for (std::int64_t k = 2; k <= 4; ++k) {
    const WeightOneProduct s = square_bracket_action(2 * k - 1);
    if (s.normal_ordered != 0 || s.vacuum != 0) throw ComputationError("internal: u[2k-1]v nonzero");
  }
  return out;
}

bool verify_zhu_module(const HeisenbergPair& pair, const CosetRep& coset, std::int64_t prec, E2Mode mode) {
  const QSeries lhs = lhs_trace(pair, coset, prec);
  const QSeries rhs = rhs_trace(pair, coset, prec, mode);
  return lhs == rhs;
}

bool verify_zhu_identity(const HeisenbergPair& pair, std::int64_t prec) {
  for (const auto& coset : discriminant_cosets(pair.lattice))
    if (!verify_zhu_module(pair, coset, prec)) return false;
  return true;
}

}  // namespace voachar
