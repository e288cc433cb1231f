#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "voachar/rational.hpp"

namespace voachar {

/// A truncated formal Laurent series in q^(1/N) with exact rational
/// coefficients.
///
/// The series is known exactly below its precision `prec()`; coefficients at
/// exponents >= prec are unknown (not zero).  Below `lead()` every coefficient
/// is zero.  Values are canonical: the leading stored coefficient is nonzero
/// (the zero series has lead == prec) and `denom()` is the smallest N with
/// lead, prec and every nonzero exponent in (1/N)Z.
class QSeries {
 public:
  struct Term {
    Rational exponent;
    Rational coeff;
  };

  /// Zero series trusted below q^0.
  QSeries();

  static QSeries zero(const Rational& prec);
  static QSeries constant(const Rational& value, const Rational& prec);
  static QSeries monomial(const Rational& coeff, const Rational& exponent, const Rational& prec);

  /// coeffs[k] is the coefficient of q^(lead + k/denom); prec = lead + coeffs.size()/denom.
  static QSeries from_dense(const Rational& lead, std::int64_t denom, std::vector<Rational> coeffs);

  /// coeffs[n] is the coefficient of q^(lead + n); prec = lead + coeffs.size().
  static QSeries from_integers(const std::vector<Integer>& coeffs, const Rational& lead = 0);

  /// Sparse construction.  Terms at exponents >= prec are rejected.
  static QSeries from_terms(const std::map<Rational, Rational>& terms, const Rational& prec);

  std::int64_t denom() const;
  const Rational& lead() const { return lead_; }
  const Rational& prec() const { return prec_; }
  /// prec - lead: how far past its leading term the series is trusted.
  Rational relative_precision() const { return prec_ - lead_; }

  bool is_zero() const { return coeffs_.empty(); }
  const Rational& leading_coefficient() const;

  /// Coefficients on the 1/denom() grid from lead up to prec.
  std::vector<Rational> dense_coeffs() const;

  /// Nonzero terms in increasing exponent order.
  std::vector<Term> terms() const;

  /// Coefficient of q^e; zero inside the trusted range when unstored.
  /// Throws PrecisionError when e >= prec.
  Rational coefficient(const Rational& e) const;

  /// Coefficients of q^(lead + n) for n = 0 .. count-1.
  std::vector<Rational> integer_steps(std::size_t count) const;

  QSeries truncated(const Rational& new_prec) const;

  /// Same representation (lead, grid, coefficients and precision).
  bool identical(const QSeries& other) const;

  std::string to_string(std::size_t max_terms = 12) const;

 private:
  Rational lead_;
  Rational step_;  // coeffs_[k] sits at lead_ + k * step_
  Rational prec_;
  std::vector<Rational> coeffs_;

  void normalize();

  friend QSeries add(const QSeries& f, const QSeries& g);
  friend QSeries mul(const QSeries& f, const QSeries& g);
  friend QSeries invert(const QSeries& f);
  friend QSeries power(const QSeries& f, const Rational& alpha);
  friend QSeries shift(const QSeries& f, const Rational& a);
  friend QSeries scale(const QSeries& f, const Rational& s);
};

QSeries add(const QSeries& f, const QSeries& g);
QSeries mul(const QSeries& f, const QSeries& g);
/// Throws InvalidArgument("not invertible") for the zero series.
QSeries invert(const QSeries& f);
/// Integer powers by repeated squaring; negative n goes through invert.
QSeries pow(const QSeries& f, std::int64_t n);
/// Rational power of a series whose leading coefficient is 1, via the
/// logarithmic-derivative recurrence.  Integer alpha defers to pow.
QSeries power(const QSeries& f, const Rational& alpha);
QSeries shift(const QSeries& f, const Rational& a);
QSeries scale(const QSeries& f, const Rational& s);
Rational coefficient(const QSeries& f, const Rational& e);

inline QSeries operator+(const QSeries& f, const QSeries& g) { return add(f, g); }
inline QSeries operator-(const QSeries& f) { return scale(f, Rational(-1)); }
inline QSeries operator-(const QSeries& f, const QSeries& g) { return add(f, scale(g, Rational(-1))); }
inline QSeries operator*(const QSeries& f, const QSeries& g) { return mul(f, g); }
inline QSeries operator*(const Rational& s, const QSeries& f) { return scale(f, s); }

/// Agreement on the intersection of the trusted ranges.
bool operator==(const QSeries& f, const QSeries& g);
inline bool operator!=(const QSeries& f, const QSeries& g) { return !(f == g); }

}  // namespace voachar
