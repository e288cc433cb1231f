#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "voachar/catalog.hpp"
#include "voachar/qseries.hpp"

namespace voachar {

/// tau in the upper half-plane; q = exp(2 pi i tau).
struct TauPoint {
  TauPoint(double re, double im);
  double re;
  double im;

  std::complex<double> value() const { return {re, im}; }
  /// -1/tau.
  TauPoint s_image() const;
};

struct EvalResult {
  std::complex<double> value;
  double tail_bound = 0.0;
};

/// Sums the stored terms at tau.  The tail past prec is bounded by a geometric
/// series using the largest coefficient growth rate seen over the last terms;
/// throws PrecisionError("tail bound exceeds tolerance") when it is above tol.
/// Fractional powers of q use the principal branch q^e = exp(2 pi i e tau).
EvalResult eval(const QSeries& f, const TauPoint& tau, double tol = 1e-12);

/// |eta(-1/tau) - sqrt(-i tau) eta(tau)|.
double check_eta_transform(const TauPoint& tau, std::int64_t prec);

/// |E2(-1/tau) - tau^2 E2(tau) + tau/(2 pi i)|.
double check_e2_quasimodular(const TauPoint& tau, std::int64_t prec);

/// |f(-1/tau) - tau^k f(tau)|.
double modular_defect(const QSeries& f, std::int64_t k, const TauPoint& tau);

/// |E_{2k}(-1/tau) - tau^{2k} E_{2k}(tau)|.
double check_eisenstein_modular(std::int64_t k, const TauPoint& tau, std::int64_t prec);

struct SMatrixEstimate {
  std::vector<std::vector<std::complex<double>>> entries;
  double residual = 0.0;          // max error over the validation points
  double condition_number = 0.0;  // of the sample design matrix
  Rational weight;
};

/// tau_s = 0.07 s + (0.8 + 0.13 s) i for s = first .. first+count-1.
std::vector<TauPoint> default_samples(std::size_t first, std::size_t count);

/// Least-squares fit of Z_i(-1/tau) = tau^k sum_j rho_ij Z_j(tau).  With empty
/// sample lists the defaults are used: r + 4 fit points then 3 validation
/// points.  Throws ComputationError("ill-conditioned sample set").
SMatrixEstimate extract_smatrix(const std::vector<QSeries>& chars, const Rational& k,
                                std::vector<TauPoint> samples = {}, std::vector<TauPoint> validation = {},
                                double max_condition = 1e10);

enum class GrowthModel { polynomial, exponential_sqrt, inconclusive };

std::string to_string(GrowthModel m);

struct GrowthReport {
  GrowthModel model = GrowthModel::inconclusive;
  /// Fitted alpha for a_n ~ n^alpha, or C for log a_n ~ C sqrt(n); for an
  /// inconclusive fit, the value of the better-scoring model.
  double exponent_or_constant = 0.0;
  double r_squared = 0.0;
  double r_squared_polynomial = 0.0;
  double r_squared_exponential = 0.0;
  std::size_t points_used = 0;
};

/// Fits log M_n against log n and against sqrt n, where M_n = max_{k <= n} |a_k|
/// is the running maximum, over the nonzero n in [sqrt(N), N].  The better fit
/// wins when its r^2 leads by at least margin.  Throws
/// InvalidArgument("insufficient data") for fewer than 40 terms, 20 nonzero,
/// or 20 points in the window.
GrowthReport classify_growth(const std::vector<Rational>& coeffs, double margin = 0.02);

/// Coefficients of q^(lead + n), n < terms, of eta^x Z_j for module j of t.
std::vector<Rational> twisted_coefficients(const Theory& t, std::size_t j, const Rational& x, std::size_t terms);

}  // namespace voachar
