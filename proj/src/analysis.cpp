#include "voachar/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "voachar/error.hpp"
#include "voachar/modforms.hpp"

namespace voachar {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct LineFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  // A constant response is fitted exactly by a flat line.
  f.r_squared = syy <= 1e-300 * std::max(1.0, my * my) ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return f;
}

cd pow_tau(const TauPoint& tau, const Rational& k) {
  if (k == 0) return 1.0;
  return std::pow(tau.value(), cd(to_double(k), 0.0));
}

}  // namespace

TauPoint::TauPoint(double re_, double im_) : re(re_), im(im_) {
  if (!(im > 0) || !std::isfinite(re) || !std::isfinite(im))
    throw InvalidArgument("tau must lie in the upper half-plane");
}

TauPoint TauPoint::s_image() const {
  const cd t = -1.0 / value();
  return {t.real(), t.imag()};
}

EvalResult eval(const QSeries& f, const TauPoint& tau, double tol) {
  const auto terms = f.terms();
  std::complex<long double> sum = 0;
  std::vector<double> loga(terms.size()), expo(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double e = to_double(terms[k].exponent);
    loga[k] = log_abs(terms[k].coeff);
    expo[k] = e;
    const double mag = std::exp(loga[k] - kTwoPi * e * tau.im);
    const double phase = kTwoPi * e * tau.re;
    const double sign = sgn(terms[k].coeff) < 0 ? -1.0 : 1.0;
    sum += std::complex<long double>(sign * mag * std::cos(phase), sign * mag * std::sin(phase));
  }

  // Tail: |a(e)| <= A exp(g (e - e_A)) past prec, with g the largest growth
  // rate of log|a| per unit exponent over the final quarter of the terms.
  double growth = 0.0;
  double anchor_log = terms.empty() ? 0.0 : loga.back();
  double anchor_exp = terms.empty() ? to_double(f.prec()) : expo.back();
  const std::size_t window = std::max<std::size_t>(4, terms.size() / 4);
  const std::size_t start = terms.size() > window ? terms.size() - window : 0;
  for (std::size_t k = start; k + 1 < terms.size(); ++k)
    growth = std::max(growth, (loga[k + 1] - loga[k]) / (expo[k + 1] - expo[k]));
  for (std::size_t k = start; k < terms.size(); ++k) {
    if (loga[k] - growth * expo[k] > anchor_log - growth * anchor_exp) {
      anchor_log = loga[k];
      anchor_exp = expo[k];
    }
  }
  if (terms.empty()) anchor_log = 0.0;
  const double p = to_double(f.prec());
  const double step = 1.0 / static_cast<double>(f.denom());
  const double log_rho = growth - kTwoPi * tau.im;
  EvalResult out;
  out.value = cd(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  if (log_rho >= 0) {
    out.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    const double first = anchor_log + growth * (p - anchor_exp) - kTwoPi * tau.im * p;
    out.tail_bound = std::exp(first) / (1.0 - std::exp(log_rho * step));
  }
  if (!(out.tail_bound <= tol))
    throw PrecisionError("tail bound exceeds tolerance (" + std::to_string(out.tail_bound) + " > " +
                         std::to_string(tol) + ")");
  return out;
}

double check_eta_transform(const TauPoint& tau, std::int64_t prec) {
  const QSeries e = eta(prec);
  const cd lhs = eval(e, tau.s_image()).value;
  const cd rhs = std::sqrt(cd(0, -1) * tau.value()) * eval(e, tau).value;
  return std::abs(lhs - rhs);
}

double check_e2_quasimodular(const TauPoint& tau, std::int64_t prec) {
  const QSeries e2 = eisenstein(EisensteinIndex(1), prec);
  const cd t = tau.value();
  const cd lhs = eval(e2, tau.s_image()).value;
  const cd rhs = t * t * eval(e2, tau).value - t / cd(0, kTwoPi);
  return std::abs(lhs - rhs);
}

double modular_defect(const QSeries& f, std::int64_t k, const TauPoint& tau) {
  const cd lhs = eval(f, tau.s_image()).value;
  const cd rhs = std::pow(tau.value(), static_cast<int>(k)) * eval(f, tau).value;
  return std::abs(lhs - rhs);
}

double check_eisenstein_modular(std::int64_t k, const TauPoint& tau, std::int64_t prec) {
  return modular_defect(eisenstein(EisensteinIndex(k), prec), 2 * k, tau);
}

std::vector<TauPoint> default_samples(std::size_t first, std::size_t count) {
  std::vector<TauPoint> out;
  for (std::size_t s = first; s < first + count; ++s) {
    const auto d = static_cast<double>(s);
    out.emplace_back(0.07 * d, 0.8 + 0.13 * d);
  }
  return out;
}

SMatrixEstimate extract_smatrix(const std::vector<QSeries>& chars, const Rational& k, std::vector<TauPoint> samples,
                                std::vector<TauPoint> validation, double max_condition) {
  const std::size_t r = chars.size();
  if (r == 0) throw InvalidArgument("no characters given");
  if (samples.empty()) samples = default_samples(1, r + 4);
  if (validation.empty()) validation = default_samples(r + 5, 3);
  if (samples.size() < r + 2) throw InvalidArgument("need at least r + 2 sample points");

  // Row s: tau_s^k Z_j(tau_s); right-hand side column i: Z_i(-1/tau_s).
  auto design = [&](const std::vector<TauPoint>& pts, Eigen::MatrixXcd& a, Eigen::MatrixXcd& b) {
    a.resize(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(r));
    b.resize(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(r));
    for (std::size_t s = 0; s < pts.size(); ++s) {
      const cd w = pow_tau(pts[s], k);
      const TauPoint image = pts[s].s_image();
      for (std::size_t j = 0; j < r; ++j) {
        a(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) = w * eval(chars[j], pts[s]).value;
        b(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) = eval(chars[j], image).value;
      }
    }
  };
  Eigen::MatrixXcd a, b;
  design(samples, a, b);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) throw ComputationError("ill-conditioned sample set");

  // A X = B column by column with X_{j,i} = rho_{i,j}; normal equations.
  const Eigen::MatrixXcd normal = a.adjoint() * a;
  const Eigen::MatrixXcd x = normal.fullPivLu().solve(a.adjoint() * b);

  SMatrixEstimate est;
  est.weight = k;
  est.condition_number = cond;
  est.entries.assign(r, std::vector<cd>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      est.entries[i][j] = x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));

  Eigen::MatrixXcd va, vb;
  design(validation, va, vb);
  const Eigen::MatrixXcd err = va * x - vb;
  est.residual = err.cwiseAbs().maxCoeff();
  return est;
}

std::string to_string(GrowthModel m) {
  switch (m) {
    case GrowthModel::polynomial: return "polynomial";
    case GrowthModel::exponential_sqrt: return "exponential_sqrt";
    case GrowthModel::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

GrowthReport classify_growth(const std::vector<Rational>& coeffs, double margin) {
  const std::size_t nonzero = static_cast<std::size_t>(
      std::count_if(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c != 0; }));
  if (coeffs.size() < 40 || nonzero < 20) throw InvalidArgument("insufficient data");

  const auto n_max = static_cast<double>(coeffs.size() - 1);
  const double n_min = std::sqrt(n_max);
  std::vector<double> log_n, sqrt_n, log_env;
  double env = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (coeffs[n] == 0) continue;
    env = std::max(env, log_abs(coeffs[n]));
    const auto dn = static_cast<double>(n);
    if (dn < n_min || n == 0) continue;
    log_n.push_back(std::log(dn));
    sqrt_n.push_back(std::sqrt(dn));
    log_env.push_back(env);
  }
  if (log_env.size() < 20) throw InvalidArgument("insufficient data");

  const LineFit poly = fit_line(log_n, log_env);
  const LineFit expo = fit_line(sqrt_n, log_env);
  GrowthReport rep;
  rep.points_used = log_env.size();
  rep.r_squared_polynomial = poly.r_squared;
  rep.r_squared_exponential = expo.r_squared;
  const bool flat = std::abs(poly.slope) < 1e-12 && std::abs(expo.slope) < 1e-12;
  if (flat || poly.r_squared >= expo.r_squared + margin) {
    rep.model = GrowthModel::polynomial;
  } else if (expo.r_squared >= poly.r_squared + margin) {
    rep.model = GrowthModel::exponential_sqrt;
  } else {
    rep.model = GrowthModel::inconclusive;
  }
  const bool use_poly = rep.model == GrowthModel::polynomial ||
                        (rep.model == GrowthModel::inconclusive && poly.r_squared >= expo.r_squared);
  rep.exponent_or_constant = use_poly ? poly.slope : expo.slope;
  rep.r_squared = use_poly ? poly.r_squared : expo.r_squared;
  return rep;
}

std::vector<Rational> twisted_coefficients(const Theory& t, std::size_t j, const Rational& x, std::size_t terms) {
  const QSeries z = full_character(t, j);
  const auto rel = to_int64(ceil(z.relative_precision()));
  const QSeries tw = eta_power(x, rel) * z;
  if (tw.relative_precision() < Rational(static_cast<long>(terms)))
    throw PrecisionError("theory built below the requested number of terms");
  std::vector<Rational> out;
  out.reserve(terms);
  const Rational lead = t.modules[j].weight - t.c / 24 + x / 24;
  for (std::size_t n = 0; n < terms; ++n) out.push_back(tw.coefficient(lead + Rational(static_cast<long>(n))));
  return out;
}

}  // namespace voachar
