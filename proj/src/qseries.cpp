#include "voachar/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "voachar/error.hpp"

namespace voachar {

namespace {

std::int64_t exact_index(const Rational& r) {
  if (!is_integer(r)) throw ComputationError("internal: grid index " + to_string(r) + " is not integral");
  return to_int64(r.get_num());
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Nonzero coefficients scaled to a common denominator, indexed on a finer grid.
struct ScaledTerms {
  std::vector<std::int64_t> index;
  std::vector<Integer> numer;
  Integer denom = 1;
};

ScaledTerms scaled_terms(const std::vector<Rational>& coeffs, std::int64_t spread) {
  ScaledTerms out;
  for (const auto& c : coeffs)
    if (c != 0) out.denom = lcm(out.denom, c.get_den());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    out.index.push_back(static_cast<std::int64_t>(k) * spread);
    out.numer.push_back(coeffs[k].get_num() * (out.denom / coeffs[k].get_den()));
  }
  return out;
}

bool all_integer(const std::vector<Rational>& coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return is_integer(c); });
}

}  // namespace

QSeries::QSeries() : lead_(0), step_(1), prec_(0) {}

QSeries QSeries::zero(const Rational& prec) {
  QSeries s;
  s.lead_ = prec;
  s.prec_ = prec;
  return s;
}

QSeries QSeries::constant(const Rational& value, const Rational& prec) {
  return monomial(value, Rational(0), prec);
}

QSeries QSeries::monomial(const Rational& coeff, const Rational& exponent, const Rational& prec) {
  if (exponent >= prec) return zero(prec);
  return from_terms({{exponent, coeff}}, prec);
}

QSeries QSeries::from_dense(const Rational& lead, std::int64_t denom, std::vector<Rational> coeffs) {
  if (denom <= 0) throw InvalidArgument("series denominator must be positive");
  QSeries s;
  s.lead_ = lead;
  s.step_ = make_rational(1, denom);
  s.prec_ = lead + Rational(static_cast<long>(coeffs.size()), 1) * s.step_;
  s.coeffs_ = std::move(coeffs);
  s.normalize();
  return s;
}

QSeries QSeries::from_integers(const std::vector<Integer>& coeffs, const Rational& lead) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return from_dense(lead, 1, std::move(c));
}

QSeries QSeries::from_terms(const std::map<Rational, Rational>& terms, const Rational& prec) {
  std::vector<std::pair<Rational, Rational>> nz;
  for (const auto& [e, c] : terms) {
    if (e >= prec) throw InvalidArgument("term q^" + voachar::to_string(e) + " lies beyond the precision");
    if (c != 0) nz.emplace_back(e, c);
  }
  if (nz.empty()) return zero(prec);
  QSeries s;
  s.lead_ = nz.front().first;
  s.prec_ = prec;
  Rational h = prec - s.lead_;
  for (const auto& t : nz) h = rational_gcd(h, t.first - s.lead_);
  s.step_ = h;
  s.coeffs_.assign(static_cast<std::size_t>(exact_index((prec - s.lead_) / h)), Rational(0));
  for (auto& t : nz) s.coeffs_[static_cast<std::size_t>(exact_index((t.first - s.lead_) / h))] = std::move(t.second);
  s.normalize();
  return s;
}

void QSeries::normalize() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    lead_ = prec_;
    step_ = 1;
    return;
  }
  const auto k0 = static_cast<long>(first - coeffs_.begin());
  if (k0 > 0) {
    lead_ += Rational(k0) * step_;
    coeffs_.erase(coeffs_.begin(), first);
  }
  std::size_t g = coeffs_.size();
  for (std::size_t k = 1; k < coeffs_.size() && g > 1; ++k)
    if (coeffs_[k] != 0) g = std::gcd(g, k);
  if (g > 1) {
    std::vector<Rational> packed(coeffs_.size() / g);
    for (std::size_t k = 0; k < packed.size(); ++k) packed[k] = std::move(coeffs_[k * g]);
    coeffs_ = std::move(packed);
    step_ *= Rational(static_cast<long>(g));
  }
}

std::int64_t QSeries::denom() const {
  return lcm64(to_int64(lead_.get_den()), to_int64(step_.get_den()));
}

const Rational& QSeries::leading_coefficient() const {
  if (is_zero()) throw InvalidArgument("zero series has no leading coefficient");
  return coeffs_.front();
}

std::vector<Rational> QSeries::dense_coeffs() const {
  const std::int64_t n = denom();
  const std::int64_t spread = exact_index(step_ * Rational(static_cast<long>(n)));
  std::vector<Rational> out(static_cast<std::size_t>(exact_index((prec_ - lead_) * Rational(static_cast<long>(n)))));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k * static_cast<std::size_t>(spread)] = coeffs_[k];
  return out;
}

std::vector<QSeries::Term> QSeries::terms() const {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) out.push_back({lead_ + Rational(static_cast<long>(k)) * step_, coeffs_[k]});
  return out;
}

Rational QSeries::coefficient(const Rational& e) const {
  if (e >= prec_) throw PrecisionError("coefficient of q^" + voachar::to_string(e) + " is beyond precision " +
                                       voachar::to_string(prec_));
  if (e < lead_) return 0;
  const Rational d = (e - lead_) / step_;
  if (!is_integer(d)) return 0;
  return coeffs_[static_cast<std::size_t>(exact_index(d))];
}

std::vector<Rational> QSeries::integer_steps(std::size_t count) const {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back(coefficient(lead_ + Rational(static_cast<long>(n))));
  return out;
}

QSeries QSeries::truncated(const Rational& new_prec) const {
  if (new_prec >= prec_) return *this;
  std::map<Rational, Rational> kept;
  for (auto& t : terms())
    if (t.exponent < new_prec) kept.emplace(std::move(t.exponent), std::move(t.coeff));
  return from_terms(kept, new_prec);
}

bool QSeries::identical(const QSeries& other) const {
  return lead_ == other.lead_ && step_ == other.step_ && prec_ == other.prec_ && coeffs_ == other.coeffs_;
}

std::string QSeries::to_string(std::size_t max_terms) const {
  std::ostringstream out;
  std::size_t shown = 0;
  for (const auto& t : terms()) {
    if (shown == max_terms) {
      out << " + ...";
      break;
    }
    const bool negative = sgn(t.coeff) < 0;
    Rational mag = abs(t.coeff);
    if (shown == 0)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    const bool unit = mag == 1;
    if (t.exponent == 0) {
      out << voachar::to_string(mag);
    } else {
      if (!unit) out << voachar::to_string(mag) << "*";
      out << "q";
      if (t.exponent != 1) out << "^" << (is_integer(t.exponent) ? "" : "(") << voachar::to_string(t.exponent)
                               << (is_integer(t.exponent) ? "" : ")");
    }
    ++shown;
  }
  if (shown == 0) out << "0";
  out << " + O(q^" << (is_integer(prec_) ? "" : "(") << voachar::to_string(prec_) << (is_integer(prec_) ? "" : ")")
      << ")";
  return out.str();
}

QSeries add(const QSeries& f, const QSeries& g) {
  const Rational prec = f.prec_ < g.prec_ ? f.prec_ : g.prec_;
  std::map<Rational, Rational> sum;
  for (const QSeries* s : {&f, &g})
    for (auto& t : s->terms())
      if (t.exponent < prec) sum[t.exponent] += t.coeff;
  return QSeries::from_terms(sum, prec);
}

QSeries mul(const QSeries& f, const QSeries& g) {
  const Rational pa = f.prec_ + g.lead_;
  const Rational pb = g.prec_ + f.lead_;
  const Rational prec = pa < pb ? pa : pb;
  if (f.is_zero() || g.is_zero()) return QSeries::zero(prec);

  QSeries out;
  out.lead_ = f.lead_ + g.lead_;
  out.prec_ = prec;
  out.step_ = rational_gcd(f.step_, g.step_);
  const auto size = exact_index((prec - out.lead_) / out.step_);
  const ScaledTerms a = scaled_terms(f.coeffs_, exact_index(f.step_ / out.step_));
  const ScaledTerms b = scaled_terms(g.coeffs_, exact_index(g.step_ / out.step_));

  std::vector<Integer> acc(static_cast<std::size_t>(size));
  for (std::size_t i = 0; i < a.index.size() && a.index[i] < size; ++i) {
    for (std::size_t j = 0; j < b.index.size(); ++j) {
      const std::int64_t k = a.index[i] + b.index[j];
      if (k >= size) break;
      mpz_addmul(acc[static_cast<std::size_t>(k)].get_mpz_t(), a.numer[i].get_mpz_t(), b.numer[j].get_mpz_t());
    }
  }
  const Integer den = a.denom * b.denom;
  out.coeffs_.resize(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (acc[k] == 0) continue;
    out.coeffs_[k] = Rational(acc[k], den);
    out.coeffs_[k].canonicalize();
  }
  out.normalize();
  return out;
}

QSeries invert(const QSeries& f) {
  if (f.is_zero()) throw InvalidArgument("not invertible: series is zero to its precision");
  const std::size_t size = f.coeffs_.size();
  const Rational& c0 = f.coeffs_.front();
  std::vector<std::size_t> nz;
  for (std::size_t k = 1; k < size; ++k)
    if (f.coeffs_[k] != 0) nz.push_back(k);

  QSeries out;
  out.lead_ = -f.lead_;
  out.step_ = f.step_;
  out.prec_ = out.lead_ + (f.prec_ - f.lead_);
  out.coeffs_.resize(size);

  if (all_integer(f.coeffs_) && abs(c0) == 1) {
    const Integer unit = c0.get_num();
    std::vector<Integer> num(f.coeffs_.size());
    for (std::size_t k = 0; k < size; ++k) num[k] = f.coeffs_[k].get_num();
    std::vector<Integer> inv(size);
    inv[0] = unit;
    Integer s;
    for (std::size_t n = 1; n < size; ++n) {
      s = 0;
      for (std::size_t k : nz) {
        if (k > n) break;
        mpz_addmul(s.get_mpz_t(), num[k].get_mpz_t(), inv[n - k].get_mpz_t());
      }
      inv[n] = -s * unit;
    }
    for (std::size_t k = 0; k < size; ++k) out.coeffs_[k] = Rational(inv[k]);
  } else {
    const Rational inv0 = 1 / c0;
    out.coeffs_[0] = inv0;
    Rational s;
    for (std::size_t n = 1; n < size; ++n) {
      s = 0;
      for (std::size_t k : nz) {
        if (k > n) break;
        s += f.coeffs_[k] * out.coeffs_[n - k];
      }
      out.coeffs_[n] = -s * inv0;
    }
  }
  out.normalize();
  return out;
}

QSeries pow(const QSeries& f, std::int64_t n) {
  if (n < 0) return pow(invert(f), -n);
  if (n == 0) return QSeries::constant(Rational(1), f.relative_precision());
  QSeries base = f;
  QSeries result;
  bool have = false;
  while (true) {
    if (n & 1) {
      result = have ? mul(result, base) : base;
      have = true;
    }
    n >>= 1;
    if (n == 0) break;
    base = mul(base, base);
  }
  return result;
}

QSeries power(const QSeries& f, const Rational& alpha) {
  if (is_integer(alpha)) return pow(f, to_int64(alpha.get_num()));
  if (f.is_zero()) throw InvalidArgument("rational power of the zero series");
  if (f.coeffs_.front() != 1) throw InvalidArgument("rational power needs leading coefficient 1");

  QSeries out;
  out.lead_ = alpha * f.lead_;
  out.step_ = f.step_;
  out.prec_ = out.lead_ + (f.prec_ - f.lead_);
  const std::size_t size = f.coeffs_.size();
  out.coeffs_.resize(size);
  out.coeffs_[0] = 1;

  std::vector<std::size_t> nz;
  for (std::size_t k = 1; k < size; ++k)
    if (f.coeffs_[k] != 0) nz.push_back(k);

  // n g_n = sum_{k=1..n} ((alpha + 1) k - n) f_k g_{n-k}
  const Rational alpha1 = alpha + 1;
  Rational s, w;
  for (std::size_t n = 1; n < size; ++n) {
    s = 0;
    for (std::size_t k : nz) {
      if (k > n) break;
      w = alpha1 * Rational(static_cast<long>(k)) - Rational(static_cast<long>(n));
      s += w * f.coeffs_[k] * out.coeffs_[n - k];
    }
    out.coeffs_[n] = s / Rational(static_cast<long>(n));
  }
  out.normalize();
  return out;
}

QSeries shift(const QSeries& f, const Rational& a) {
  QSeries out = f;
  out.lead_ += a;
  out.prec_ += a;
  return out;
}

QSeries scale(const QSeries& f, const Rational& s) {
  QSeries out = f;
  for (auto& c : out.coeffs_) c *= s;
  out.normalize();
  return out;
}

Rational coefficient(const QSeries& f, const Rational& e) { return f.coefficient(e); }

bool operator==(const QSeries& f, const QSeries& g) { return (f - g).is_zero(); }

}  // namespace voachar
