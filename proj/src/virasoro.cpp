#include "voachar/virasoro.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "voachar/error.hpp"
#include "voachar/modforms.hpp"

namespace voachar {

namespace {

void require_model(std::int64_t p, std::int64_t q) {
  if (p < 2 || q <= p) throw InvalidArgument("range violation: need 2 <= p < q");
  if (std::gcd(p, q) != 1) throw InvalidArgument("not coprime");
}

// Extended Euclid: returns (g, x, y) with a x + b y = g.
std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  if (b == 0) return {a, 1, 0};
  auto [g, x, y] = ext_gcd(b, a % b);
  return {g, y, x - (a / b) * y};
}

using Partition = std::vector<int>;  // L(-n_1) ... L(-n_k) v with n_1 >= ... >= n_k
using Vec = std::map<Partition, Rational>;

void add_scaled(Vec& out, const Vec& in, const Rational& factor) {
  if (factor == 0) return;
  for (const auto& [p, c] : in) {
    Rational& slot = out[p];
    slot += factor * c;
    if (slot == 0) out.erase(p);
  }
}

class VermaAction {
 public:
  VermaAction(Rational c, Rational h) : c_(std::move(c)), h_(std::move(h)), quotient_(h_ == 0) {}

  // L(a) applied to a PBW monomial, straightened back into PBW form.
  const Vec& apply(int a, const Partition& v) {
    const auto key = std::make_pair(a, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Vec out = compute(a, v);
    return memo_.emplace(key, std::move(out)).first->second;
  }

  Vec apply_vec(int a, const Vec& v) {
    Vec out;
    for (const auto& [p, coeff] : v) add_scaled(out, apply(a, p), coeff);
    return out;
  }

 private:
  Vec compute(int a, const Partition& v) {
    int level = 0;
    for (int x : v) level += x;
    if (a == 0) return {{v, h_ + level}};
    if (v.empty()) {
      if (a > 0 || (quotient_ && a == -1)) return {};
      return {{Partition{-a}, Rational(1)}};
    }
    const int n1 = v.front();
    const Partition rest(v.begin() + 1, v.end());
    if (a < 0 && -a >= n1) {
      Partition out{-a};
      out.insert(out.end(), v.begin(), v.end());
      return {{out, Rational(1)}};
    }
    Vec out;
    // L(a) L(-n1) R = L(-n1) L(a) R + [L(a), L(-n1)] R
    add_scaled(out, apply_vec(-n1, apply(a, rest)), Rational(1));
    add_scaled(out, apply(a - n1, rest), Rational(a + n1));
    if (a == n1) {
      Vec r{{rest, Rational(1)}};
      add_scaled(out, r, c_ * make_rational(static_cast<std::int64_t>(a) * a * a - a, 12));
    }
    return out;
  }

  Rational c_, h_;
  bool quotient_;
  std::map<std::pair<int, Partition>, Vec> memo_;
};

void partitions(int n, int max_part, int min_part, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= min_part; --k) {
    cur.push_back(k);
    partitions(n - k, k, min_part, cur, out);
    cur.pop_back();
  }
}

std::int64_t rank(std::vector<std::vector<Rational>> m) {
  std::int64_t r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(r) < rows; ++col) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(r)]);
    const auto& pr = m[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      const Rational f = m[i][col] / pr[col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * pr[j];
    }
    ++r;
  }
  return r;
}

}  // namespace

Rational central_charge(std::int64_t p, std::int64_t q) {
  return Rational(1) - make_rational(6 * (p - q) * (p - q), p * q);
}

Rational kac_weight(std::int64_t p, std::int64_t q, std::int64_t m, std::int64_t n) {
  const std::int64_t d = n * p - m * q;
  return make_rational(d * d - (p - q) * (p - q), 4 * p * q);
}

MinimalModel minimal_model(std::int64_t p, std::int64_t q) {
  require_model(p, q);
  MinimalModel out;
  out.p = p;
  out.q = q;
  out.c = central_charge(p, q);
  std::set<Rational> grid;
  for (std::int64_t m = 1; m < p; ++m)
    for (std::int64_t n = 1; n < q; ++n) grid.insert(kac_weight(p, q, m, n));
  out.weights.assign(grid.begin(), grid.end());
  return out;
}

std::pair<std::int64_t, std::int64_t> lambda_min_certificate(std::int64_t p, std::int64_t q) {
  require_model(p, q);
  auto [g, x, y] = ext_gcd(p, q);
  (void)g;
  (void)y;
  // x p = 1 (mod q); n = -x mod q solves n p = -1 (mod q).
  std::int64_t n = ((-x) % q + q) % q;
  const std::int64_t m = (n * p + 1) / q;
  if (n < 1 || n >= q || m < 1 || m >= p) throw ComputationError("internal: certificate out of range");
  return {m, n};
}

QSeries irreducible_character(std::int64_t p, std::int64_t q, std::int64_t m, std::int64_t n, std::int64_t prec) {
  require_model(p, q);
  if (m < 1 || m >= p || n < 1 || n >= q) throw InvalidArgument("range violation: module label out of range");
  if (prec < 1) throw InvalidArgument("precision must be at least 1");
  const std::int64_t pq = p * q;
  std::vector<Integer> num(static_cast<std::size_t>(prec));
  auto add = [&](std::int64_t e, int sign) {
    if (e >= 0 && e < prec) num[static_cast<std::size_t>(e)] += sign;
  };
  // Every exponent with |k| > K is at least pq (k^2 - 2|k|) >= prec.
  std::int64_t kmax = 1;
  while (pq * (kmax * kmax - 2 * kmax) < prec) ++kmax;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    add(pq * k * k + k * (q * m - p * n), 1);
    add((p * k + m) * (q * k + n), -1);
  }
  return mul(QSeries::from_integers(num), partition_series(prec));
}

QSeries generic_verma_character(std::int64_t prec) {
  if (prec < 1) throw InvalidArgument("precision must be at least 1");
  std::vector<Integer> one_minus_q(static_cast<std::size_t>(std::max<std::int64_t>(prec, 2)));
  one_minus_q[0] = 1;
  one_minus_q[1] = -1;
  return mul(QSeries::from_integers(one_minus_q), partition_series(prec)).truncated(Rational(static_cast<long>(prec)));
}

std::int64_t shapovalov_rank(const Rational& c, const Rational& h, std::int64_t level) {
  if (level < 0) throw InvalidArgument("level must be nonnegative");
  if (level > kMaxShapovalovLevel) throw InvalidArgument("level too large");
  if (level == 0) return 1;
  std::vector<Partition> basis;
  Partition cur;
  partitions(static_cast<int>(level), static_cast<int>(level), h == 0 ? 2 : 1, cur, basis);
  if (basis.empty()) return 0;
  VermaAction act(c, h);
  const std::size_t d = basis.size();
  std::vector<std::vector<Rational>> gram(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      // <L(-mu)v, L(-nu)v> = coefficient of v in L(mu_k) ... L(mu_1) L(-nu) v.
      Vec w{{basis[j], Rational(1)}};
      for (int part : basis[i]) w = act.apply_vec(part, w);
      auto it = w.find(Partition{});
      gram[i][j] = it == w.end() ? Rational(0) : it->second;
    }
  }
  return rank(gram);
}

}  // namespace voachar
