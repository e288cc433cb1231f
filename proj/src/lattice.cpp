#include "voachar/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "voachar/error.hpp"

namespace voachar {

namespace {

using i128 = __int128;

Integer to_integer(i128 v) {
  const bool negative = v < 0;
  unsigned __int128 m = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(m >> 64));
  Integer lo(static_cast<unsigned long>(m & 0xFFFFFFFFFFFFFFFFull));
  Integer out = (hi << 64) + lo;
  return negative ? Integer(-out) : out;
}

i128 to_i128(const Integer& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 100) throw ComputationError("lattice data too large for exact enumeration");
  Integer a = abs(z);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  i128 v = (static_cast<i128>(hi.get_ui()) << 64) | static_cast<i128>(lo.get_ui());
  return sgn(z) < 0 ? -v : v;
}

template <class T>
T isqrt(T x) {
  if (x <= 0) return 0;
  auto r = static_cast<T>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

template <class T>
T floor_div(T a, T b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

template <class T>
T ceil_div(T a, T b) {
  return -floor_div<T>(-a, b);
}

template <class T>
T mod_pos(T a, T m) {
  const T r = a % m;
  return r < 0 ? r + m : r;
}

// Fraction-free elimination of the Gram matrix.  After k steps the entry
// (i, j), i, j >= k, is the minor on rows {0..k-1, i} and columns {0..k-1, j}.
struct Elimination {
  std::vector<Integer> minors;             // minors[k]: leading k x k determinant
  std::vector<std::vector<Integer>> rows;  // rows[k][j], j >= k, entries after k steps
};

Elimination eliminate(const IntMatrix& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(g[i][j]);
  Elimination out;
  out.minors.assign(n + 1, Integer(1));
  out.rows.assign(n, std::vector<Integer>(n));
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k; j < n; ++j) out.rows[k][j] = a[k][j];
    out.minors[k + 1] = a[k][k];
    if (a[k][k] == 0) {
      for (std::size_t m = k + 2; m <= n; ++m) out.minors[m] = 0;
      break;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return out;
}

// Exact short-vector enumeration on z = D x + r, x in Z^n, z^T G z <= bound.
template <class T>
class Enumerator {
 public:
  Enumerator(const Elimination& e, std::int64_t modulus, std::vector<std::int64_t> residues, i128 bound)
      : n_(e.rows.size()), mod_(modulus), res_(std::move(residues)), bound_(static_cast<T>(bound)), z_(n_) {
    for (const auto& m : e.minors) minors_.push_back(static_cast<T>(to_i128(m)));
    rows_.assign(n_, std::vector<T>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) rows_[i][j] = static_cast<T>(to_i128(e.rows[i][j]));
  }

  template <class Visit>
  void run(Visit&& visit) {
    if (n_ == 0 || bound_ < 0) return;
    level(n_ - 1, 0, visit);
  }

 private:
  template <class Visit>
  void level(std::size_t i, T trailing, Visit& visit) {
    const T a = minors_[i + 1];
    T b = 0;
    for (std::size_t j = i + 1; j < n_; ++j) b += rows_[i][j] * z_[j];
    const T disc = minors_[i] * (a * bound_ - trailing);
    if (disc < 0) return;
    const T s = isqrt<T>(disc);
    const T lo = ceil_div<T>(-b - s, a);
    const T hi = floor_div<T>(-b + s, a);
    T t = lo + mod_pos<T>(res_[i] - lo, mod_);
    if (t > hi) return;
    T u = a * t + b;
    T norm = (u * u + minors_[i] * trailing) / a;
    // Stepping t by D changes the norm by 2 u D + a D^2; no division needed.
    const T du = a * mod_;
    const T dd = a * mod_ * mod_;
    for (; t <= hi; t += mod_) {
      z_[i] = static_cast<std::int64_t>(t);
      if (i == 0)
        visit(z_, norm);
      else
        level(i - 1, norm, visit);
      norm += 2 * u * mod_ + dd;
      u += du;
    }
  }

  std::size_t n_;
  std::int64_t mod_;
  std::vector<std::int64_t> res_;
  T bound_;
  std::vector<T> minors_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::int64_t> z_;
};

// Integer form of a coset: z = D(alpha) lies in r + D Z^n.
struct ScaledCoset {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> residues;
};

ScaledCoset scale_coset(const RationalVector& coords) {
  ScaledCoset out;
  Integer d = 1;
  for (const auto& c : coords) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  out.modulus = to_int64(d);
  for (const auto& c : coords) {
    Integer r = c.get_num() * (d / c.get_den());
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t());
    out.residues.push_back(to_int64(r));
  }
  return out;
}

std::vector<RationalVector> inverse(const IntMatrix& g) {
  const std::size_t n = g.size();
  std::vector<RationalVector> a(n, RationalVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(static_cast<long>(g[i][j]));
    a[i][n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (a[p][k] == 0) ++p;
    std::swap(a[p], a[k]);
    const Rational piv = a[k][k];
    for (auto& x : a[k]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rational f = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<RationalVector> inv(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

// Integer vector W and denominator d with G u = W / d.
std::pair<std::vector<i128>, Integer> scaled_gram_image(const EvenLattice& lattice, const RationalVector& u) {
  const auto& g = lattice.gram();
  const std::size_t n = lattice.rank();
  if (u.size() != n) throw InvalidArgument("vector length does not match lattice rank");
  RationalVector gu(n);
  Integer d = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gu[i] += Rational(static_cast<long>(g[i][j])) * u[j];
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), gu[i].get_den_mpz_t());
  }
  std::vector<i128> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = to_i128(gu[i].get_num() * (d / gu[i].get_den()));
  return {w, d};
}

// Runs in 64-bit arithmetic when every intermediate provably fits, else in
// 128-bit; throws when even that could overflow.
template <class Visit>
void enumerate_coset(const EvenLattice& lattice, const ScaledCoset& coset, i128 bound, Visit&& visit) {
  const Elimination e = eliminate(lattice.gram());
  if (bound < 0) return;
  // |u|^2, M_i * trailing and a * bound are all at most M_i M_{i+1} (bound + 1);
  // b and the step terms stay within a few times sqrt of that plus D^2 a.
  Integer worst = 0;
  for (std::size_t i = 0; i + 1 < e.minors.size(); ++i)
    worst = std::max(worst, Integer(e.minors[i] * e.minors[i + 1]));
  Integer row_max = 0;
  for (const auto& row : e.rows)
    for (const auto& x : row) row_max = std::max(row_max, Integer(abs(x)));
  const Integer d(static_cast<long>(coset.modulus));
  Integer magnitude = worst * (to_integer(bound) + 1) * 16 + row_max * row_max * d * d * 16 + 16;
  if (mpz_sizeinbase(magnitude.get_mpz_t(), 2) < 62) {
    Enumerator<std::int64_t> en(e, coset.modulus, coset.residues, bound);
    en.run([&](const std::vector<std::int64_t>& z, std::int64_t norm) { visit(z, static_cast<i128>(norm)); });
  } else if (mpz_sizeinbase(magnitude.get_mpz_t(), 2) < 124) {
    Enumerator<i128> en(e, coset.modulus, coset.residues, bound);
    en.run(visit);
  } else {
    throw ComputationError("lattice data too large for exact enumeration");
  }
}

}  // namespace

EvenLattice EvenLattice::validate(IntMatrix gram, std::string name) {
  const std::size_t n = gram.size();
  if (n == 0) throw InvalidArgument("not square: empty Gram matrix");
  for (const auto& row : gram)
    if (row.size() != n) throw InvalidArgument("not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram[i][j] != gram[j][i]) throw InvalidArgument("not symmetric");
  for (std::size_t i = 0; i < n; ++i)
    if (gram[i][i] % 2 != 0) throw InvalidArgument("odd diagonal");
  const Elimination e = eliminate(gram);
  for (std::size_t k = 1; k <= n; ++k)
    if (e.minors[k] <= 0) throw InvalidArgument("not positive definite");
  EvenLattice out;
  out.gram_ = std::move(gram);
  out.det_ = e.minors[n];
  out.name_ = std::move(name);
  return out;
}

Rational EvenLattice::pairing(const RationalVector& u, const RationalVector& v) const {
  if (u.size() != rank() || v.size() != rank()) throw InvalidArgument("vector length does not match lattice rank");
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (gram_[i][j] != 0) s += u[i] * Rational(static_cast<long>(gram_[i][j])) * v[j];
  return s;
}

EvenLattice lattice_a1() { return EvenLattice::validate({{2}}, "A1"); }

EvenLattice lattice_e8() {
  return EvenLattice::validate({{2, 0, -1, 0, 0, 0, 0, 0},
                                {0, 2, 0, -1, 0, 0, 0, 0},
                                {-1, 0, 2, -1, 0, 0, 0, 0},
                                {0, -1, -1, 2, -1, 0, 0, 0},
                                {0, 0, 0, -1, 2, -1, 0, 0},
                                {0, 0, 0, 0, -1, 2, -1, 0},
                                {0, 0, 0, 0, 0, -1, 2, -1},
                                {0, 0, 0, 0, 0, 0, -1, 2}},
                               "E8");
}

EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b) {
  const std::size_t n = a.rank() + b.rank();
  IntMatrix g(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g[i][j] = a.gram()[i][j];
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) g[a.rank() + i][a.rank() + j] = b.gram()[i][j];
  return EvenLattice::validate(std::move(g), a.name() + "+" + b.name());
}

EvenLattice named_lattice(std::string_view name) {
  if (name == "A1") return lattice_a1();
  if (name == "E8") return lattice_e8();
  throw InvalidArgument("unknown lattice '" + std::string(name) + "'");
}

EvenLattice parse_gram(std::string_view text, std::string name) {
  std::vector<std::vector<std::int64_t>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::int64_t> row;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InvalidArgument("Gram file: non-integer entry '" + tok + "'");
      }
    }
    if (!row.empty()) lines.push_back(std::move(row));
  }
  if (lines.empty() || lines[0].size() != 1 || lines[0][0] <= 0)
    throw InvalidArgument("Gram file: first line must hold the positive rank");
  const auto r = static_cast<std::size_t>(lines[0][0]);
  if (lines.size() != r + 1) throw InvalidArgument("Gram file: expected " + std::to_string(r) + " matrix rows");
  IntMatrix gram(lines.begin() + 1, lines.end());
  for (const auto& row : gram)
    if (row.size() != r) throw InvalidArgument("Gram file: each row needs " + std::to_string(r) + " entries");
  return EvenLattice::validate(std::move(gram), std::move(name));
}

EvenLattice load_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open Gram file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_gram(buf.str(), path);
}

CosetRep zero_coset(const EvenLattice& lattice) { return {RationalVector(lattice.rank(), Rational(0)), Rational(0)}; }

std::vector<CosetRep> discriminant_cosets(const EvenLattice& lattice, std::int64_t bound) {
  const Integer& det = lattice.determinant();
  if (det > bound) throw InvalidArgument("discriminant too large: det " + det.get_str());
  const std::int64_t d = to_int64(det);
  const std::size_t n = lattice.rank();

  // Columns of adj(G) = det * G^{-1} generate the dual lattice, scaled by det.
  const auto inv = inverse(lattice.gram());
  std::vector<std::vector<std::int64_t>> gens(n, std::vector<std::int64_t>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) gens[j][i] = to_int64(Rational(inv[i][j] * Rational(det)).get_num());

  std::set<std::vector<std::int64_t>> seen{std::vector<std::int64_t>(n, 0)};
  std::deque<std::vector<std::int64_t>> todo{std::vector<std::int64_t>(n, 0)};
  while (!todo.empty()) {
    const auto w = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      std::vector<std::int64_t> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = mod_pos<std::int64_t>(w[i] + g[i], d);
      if (seen.insert(next).second) todo.push_back(std::move(next));
    }
  }
  if (static_cast<std::int64_t>(seen.size()) != d)
    throw ComputationError("internal: discriminant group order mismatch");

  std::vector<CosetRep> out;
  for (const auto& w : seen) {
    CosetRep rep;
    for (std::size_t i = 0; i < n; ++i) rep.coords.push_back(make_rational(w[i], d));
    const ScaledCoset sc = scale_coset(rep.coords);
    // The centred residue vector belongs to the coset and bounds its minimum.
    std::vector<i128> z0(n);
    for (std::size_t i = 0; i < n; ++i)
      z0[i] = 2 * sc.residues[i] > sc.modulus ? sc.residues[i] - sc.modulus : sc.residues[i];
    i128 b0 = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b0 += z0[i] * lattice.gram()[i][j] * z0[j];
    i128 best = b0;
    enumerate_coset(lattice, sc, b0, [&](const std::vector<std::int64_t>&, i128 norm) { best = std::min(best, norm); });
    rep.min_norm = Rational(to_integer(best), Integer(static_cast<long>(sc.modulus)) * sc.modulus);
    rep.min_norm.canonicalize();
    out.push_back(std::move(rep));
  }
  std::sort(out.begin(), out.end(), [](const CosetRep& a, const CosetRep& b) {
    if (a.min_norm != b.min_norm) return a.min_norm < b.min_norm;
    return a.coords < b.coords;
  });
  return out;
}

QSeries coset_theta(const EvenLattice& lattice, const CosetRep& coset, std::int64_t prec) {
  if (prec < 1) throw InvalidArgument("precision must be at least 1");
  const ScaledCoset sc = scale_coset(coset.coords);
  const i128 d2 = static_cast<i128>(sc.modulus) * sc.modulus;
  const i128 bound = 2 * prec * d2 - 1;
  std::map<Rational, Rational> terms;
  auto emit = [&](i128 norm, std::int64_t count) {
    Rational e(to_integer(norm), to_integer(2 * d2));
    e.canonicalize();
    terms[e] += Rational(static_cast<long>(count));
  };
  if (bound < (static_cast<i128>(1) << 24)) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bound) + 1, 0);
    enumerate_coset(lattice, sc, bound,
                    [&](const std::vector<std::int64_t>&, i128 norm) { ++counts[static_cast<std::size_t>(norm)]; });
    for (std::size_t n = 0; n < counts.size(); ++n)
      if (counts[n] != 0) emit(static_cast<i128>(n), counts[n]);
  } else {
    std::map<i128, std::int64_t> counts;
    enumerate_coset(lattice, sc, bound, [&](const std::vector<std::int64_t>&, i128 norm) { ++counts[norm]; });
    for (const auto& [norm, count] : counts) emit(norm, count);
  }
  return QSeries::from_terms(terms, Rational(prec));
}

QSeries theta(const EvenLattice& lattice, std::int64_t prec) { return coset_theta(lattice, zero_coset(lattice), prec); }

QSeries weighted_theta(const EvenLattice& lattice, const CosetRep& coset, const RationalVector& u,
                       const RationalVector& v, std::int64_t prec) {
  if (prec < 1) throw InvalidArgument("precision must be at least 1");
  const auto [wu, du] = scaled_gram_image(lattice, u);
  const auto [wv, dv] = scaled_gram_image(lattice, v);
  const ScaledCoset sc = scale_coset(coset.coords);
  const i128 d2 = static_cast<i128>(sc.modulus) * sc.modulus;
  std::map<i128, i128> sums;
  enumerate_coset(lattice, sc, 2 * prec * d2 - 1, [&](const std::vector<std::int64_t>& z, i128 norm) {
    i128 a = 0, b = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      a += wu[i] * z[i];
      b += wv[i] * z[i];
    }
    sums[norm] += a * b;
  });
  const Integer denom = du * dv * to_integer(d2);
  std::map<Rational, Rational> terms;
  for (const auto& [norm, s] : sums) {
    Rational e(to_integer(norm), to_integer(2 * d2));
    e.canonicalize();
    Rational c(to_integer(s), denom);
    c.canonicalize();
    terms[e] += c;
  }
  return QSeries::from_terms(terms, Rational(prec));
}

QSeries weighted_theta(const EvenLattice& lattice, const RationalVector& u, const RationalVector& v,
                       std::int64_t prec) {
  return weighted_theta(lattice, zero_coset(lattice), u, v, prec);
}

void for_each_vector(const EvenLattice& lattice, const CosetRep& coset, const Rational& max_norm,
                     const std::function<void(const RationalVector&, const Rational&)>& visit) {
  const ScaledCoset sc = scale_coset(coset.coords);
  const Integer d(static_cast<long>(sc.modulus));
  const Integer d2 = d * d;
  const i128 bound = to_i128(floor(max_norm * Rational(d2)));
  RationalVector alpha(lattice.rank());
  enumerate_coset(lattice, sc, bound, [&](const std::vector<std::int64_t>& z, i128 norm) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      alpha[i] = Rational(Integer(static_cast<long>(z[i])), d);
      alpha[i].canonicalize();
    }
    Rational nn(to_integer(norm), d2);
    nn.canonicalize();
    visit(alpha, nn);
  });
}

}  // namespace voachar
