#include "voachar/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "voachar/error.hpp"
#include "voachar/modforms.hpp"
#include "voachar/virasoro.hpp"

namespace voachar {

namespace {

Rational R(std::int64_t v) { return Rational(static_cast<long>(v)); }

void require_prec(std::int64_t prec) {
  if (prec < 1) throw InvalidArgument("precision must be at least 1");
}

bool dims_less(const QSeries& a, const QSeries& b) {
  const Rational ra = a.relative_precision(), rb = b.relative_precision();
  const auto n = static_cast<std::size_t>(to_int64(floor(std::min(ra, rb))));
  const auto ca = a.integer_steps(n), cb = b.integer_steps(n);
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

// Sort by (weight, dims) while keeping track of the vacuum module.
void sort_modules(Theory& t) {
  std::vector<std::size_t> order(t.modules.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = t.modules[i];
    const auto& b = t.modules[j];
    if (a.weight != b.weight) return a.weight < b.weight;
    return dims_less(a.dims, b.dims);
  });
  std::vector<ModuleChar> sorted;
  std::size_t vac = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] == t.vacuum_index) vac = k;
    sorted.push_back(std::move(t.modules[order[k]]));
  }
  t.modules = std::move(sorted);
  t.vacuum_index = vac;
}

void finish_full(Theory& t) {
  sort_modules(t);
  t.module_count = Integer(static_cast<unsigned long>(t.modules.size()));
  Rational lo = t.modules.front().weight;
  for (const auto& m : t.modules) lo = std::min(lo, m.weight);
  t.lambda_min = lo;
}

Theory invariants_of_power(const Theory& a, std::int64_t n) {
  Theory out;
  out.name = "(" + a.name + ")^" + std::to_string(n);
  out.c = a.c * R(n);
  out.lie_rank = a.lie_rank * n;
  if (a.lambda_min) out.lambda_min = *a.lambda_min * R(n);
  if (a.module_count) {
    Integer cnt;
    mpz_pow_ui(cnt.get_mpz_t(), a.module_count->get_mpz_t(), static_cast<unsigned long>(n));
    out.module_count = cnt;
  }
  out.flags = a.flags;
  return out;
}

}  // namespace

std::int64_t default_module_bound() {
  if (const char* env = std::getenv("VOACHAR_MODULE_BOUND")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10000;
}

QSeries eta_power(const Rational& x, std::int64_t prec) {
  require_prec(prec);
  return shift(power(euler_phi(prec), x), x / 24);
}

Theory trivial_theory(std::int64_t prec) {
  require_prec(prec);
  Theory t;
  t.name = "1";
  t.c = 0;
  t.flags.nontrivial = false;
  t.modules.push_back({Rational(0), QSeries::constant(1, R(prec))});
  t.vacuum_space = QSeries::constant(1, R(prec));
  finish_full(t);
  return t;
}

Theory free_boson(std::int64_t l, std::int64_t prec) {
  if (l < 1) throw InvalidArgument("free boson rank must be positive");
  require_prec(prec);
  Theory t;
  t.name = "Free(" + std::to_string(l) + ")";
  t.c = R(l);
  t.lie_rank = l;
  t.flags.rational = false;
  t.modules.push_back({Rational(0), pow(partition_series(prec), l)});
  t.vacuum_space = QSeries::constant(1, R(prec));
  finish_full(t);
  return t;
}

Theory lattice_theory(const EvenLattice& lattice, std::int64_t prec) {
  require_prec(prec);
  const auto cosets = discriminant_cosets(lattice);
  const auto rank = static_cast<std::int64_t>(lattice.rank());
  const QSeries fock = pow(partition_series(prec), rank);
  Theory t;
  t.name = "Lat(" + lattice.name() + ")";
  t.c = R(rank);
  t.lie_rank = rank;
  for (const auto& g : cosets) {
    const Rational w = g.min_norm / 2;
    // Theta to prec + w keeps prec whole steps past the leading term.
    const std::int64_t extra = to_int64(ceil(w));
    const QSeries th = coset_theta(lattice, g, prec + extra);
    if (g.min_norm == 0) t.vacuum_space = th;
    t.modules.push_back({w, shift(th, -w) * fock});
    t.modules.back().dims = t.modules.back().dims.truncated(R(prec));
  }
  t.vacuum_index = 0;
  finish_full(t);
  return t;
}

Theory minimal_theory(std::int64_t p, std::int64_t q, std::int64_t prec) {
  require_prec(prec);
  const MinimalModel mm = minimal_model(p, q);
  Theory t;
  t.name = "Vir(" + std::to_string(p) + "," + std::to_string(q) + ")";
  t.c = mm.c;
  t.lie_rank = 0;
  t.flags.nontrivial = !(p == 2 && q == 3);
  for (const auto& w : mm.weights) {
    bool done = false;
    for (std::int64_t m = 1; m < p && !done; ++m) {
      for (std::int64_t n = 1; n < q && !done; ++n) {
        if (kac_weight(p, q, m, n) != w) continue;
        if (w == 0) t.vacuum_index = t.modules.size();
        t.modules.push_back({w, irreducible_character(p, q, m, n, prec)});
        done = true;
      }
    }
  }
  t.vacuum_space = t.modules[t.vacuum_index].dims;
  finish_full(t);
  return t;
}

Theory moonshine_theory(std::int64_t prec) {
  if (prec < 3) throw InvalidArgument("precision must be at least 3");
  Theory t;
  t.name = "Moonshine";
  t.c = 24;
  t.lie_rank = 0;
  QSeries dims = shift(moonshine_J(prec), 1).truncated(R(prec));
  t.modules.push_back({Rational(0), dims});
  t.vacuum_space = dims;
  finish_full(t);
  return t;
}

Theory affine_unitary_theory(std::int64_t dim_g, std::int64_t rank_g, std::int64_t h_dual, std::int64_t k) {
  if (k < 1) throw InvalidArgument("level k must be positive");
  if (dim_g < 1 || rank_g < 0 || h_dual < 1) throw InvalidArgument("invalid Lie algebra data");
  Theory t;
  t.name = "Aff(" + std::to_string(dim_g) + "," + std::to_string(rank_g) + "," + std::to_string(h_dual) + "," +
           std::to_string(k) + ")";
  t.c = make_rational(k * dim_g, k + h_dual);
  t.lie_rank = rank_g;
  t.lambda_min = 0;
  return t;
}

Theory tensor(const Theory& a, const Theory& b, std::int64_t module_bound) {
  Theory t;
  t.name = a.name + "*" + b.name;
  t.c = a.c + b.c;
  t.lie_rank = a.lie_rank + b.lie_rank;
  if (a.lambda_min && b.lambda_min) t.lambda_min = *a.lambda_min + *b.lambda_min;
  if (a.module_count && b.module_count) t.module_count = *a.module_count * *b.module_count;
  t.flags.rational = a.flags.rational && b.flags.rational;
  t.flags.strong_cft = a.flags.strong_cft && b.flags.strong_cft;
  t.flags.nontrivial = a.flags.nontrivial || b.flags.nontrivial;
  const Integer pairs = Integer(static_cast<unsigned long>(a.modules.size())) * b.modules.size();
  if (a.invariants_only() || b.invariants_only() || pairs > module_bound) return t;
  for (std::size_t i = 0; i < a.modules.size(); ++i) {
    for (std::size_t j = 0; j < b.modules.size(); ++j) {
      if (i == a.vacuum_index && j == b.vacuum_index) t.vacuum_index = t.modules.size();
      t.modules.push_back({a.modules[i].weight + b.modules[j].weight, a.modules[i].dims * b.modules[j].dims});
    }
  }
  if (a.vacuum_space && b.vacuum_space) t.vacuum_space = *a.vacuum_space * *b.vacuum_space;
  finish_full(t);
  return t;
}

Theory tensor_power(const Theory& a, std::int64_t n, std::int64_t module_bound) {
  if (n < 1) throw InvalidArgument("tensor power must be positive");
  if (n == 1) return a;
  bool fits = !a.invariants_only();
  if (fits) {
    Integer total;
    mpz_pow_ui(total.get_mpz_t(), Integer(static_cast<unsigned long>(a.modules.size())).get_mpz_t(),
               static_cast<unsigned long>(n));
    fits = total <= module_bound;
  }
  if (!fits) return invariants_of_power(a, n);
  Theory result;
  Theory base = a;
  bool have = false;
  for (std::int64_t e = n;; e >>= 1) {
    if (e & 1) {
      result = have ? tensor(result, base, module_bound) : base;
      have = true;
    }
    if (e == 1) break;
    base = tensor(base, base, module_bound);
  }
  result.name = "(" + a.name + ")^" + std::to_string(n);
  return result;
}

Rational effective_central_charge(const Theory& t) {
  if (!t.lambda_min) throw InvalidArgument("weights unknown for " + t.name);
  return t.c - 24 * *t.lambda_min;
}

RankBoundReport check_rank_bound(const Theory& t) {
  RankBoundReport r;
  r.applicable = t.flags.rational;
  r.lie_rank = R(t.lie_rank);
  r.c_tilde = effective_central_charge(t);
  r.c_tilde_positive = r.c_tilde > 0;
  r.holds = r.lie_rank <= r.c_tilde && (!t.flags.nontrivial || r.c_tilde_positive);
  return r;
}

bool check_lattice_characterization(const Theory& t) {
  const Rational ct = effective_central_charge(t);
  return ct == R(t.lie_rank) && ct == t.c;
}

QSeries full_character(const Theory& t, std::size_t j) {
  if (t.invariants_only()) throw InvalidArgument("invariants-only theory");
  if (j >= t.modules.size()) throw InvalidArgument("module index out of range");
  return shift(t.modules[j].dims, t.modules[j].weight - t.c / 24);
}

VacuumIdentity vacuum_identity_sides(const Theory& t) {
  if (!t.vacuum_space || t.invariants_only()) throw InvalidArgument("no vacuum-space decomposition known");
  const Rational ct = effective_central_charge(t);
  const Rational l = R(t.lie_rank);
  const QSeries z = full_character(t, t.vacuum_index);
  const QSeries& omega = *t.vacuum_space;
  const auto rel = to_int64(ceil(std::min(z.relative_precision(), omega.relative_precision())));
  VacuumIdentity out{eta_power(ct, rel) * z, shift(eta_power(ct - l, rel) * omega, (l - t.c) / 24)};
  return out;
}

bool verify_vacuum_identity(const Theory& t, std::int64_t prec) {
  const VacuumIdentity s = vacuum_identity_sides(t);
  if (s.lhs.relative_precision() < R(prec) || s.rhs.relative_precision() < R(prec))
    throw PrecisionError("theory built below the requested precision");
  return s.lhs.lead() == s.rhs.lead() && s.lhs == s.rhs;
}

}  // namespace voachar
