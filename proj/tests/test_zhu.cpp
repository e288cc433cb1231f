#include <doctest.h>

#include "oracles.hpp"
#include "voachar/error.hpp"
#include "voachar/lattice.hpp"
#include "voachar/zhu.hpp"

using namespace voachar;

namespace {

Rational R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

using Poly = std::vector<Rational>;  // coefficients of z^0 .. z^(n-1)

Poly pmul(const Poly& a, const Poly& b) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// log(1+z) and (1+z)^e truncated to n terms, from their Taylor series.
Poly log1p(std::size_t n) {
  Poly p(n);
  for (std::size_t k = 1; k < n; ++k) p[k] = R(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
  return p;
}

Poly binomial_series(long e, std::size_t n) {
  Poly p(n);
  Rational c = 1;
  for (std::size_t k = 0; k < n; ++k) {
    p[k] = c;
    c = c * Rational(e - static_cast<long>(k)) / Rational(static_cast<long>(k + 1));
  }
  return p;
}

Poly ppow(const Poly& a, long m) {
  Poly out(a.size());
  out[0] = 1;
  for (long k = 0; k < m; ++k) out = pmul(out, a);
  return out;
}

const IntMatrix kA2{{2, -1}, {-1, 2}};

}  // namespace

TEST_SUITE("zhu") {
  TEST_CASE("bracket coefficient examples") {
    for (std::int64_t k = 0; k <= 5; ++k)
      for (std::int64_t m = 0; m <= 5; ++m) CHECK(bracket_coeff(k, m, m) == 1);
    for (std::int64_t wt = 1; wt <= 6; ++wt)
      for (std::int64_t i = 0; i <= 6; ++i) {
        Integer b;
        mpz_bin_ui(b.get_mpz_t(), Integer(static_cast<long>(wt - 1)).get_mpz_t(), static_cast<unsigned long>(i));
        CHECK(bracket_coeff(wt, i, 0) == Rational(b));
      }
    CHECK(bracket_coeff(1, 1, -1) == R(-1, 12));
    CHECK(bracket_coeff(1, -1, -1) == 1);
    CHECK(bracket_coeff(1, 0, -1) == R(1, 2));
    CHECK(bracket_coeff(3, 1, 2) == 0);
  }

  TEST_CASE("property: generating identity for -2 <= m <= 4, k <= 5") {
    const std::size_t n = 12;
    for (long k = 0; k <= 5; ++k) {
      const Poly b = binomial_series(k - 1, n);
      for (long m = 0; m <= 4; ++m) {
        const Poly expected = pmul(ppow(log1p(n), m), b);
        for (long i = 0; i < static_cast<long>(n); ++i) CHECK(bracket_coeff(k, i, m) == expected[static_cast<std::size_t>(i)]);
      }
      for (long m = -2; m < 0; ++m) {
        // (sum_i c(k, i, m) z^i) * log(1+z)^|m| = (1+z)^(k-1); shift by |m| so indices start at 0.
        const long s = -m;
        Poly c(n);
        for (long i = m; i < static_cast<long>(n) + m; ++i) c[static_cast<std::size_t>(i - m)] = bracket_coeff(k, i, m);
        Poly l(n);  // log(1+z)/z
        const Poly lg = log1p(n + 1);
        for (std::size_t j = 0; j < n; ++j) l[j] = lg[j + 1];
        CHECK(pmul(c, ppow(l, s)) == b);
      }
    }
  }

  TEST_CASE("fock quadratic trace") {
    const QSeries f = fock_quadratic_trace(R(1), 10);
    const long e[] = {0, 1, 3, 4, 7};
    for (int n = 1; n < 5; ++n) CHECK(f.coefficient(R(n)) == e[n]);
    for (int n = 1; n < 10; ++n) CHECK(f.coefficient(R(n)) == oracle::sigma(1, n));
    CHECK(fock_quadratic_trace(R(0), 10).is_zero());
    CHECK(fock_quadratic_trace(R(2), 10) == R(2) * f);
  }

  TEST_CASE("lhs trace") {
    const EvenLattice a1 = lattice_a1();
    const HeisenbergPair p(a1, {R(1)}, {R(1)});
    CHECK(p.pairing == 2);
    const QSeries l = lhs_trace(p, zero_coset(a1), 20);
    CHECK(l.lead() == R(23, 24));
    CHECK(l.leading_coefficient() == 8);
    CHECK(lhs_trace(HeisenbergPair(a1, {R(0)}, {R(1)}), zero_coset(a1), 10).is_zero());
    const EvenLattice s = direct_sum(a1, a1);
    const HeisenbergPair o(s, {R(1), R(0)}, {R(0), R(1)});
    CHECK(o.pairing == 0);
    CHECK(lhs_trace(o, zero_coset(s), 12).is_zero());
    CHECK(verify_zhu_identity(o, 12));
    CHECK_THROWS_AS(HeisenbergPair(a1, {R(1), R(1)}, {R(1)}), InvalidArgument);
  }

  TEST_CASE("identity on A1 and E8") {
    const EvenLattice a1 = lattice_a1();
    const HeisenbergPair p(a1, {R(1)}, {R(1)});
    for (const auto& c : discriminant_cosets(a1)) {
      CHECK(verify_zhu_module(p, c, 20));
      CHECK(lhs_trace(p, c, 20) == rhs_trace(p, c, 20));
    }
    CHECK(verify_zhu_identity(p, 20));
    const EvenLattice e8 = lattice_e8();
    RationalVector u(8, Rational(0));
    u[0] = 1;
    CHECK(verify_zhu_identity(HeisenbergPair(e8, u, u), 12));
  }

  TEST_CASE("negative control breaks the identity at q^1 by 2 <u,v> theta-lead") {
    const EvenLattice a1 = lattice_a1();
    const HeisenbergPair p(a1, {R(1)}, {R(1)});
    const auto cs = discriminant_cosets(a1);
    CHECK(verify_zhu_identity(p, 20));
    for (const auto& c : cs) {
      CHECK_FALSE(verify_zhu_module(p, c, 20, E2Mode::constant_term));
      const QSeries diff = rhs_trace(p, c, 20, E2Mode::constant_term) - rhs_trace(p, c, 20);
      const QSeries th = coset_theta(a1, c, 20);
      const Rational at = th.lead() + 1 - R(1, 24);
      CHECK(diff.lead() == at);
      CHECK(diff.coefficient(at) == 2 * p.pairing * th.leading_coefficient());
    }
  }

  TEST_CASE("property: identity is bilinear across random pairs") {
    oracle::RandomSeries g(8);
    const EvenLattice a2 = EvenLattice::validate(kA2);
    for (int trial = 0; trial < 8; ++trial) {
      const RationalVector u{g.rational(3, 2), g.rational(3, 2)};
      const RationalVector v{g.rational(3, 2), g.rational(3, 2)};
      RationalVector w{u[0] + v[0], u[1] + v[1]};
      const HeisenbergPair pu(a2, u, u), pv(a2, v, v), pw(a2, w, w), puv(a2, u, v);
      CHECK(verify_zhu_identity(puv, 10));
      CHECK(verify_zhu_identity(pw, 10));
      // Polarization: <w,w> = <u,u> + 2<u,v> + <v,v>, and the traces follow.
      CHECK(pw.pairing == pu.pairing + 2 * puv.pairing + pv.pairing);
      for (const auto& c : discriminant_cosets(a2)) {
        CHECK(lhs_trace(pw, c, 10) ==
              lhs_trace(pu, c, 10) + R(2) * lhs_trace(puv, c, 10) + lhs_trace(pv, c, 10));
        CHECK(rhs_trace(pw, c, 10) ==
              rhs_trace(pu, c, 10) + R(2) * rhs_trace(puv, c, 10) + rhs_trace(pv, c, 10));
      }
    }
  }
}
