#include <doctest.h>

#include "oracles.hpp"
#include "voachar/error.hpp"
#include "voachar/modforms.hpp"

using namespace voachar;

namespace {
Rational R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}
}  // namespace

TEST_SUITE("modforms") {
  TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == R(-1, 2));
    CHECK(bernoulli(2) == R(1, 6));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == R(-1, 30));
    CHECK(bernoulli(12) == R(-691, 2730));
  }

  TEST_CASE("euler phi matches the product expansion") {
    const auto ref = oracle::euler_product(80);
    const QSeries phi = euler_phi(80);
    CHECK(phi.prec() == 80);
    for (int n = 0; n < 80; ++n) CHECK(phi.coefficient(R(n)) == ref[static_cast<std::size_t>(n)]);
  }

  TEST_CASE("partition series matches direct counting") {
    const QSeries p = partition_series(60);
    for (int n = 0; n < 60; ++n) CHECK(p.coefficient(R(n)) == oracle::count_partitions(n, n));
    CHECK((p * euler_phi(60)) == QSeries::constant(1, R(60)));
  }

  TEST_CASE("eta carries q^(1/24)") {
    const QSeries e = eta(10);
    CHECK(e.lead() == R(1, 24));
    CHECK(e.prec() == R(241, 24));
    CHECK(e.coefficient(R(25, 24)) == -1);
    CHECK(e.coefficient(R(49, 24)) == -1);
    CHECK(e.coefficient(R(121, 24)) == 1);
  }

  TEST_CASE("sigma series") {
    for (int s : {0, 1, 3, 5, 11}) {
      const QSeries f = sigma_series(s, 40);
      CHECK(f.coefficient(R(0)) == 0);
      for (int n = 1; n < 40; ++n) CHECK(f.coefficient(R(n)) == oracle::sigma(s, n));
    }
  }

  TEST_CASE("eisenstein normalizations") {
    const QSeries e4 = eisenstein_classical(EisensteinIndex(2), 30);
    const QSeries e6 = eisenstein_classical(EisensteinIndex(3), 30);
    const QSeries e2 = eisenstein_classical(EisensteinIndex(1), 30);
    for (int n = 1; n < 30; ++n) {
      CHECK(e4.coefficient(R(n)) == 240 * oracle::sigma(3, n));
      CHECK(e6.coefficient(R(n)) == -504 * oracle::sigma(5, n));
      CHECK(e2.coefficient(R(n)) == -24 * oracle::sigma(1, n));
    }
    // E_{2k} = (-B_{2k}/(2k)!) * classical.
    const QSeries g4 = eisenstein(EisensteinIndex(2), 30);
    CHECK(g4 == R(1, 720) * e4);
    CHECK(eisenstein(EisensteinIndex(1), 30) == R(-1, 12) * e2);
    CHECK_THROWS_AS(EisensteinIndex(0), InvalidArgument);
  }

  TEST_CASE("E4^2 = E8 and E4 E6 = E10") {
    auto C = [](std::int64_t k) { return eisenstein_classical(EisensteinIndex(k), 40); };
    CHECK(C(2) * C(2) == C(4));
    CHECK(C(2) * C(3) == C(5));
  }

  TEST_CASE("delta: Ramanujan tau") {
    const QSeries d = delta(60);
    CHECK(d.lead() == 1);
    const long tau[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643};
    for (int n = 1; n <= 9; ++n) CHECK(d.coefficient(R(n)) == tau[n - 1]);
    auto e = oracle::euler_product(59);
    std::vector<oracle::Int> p24(59);
    p24[0] = 1;
    for (int k = 0; k < 24; ++k) p24 = oracle::poly_mul(p24, e, 59);
    for (int n = 1; n < 60; ++n) CHECK(d.coefficient(R(n)) == p24[static_cast<std::size_t>(n - 1)]);
    // (E4^3 - E6^2)/1728
    const QSeries e4 = eisenstein_classical(EisensteinIndex(2), 60);
    const QSeries e6 = eisenstein_classical(EisensteinIndex(3), 60);
    CHECK(R(1, 1728) * (e4 * e4 * e4 - e6 * e6) == d);
  }

  TEST_CASE("J function") {
    const QSeries j = moonshine_J(30);
    CHECK(j.lead() == -1);
    CHECK(j.coefficient(R(-1)) == 1);
    CHECK(j.coefficient(R(0)) == 0);
    CHECK(j.coefficient(R(1)) == 196884);
    CHECK(j.coefficient(R(2)) == 21493760);
    CHECK(j.coefficient(R(3)) == 864299970);
    const auto ref = oracle::j_function(31);
    for (int k = 0; k < 31; ++k) CHECK(j.coefficient(R(k - 1)) == ref[static_cast<std::size_t>(k)]);
  }
}
