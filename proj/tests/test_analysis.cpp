#include <doctest.h>

#include <cmath>
#include <numbers>

#include "voachar/analysis.hpp"
#include "voachar/catalog.hpp"
#include "voachar/error.hpp"
#include "voachar/modforms.hpp"

using namespace voachar;
using cd = std::complex<double>;

namespace {

Rational R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

const std::vector<TauPoint> kPoints{{0.0, 1.0}, {0.0, 1.2}, {0.0, 1.5}, {0.3, 0.9}, {-0.2, 1.1}};

using Matrix = std::vector<std::vector<cd>>;

Matrix square(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix out(n, std::vector<cd>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i][j] += a[i][k] * a[k][j];
  return out;
}

// Distance from the nearest permutation matrix (greedy per row).
double permutation_defect(const Matrix& m) {
  double worst = 0.0;
  for (const auto& row : m) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (std::abs(row[j]) > std::abs(row[best])) best = j;
    for (std::size_t j = 0; j < row.size(); ++j) worst = std::max(worst, std::abs(row[j] - (j == best ? 1.0 : 0.0)));
  }
  return worst;
}

std::vector<QSeries> characters(const Theory& t, const std::vector<std::size_t>& order) {
  std::vector<QSeries> out;
  for (auto j : order) out.push_back(full_character(t, j));
  return out;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("eval basics") {
    const QSeries f = QSeries::from_terms({{R(0), R(1)}, {R(1), R(1)}}, R(2));
    const EvalResult r = eval(f, {0.0, 1.0}, 1e-3);
    CHECK(std::abs(r.value - cd(1.0 + std::exp(-2 * std::numbers::pi), 0)) < 1e-12);
    CHECK(r.value.real() == doctest::Approx(1.0018674).epsilon(1e-7));
    const EvalResult one = eval(QSeries::constant(1, R(50)), {0.31, 0.7});
    CHECK(one.value == cd(1.0, 0.0));
    const QSeries e = eta(200);
    CHECK(std::abs(eval(eta(60), {0, 1}).value - eval(e, {0, 1}).value) < 1e-10);
    CHECK_THROWS_AS(eval(eta(5), {0, 0.3}), PrecisionError);
    CHECK_THROWS_AS(TauPoint(0.0, 0.0), InvalidArgument);
  }

  TEST_CASE("eval tail bound is honest") {
    // Truncation at 30 versus the long sum: actual error below the reported bound.
    const QSeries p = partition_series(400);
    const TauPoint t{0.1, 0.6};
    const EvalResult lo = eval(p.truncated(R(60)), t, 1.0);
    const EvalResult hi = eval(p, t);
    CHECK(std::abs(lo.value - hi.value) <= lo.tail_bound);
  }

  TEST_CASE("eta, E2 and E4 transformation laws") {
    for (const auto& t : kPoints) {
      const double tol = t.im >= 1.0 ? 1e-8 : 1e-6;
      CHECK(check_eta_transform(t, 400) < tol);
      CHECK(check_e2_quasimodular(t, 400) < tol);
      CHECK(check_eisenstein_modular(2, t, 400) < tol);
      CHECK(check_eisenstein_modular(3, t, 400) < tol);
    }
    // E2 is not modular of weight 2: the defect at i is |i/(2 pi i)| = 1/(2 pi).
    const QSeries e2 = eisenstein(EisensteinIndex(1), 400);
    CHECK(modular_defect(e2, 2, {0, 1}) == doctest::Approx(1.0 / (2 * std::numbers::pi)).epsilon(1e-8));
  }

  TEST_CASE("S-matrix of Vir(3,4)") {
    const Theory t = minimal_theory(3, 4, 400);
    // Order the modules by weight 0, 1/2, 1/16.
    std::vector<std::size_t> order;
    for (const Rational w : {R(0), R(1, 2), R(1, 16)})
      for (std::size_t j = 0; j < t.modules.size(); ++j)
        if (t.modules[j].weight == w) order.push_back(j);
    const SMatrixEstimate s = extract_smatrix(characters(t, order), R(0));
    const double r = 1.0 / std::sqrt(2.0);
    const double expected[3][3] = {{0.5, 0.5, r}, {0.5, 0.5, -r}, {r, -r, 0}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(s.entries[i][j] - expected[i][j]) < 1e-4);
    CHECK(s.residual < 1e-6);
    CHECK(permutation_defect(square(s.entries)) < 1e-5);
  }

  TEST_CASE("S-matrix of Vir(2,5): involution, rows do not annihilate") {
    const Theory t = minimal_theory(2, 5, 400);
    const auto chars = characters(t, {0, 1});
    const SMatrixEstimate s = extract_smatrix(chars, R(0));
    CHECK(s.residual < 1e-6);
    CHECK(permutation_defect(square(s.entries)) < 1e-5);
    for (const auto& tau : default_samples(1, 4)) {
      for (std::size_t i = 0; i < 2; ++i) {
        cd sum = 0;
        for (std::size_t j = 0; j < 2; ++j) sum += s.entries[i][j] * eval(chars[j], tau).value;
        CHECK(std::abs(sum) > 1e-3);
      }
    }
  }

  TEST_CASE("holomorphic and constant cases") {
    const Theory e8 = lattice_theory(lattice_e8(), 60);
    const SMatrixEstimate s = extract_smatrix({full_character(e8, 0)}, R(0));
    REQUIRE(s.entries.size() == 1);
    CHECK(std::abs(s.entries[0][0] - cd(1, 0)) < 1e-6);
    CHECK(std::abs(std::abs(s.entries[0][0]) - 1.0) < 1e-6);
    const SMatrixEstimate c = extract_smatrix({QSeries::constant(1, R(50))}, R(0));
    CHECK(std::abs(c.entries[0][0] - cd(1, 0)) < 1e-12);
    // Theta of E8 = E4 is modular of weight 4.
    const SMatrixEstimate w = extract_smatrix({eisenstein_classical(EisensteinIndex(2), 400)}, R(4));
    CHECK(std::abs(w.entries[0][0] - cd(1, 0)) < 1e-6);
  }

  TEST_CASE("ill-conditioned samples are rejected") {
    const Theory t = minimal_theory(3, 4, 400);
    const std::vector<TauPoint> same(6, TauPoint(0.1, 1.0));
    CHECK_THROWS_WITH_AS(extract_smatrix(characters(t, {0, 1, 2}), R(0), same, default_samples(8, 2)),
                         doctest::Contains("ill-conditioned"), ComputationError);
  }

  TEST_CASE("growth: partitions are exponential in sqrt n") {
    const auto c = partition_series(2001).integer_steps(2001);
    const GrowthReport g = classify_growth(c);
    CHECK(g.model == GrowthModel::exponential_sqrt);
    const double hr = std::numbers::pi * std::sqrt(2.0 / 3.0);
    CHECK(std::abs(g.exponent_or_constant - hr) < 0.1 * hr);
    CHECK(g.points_used >= 20);
    CHECK(g.r_squared >= 0.0);
    CHECK(g.r_squared <= 1.0);
  }

  TEST_CASE("growth: theta of E8 is polynomial of degree about 3") {
    const auto c = eisenstein_classical(EisensteinIndex(2), 2000).integer_steps(2000);
    const GrowthReport g = classify_growth(c);
    CHECK(g.model == GrowthModel::polynomial);
    CHECK(g.exponent_or_constant >= 2.7);
    CHECK(g.exponent_or_constant <= 3.3);
  }

  TEST_CASE("growth: twisted minimal and lattice characters are polynomial") {
    const std::size_t terms = 1000;
    for (const Theory& t : {minimal_theory(3, 4, 1001), minimal_theory(2, 5, 1001), lattice_theory(lattice_a1(), 1001)}) {
      const Rational ct = effective_central_charge(t);
      for (std::size_t j = 0; j < t.modules.size(); ++j) {
        CAPTURE(t.name);
        CAPTURE(j);
        CHECK(classify_growth(twisted_coefficients(t, j, ct, terms)).model == GrowthModel::polynomial);
        CHECK(classify_growth(twisted_coefficients(t, j, ct - R(1, 2), terms)).model == GrowthModel::exponential_sqrt);
      }
    }
  }

  TEST_CASE("growth: generic vacuum character grows exponentially") {
    std::vector<Rational> c = partition_series(1001).integer_steps(1001);
    for (std::size_t n = c.size() - 1; n > 0; --n) c[n] -= c[n - 1];
    CHECK(classify_growth(c).model == GrowthModel::exponential_sqrt);
  }

  TEST_CASE("growth: insufficient data") {
    CHECK_THROWS_WITH_AS(classify_growth(std::vector<Rational>(39, Rational(1))), doctest::Contains("insufficient data"),
                         InvalidArgument);
    std::vector<Rational> sparse(100);
    for (std::size_t k = 0; k < 100; k += 10) sparse[k] = 1;
    CHECK_THROWS_AS(classify_growth(sparse), InvalidArgument);
    CHECK(to_string(GrowthModel::polynomial) == "polynomial");
  }
}
