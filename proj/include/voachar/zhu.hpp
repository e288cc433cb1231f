#pragma once

#include <cstdint>

#include "voachar/lattice.hpp"
#include "voachar/qseries.hpp"

namespace voachar {

/// c(wt, i, m): coefficient of z^i in (ln(1+z))^m (1+z)^(wt-1), so that
/// a[m] = sum_{i >= m} c(wt a, i, m) a(i).  Zero for i < m.
Rational bracket_coeff(std::int64_t wt, std::int64_t i, std::int64_t m);

/// Weight-one Heisenberg states u(-1)1, v(-1)1 for u, v in h = C (x) L.
struct HeisenbergPair {
  HeisenbergPair(EvenLattice lattice, RationalVector u, RationalVector v);
  EvenLattice lattice;
  RationalVector u;
  RationalVector v;
  Rational pairing;
};

/// pairing * sum sigma_1(n) q^n: the Fock-space trace of sum_{k>0} u(-k)v(k)
/// divided by the Fock character.
QSeries fock_quadratic_trace(const Rational& pairing, std::int64_t prec);

/// tr_M o(u) o(v) q^(L(0) - c/24) on the module M = M(1) (x) C[gamma + L].
QSeries lhs_trace(const HeisenbergPair& pair, const CosetRep& coset, std::int64_t prec);

enum class E2Mode { exact, constant_term };

/// Z_M(u[-1]v) - sum_k E_2k Z_M(u[2k-1]v).  With E2Mode::constant_term, E_2 is
/// replaced by -1/12 (a negative control).
QSeries rhs_trace(const HeisenbergPair& pair, const CosetRep& coset, std::int64_t prec,
                  E2Mode mode = E2Mode::exact);

bool verify_zhu_module(const HeisenbergPair& pair, const CosetRep& coset, std::int64_t prec,
                       E2Mode mode = E2Mode::exact);

/// Checks the identity on every module gamma + L of the lattice theory.
bool verify_zhu_identity(const HeisenbergPair& pair, std::int64_t prec);

}  // namespace voachar
