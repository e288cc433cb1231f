// Random theory expressions and their invariants computed from closed formulas.
#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <type_traits>

#include "oracles.hpp"
#include "voachar/expr.hpp"

namespace exprgen {

using namespace voachar;

inline Rational R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline std::string gram_file() {
  static const std::string path = [] {
    const std::string p = (std::filesystem::temp_directory_path() / "voachar_test_a2.gram").string();
    std::ofstream(p) << "# A2 root lattice\n2\n2 -1\n-1 2\n";
    return p;
  }();
  return path;
}

// Test-side invariants (c, l, lambda_min) of an expression.
struct Inv {
  Rational c, l, lmin;
};

inline Inv invariants_of(const TheoryExpr& e) {
  return std::visit(
      [](const auto& n) -> Inv {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FreeAtom>) {
          return {R(n.n), R(n.n), R(0)};
        } else if constexpr (std::is_same_v<T, LatAtom>) {
          const long r = n.quoted ? 2 : (n.name == "E8" ? 8 : 1);
          return {R(r), R(r), R(0)};
        } else if constexpr (std::is_same_v<T, VirAtom>) {
          const long p = n.p, q = n.q;
          return {R(1) - R(6 * (p - q) * (p - q), p * q), R(0), R(1 - (p - q) * (p - q), 4 * p * q)};
        } else if constexpr (std::is_same_v<T, MoonshineAtom>) {
          return {R(24), R(0), R(0)};
        } else if constexpr (std::is_same_v<T, AffAtom>) {
          return {R(n.k * n.dim, n.k + n.h_dual), R(n.rank), R(0)};
        } else if constexpr (std::is_same_v<T, TensorNode>) {
          const Inv a = invariants_of(*n.left), b = invariants_of(*n.right);
          return {a.c + b.c, a.l + b.l, a.lmin + b.lmin};
        } else {
          const Inv a = invariants_of(*n.base);
          const Rational k = R(n.n);
          return {a.c * k, a.l * k, a.lmin * k};
        }
      },
      e.node);
}

inline ExprPtr random_expr(oracle::RandomSeries& g, int depth) {
  if (depth <= 1 || g.integer(0, 2) == 0) {
    switch (g.integer(0, 5)) {
      case 0:
        return make_expr(FreeAtom{g.integer(1, 3)});
      case 1:
        return make_expr(LatAtom{g.integer(0, 1) ? "A1" : "E8", false});
      case 2: {
        static const std::pair<int, int> pq[] = {{2, 3}, {2, 5}, {3, 4}, {2, 7}, {3, 5}, {4, 5}};
        const auto [p, q] = pq[g.integer(0, 5)];
        return make_expr(VirAtom{p, q});
      }
      case 3:
        return make_expr(MoonshineAtom{});
      case 4:
        return make_expr(AffAtom{3, 1, 2, g.integer(1, 4)});
      default:
        return make_expr(LatAtom{gram_file(), true});
    }
  }
  if (g.integer(0, 1) == 0) return make_expr(TensorNode{random_expr(g, depth - 1), random_expr(g, depth - 1)});
  return make_expr(PowerNode{random_expr(g, depth - 1), g.integer(1, 3)});
}

}  // namespace exprgen
