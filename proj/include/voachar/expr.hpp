#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "voachar/catalog.hpp"

namespace voachar {

struct TheoryExpr;
using ExprPtr = std::shared_ptr<const TheoryExpr>;

struct FreeAtom {
  std::int64_t n;
};
struct LatAtom {
  std::string name;  // built-in name, or a Gram file path when quoted
  bool quoted = false;
};
struct VirAtom {
  std::int64_t p, q;
};
struct MoonshineAtom {};
struct AffAtom {
  std::int64_t dim, rank, h_dual, k;
};
struct TensorNode {
  ExprPtr left, right;
};
struct PowerNode {
  ExprPtr base;
  std::int64_t n;
};

struct TheoryExpr {
  std::variant<FreeAtom, LatAtom, VirAtom, MoonshineAtom, AffAtom, TensorNode, PowerNode> node;
  std::size_t column = 0;  // 1-based start column in the source, 0 when synthesized
};

ExprPtr make_expr(decltype(TheoryExpr::node) node, std::size_t column = 0);

/// expr := term (('*' | '⊗') term)*, term := atom ('^' INT)?,
/// atom := NAME '(' args ')' | NAME | '(' expr ')'.  Throws ParseError.
ExprPtr parse_expr(std::string_view src);

/// Canonical text that parses back to the same tree.
std::string print_expr(const TheoryExpr& e);

/// Structural equality, ignoring source columns.
bool same_expr(const TheoryExpr& a, const TheoryExpr& b);

/// Builds the catalog theory; constructor errors are rethrown with the
/// column of the offending atom.
Theory evaluate(const TheoryExpr& e, std::int64_t prec, std::int64_t module_bound = default_module_bound());

}  // namespace voachar

namespace voachar {

/// One row of the built-in table of standard examples.
struct CatalogEntry {
  std::string label;       // example tag, "a" .. "f"
  std::string expression;  // parseable theory expression
  bool lattice_voa;        // known to be isomorphic to some V_L
  std::string note;
};

const std::vector<CatalogEntry>& builtin_examples();

}  // namespace voachar
