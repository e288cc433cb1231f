#include "voachar/expr.hpp"

#include <cctype>
#include <vector>

#include "voachar/error.hpp"

namespace voachar {

namespace {

constexpr std::string_view kTensorGlyph = "\xE2\x8A\x97";  // U+2297

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {
    // Column of each byte, counting UTF-8 code points.
    std::size_t col = 0;
    for (char ch : src_) {
      if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++col;
      cols_.push_back(col);
    }
    cols_.push_back(col + 1);
  }

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, cols_[pos_]); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t byte) const { throw ParseError(what, cols_[byte]); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_tensor() {
    skip_ws();
    if (accept('*')) return true;
    if (src_.substr(pos_, kTensorGlyph.size()) == kTensorGlyph) {
      pos_ += kTensorGlyph.size();
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr left = term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept_tensor()) break;
      ExprPtr right = term();
      left = make_expr(TensorNode{left, right}, cols_[at]);
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr base = atom();
    skip_ws();
    const std::size_t at = pos_;
    if (accept('^')) {
      const std::int64_t n = integer("exponent");
      if (n < 1) fail_at("exponent must be a positive integer", at + 1);
      base = make_expr(PowerNode{base, n}, cols_[at]);
    }
    return base;
  }

  std::int64_t integer(const std::string& what) {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected integer " + what);
    }
    try {
      return std::stoll(std::string(src_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail_at("integer " + what + " out of range", start);
    }
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= src_.size() || !is_ident_start(src_[pos_])) fail("expected a name");
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  std::vector<std::int64_t> int_args(const std::string& name, std::size_t arity, std::size_t name_at) {
    expect('(');
    std::vector<std::int64_t> args;
    skip_ws();
    if (!accept(')')) {
      for (;;) {
        args.push_back(integer("argument"));
        if (accept(')')) break;
        if (!accept(',')) fail("expected ',' or ')'");
      }
    }
    if (args.size() != arity)
      fail_at(name + " takes " + std::to_string(arity) + " argument" + (arity == 1 ? "" : "s") + ", got " +
                  std::to_string(args.size()),
              name_at);
    return args;
  }

  ExprPtr atom() {
    skip_ws();
    const std::size_t at = pos_;
    const std::size_t col = cols_[at];
    if (accept('(')) {
      ExprPtr inner = expr();
      expect(')');
      return inner;
    }
    if (pos_ >= src_.size()) fail("expected an atom");
    const std::string name = identifier();
    if (name == "Free") {
      const auto a = int_args(name, 1, at);
      return make_expr(FreeAtom{a[0]}, col);
    }
    if (name == "Vir") {
      const auto a = int_args(name, 2, at);
      return make_expr(VirAtom{a[0], a[1]}, col);
    }
    if (name == "Aff") {
      const auto a = int_args(name, 4, at);
      return make_expr(AffAtom{a[0], a[1], a[2], a[3]}, col);
    }
    if (name == "Moonshine") {
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == '(') fail("Moonshine takes no arguments");
      return make_expr(MoonshineAtom{}, col);
    }
    if (name == "Lat") {
      expect('(');
      skip_ws();
      LatAtom lat;
      if (pos_ < src_.size() && src_[pos_] == '"') {
        const std::size_t open = pos_++;
        const std::size_t close = src_.find('"', pos_);
        if (close == std::string_view::npos) fail_at("unterminated string", open);
        lat.name = std::string(src_.substr(pos_, close - pos_));
        lat.quoted = true;
        pos_ = close + 1;
      } else {
        lat.name = identifier();
      }
      expect(')');
      return make_expr(lat, col);
    }
    fail_at("unknown atom '" + name + "'", at);
  }

  std::string_view src_;
  std::vector<std::size_t> cols_;
  std::size_t pos_ = 0;
};

bool is_identifier(const std::string& s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

std::string context(const TheoryExpr& e) {
  std::string where = e.column ? "column " + std::to_string(e.column) + " " : "";
  return where + "(" + print_expr(e) + "): ";
}

template <class F>
Theory with_context(const TheoryExpr& e, F&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& ex) {
    throw InvalidArgument(context(e) + ex.what());
  } catch (const PrecisionError& ex) {
    throw PrecisionError(context(e) + ex.what());
  } catch (const ComputationError& ex) {
    throw ComputationError(context(e) + ex.what());
  }
}

}  // namespace

ExprPtr make_expr(decltype(TheoryExpr::node) node, std::size_t column) {
  return std::make_shared<const TheoryExpr>(TheoryExpr{std::move(node), column});
}

ExprPtr parse_expr(std::string_view src) { return Parser(src).parse(); }

std::string print_expr(const TheoryExpr& e) {
  struct Printer {
    std::string operator()(const FreeAtom& a) const { return "Free(" + std::to_string(a.n) + ")"; }
    std::string operator()(const LatAtom& a) const {
      return a.quoted || !is_identifier(a.name) ? "Lat(\"" + a.name + "\")" : "Lat(" + a.name + ")";
    }
    std::string operator()(const VirAtom& a) const {
      return "Vir(" + std::to_string(a.p) + "," + std::to_string(a.q) + ")";
    }
    std::string operator()(const MoonshineAtom&) const { return "Moonshine"; }
    std::string operator()(const AffAtom& a) const {
      return "Aff(" + std::to_string(a.dim) + "," + std::to_string(a.rank) + "," + std::to_string(a.h_dual) + "," +
             std::to_string(a.k) + ")";
    }
    std::string operator()(const TensorNode& t) const {
      const bool wrap = std::holds_alternative<TensorNode>(t.right->node);
      const std::string r = print_expr(*t.right);
      return print_expr(*t.left) + " * " + (wrap ? "(" + r + ")" : r);
    }
    std::string operator()(const PowerNode& p) const {
      const bool wrap =
          std::holds_alternative<TensorNode>(p.base->node) || std::holds_alternative<PowerNode>(p.base->node);
      const std::string b = print_expr(*p.base);
      return (wrap ? "(" + b + ")" : b) + "^" + std::to_string(p.n);
    }
  };
  return std::visit(Printer{}, e.node);
}

bool same_expr(const TheoryExpr& a, const TheoryExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* x = std::get_if<FreeAtom>(&a.node)) return x->n == std::get<FreeAtom>(b.node).n;
  if (const auto* x = std::get_if<LatAtom>(&a.node)) {
    const auto& y = std::get<LatAtom>(b.node);
    return x->name == y.name && x->quoted == y.quoted;
  }
  if (const auto* x = std::get_if<VirAtom>(&a.node)) {
    const auto& y = std::get<VirAtom>(b.node);
    return x->p == y.p && x->q == y.q;
  }
  if (std::holds_alternative<MoonshineAtom>(a.node)) return true;
  if (const auto* x = std::get_if<AffAtom>(&a.node)) {
    const auto& y = std::get<AffAtom>(b.node);
    return x->dim == y.dim && x->rank == y.rank && x->h_dual == y.h_dual && x->k == y.k;
  }
  if (const auto* x = std::get_if<TensorNode>(&a.node)) {
    const auto& y = std::get<TensorNode>(b.node);
    return same_expr(*x->left, *y.left) && same_expr(*x->right, *y.right);
  }
  const auto& x = std::get<PowerNode>(a.node);
  const auto& y = std::get<PowerNode>(b.node);
  return x.n == y.n && same_expr(*x.base, *y.base);
}

namespace {
Theory build(const TheoryExpr& e, std::int64_t prec, std::int64_t module_bound);
}  // namespace

Theory evaluate(const TheoryExpr& e, std::int64_t prec, std::int64_t module_bound) {
  Theory t = build(e, prec, module_bound);
  t.name = print_expr(e);
  return t;
}

namespace {

Theory build(const TheoryExpr& e, std::int64_t prec, std::int64_t module_bound) {
  if (const auto* t = std::get_if<TensorNode>(&e.node))
    return tensor(build(*t->left, prec, module_bound), build(*t->right, prec, module_bound), module_bound);
  if (const auto* p = std::get_if<PowerNode>(&e.node))
    return tensor_power(build(*p->base, prec, module_bound), p->n, module_bound);
  return with_context(e, [&]() -> Theory {
    if (const auto* a = std::get_if<FreeAtom>(&e.node)) return free_boson(a->n, prec);
    if (const auto* a = std::get_if<LatAtom>(&e.node))
      return lattice_theory(a->quoted ? load_gram_file(a->name) : named_lattice(a->name), prec);
    if (const auto* a = std::get_if<VirAtom>(&e.node)) return minimal_theory(a->p, a->q, prec);
    if (const auto* a = std::get_if<AffAtom>(&e.node)) return affine_unitary_theory(a->dim, a->rank, a->h_dual, a->k);
    return moonshine_theory(std::max<std::int64_t>(prec, 3));
  });
}

}  // namespace

}  // namespace voachar

namespace voachar {

const std::vector<CatalogEntry>& builtin_examples() {
  static const std::vector<CatalogEntry> table{
      {"a", "Moonshine", false, "holomorphic: l <= c = c~"},
      {"b", "Vir(3,4)", false, "unitary: c and all weights nonnegative"},
      {"c", "Lat(A1)", true, "l = c = c~ = rank L"},
      {"c", "Lat(E8)", true, "holomorphic lattice theory"},
      {"d", "Aff(3,1,2,1)", true, "sl2 level 1, isomorphic to Lat(A1)"},
      {"d", "Aff(3,1,2,2)", false, "sl2 level 2: c = 3/2"},
      {"d", "Aff(248,8,30,1)", true, "E8 level 1, isomorphic to Lat(E8)"},
      {"e", "Vir(2,5)", false, "nonunitary: lambda_min < 0"},
      {"e", "Vir(2,7)", false, "nonunitary"},
      {"e", "Vir(3,5)", false, "nonunitary"},
      {"e", "Vir(4,5)", false, "unitary"},
      {"f", "Vir(2,5)^60 * Moonshine^11", false,
       "c = l = 0 but c~ = 288 (additivity); the stated value 528 does not follow"},
  };
  return table;
}

}  // namespace voachar
