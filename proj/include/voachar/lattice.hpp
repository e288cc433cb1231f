#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "voachar/qseries.hpp"

namespace voachar {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using RationalVector = std::vector<Rational>;

/// Even positive-definite lattice given by the Gram matrix of a basis.
class EvenLattice {
 public:
  /// Throws InvalidArgument: "not square", "not symmetric", "odd diagonal",
  /// "not positive definite".
  static EvenLattice validate(IntMatrix gram, std::string name = "");

  std::size_t rank() const { return gram_.size(); }
  const IntMatrix& gram() const { return gram_; }
  const Integer& determinant() const { return det_; }
  const std::string& name() const { return name_; }

  /// Gram pairing u^T G v of coordinate vectors.
  Rational pairing(const RationalVector& u, const RationalVector& v) const;

 private:
  IntMatrix gram_;
  Integer det_;
  std::string name_;
};

EvenLattice lattice_a1();
/// E8 root lattice, Cartan-matrix Gram in Bourbaki labelling.
EvenLattice lattice_e8();
/// Block-diagonal direct sum.
EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b);

/// Named built-ins ("A1", "E8"); throws InvalidArgument for unknown names.
EvenLattice named_lattice(std::string_view name);

/// Gram file text: first line the rank r, then r lines of r integers;
/// '#' starts a comment.
EvenLattice parse_gram(std::string_view text, std::string name = "");
EvenLattice load_gram_file(const std::string& path);

/// Element gamma of the dual lattice modulo L, in L-basis coordinates in [0, 1).
struct CosetRep {
  RationalVector coords;
  Rational min_norm;  // min (alpha, alpha) over alpha in gamma + L
};

CosetRep zero_coset(const EvenLattice& lattice);

/// One representative per class of L°/L, sorted by (min_norm, coords);
/// the zero coset comes first.  Throws InvalidArgument("discriminant too
/// large") when det > bound.
std::vector<CosetRep> discriminant_cosets(const EvenLattice& lattice, std::int64_t bound = 10000);

/// sum over alpha in gamma + L with (alpha,alpha)/2 < prec of q^((alpha,alpha)/2).
QSeries coset_theta(const EvenLattice& lattice, const CosetRep& coset, std::int64_t prec);
QSeries theta(const EvenLattice& lattice, std::int64_t prec);

/// sum <u,alpha><v,alpha> q^((alpha,alpha)/2), pairing through the Gram form.
QSeries weighted_theta(const EvenLattice& lattice, const CosetRep& coset, const RationalVector& u,
                       const RationalVector& v, std::int64_t prec);
QSeries weighted_theta(const EvenLattice& lattice, const RationalVector& u, const RationalVector& v,
                       std::int64_t prec);

/// Calls visit(alpha coordinates, (alpha,alpha)) for every alpha in gamma + L
/// with (alpha,alpha) <= max_norm.  Exact: the enumeration bounds are integral.
void for_each_vector(const EvenLattice& lattice, const CosetRep& coset, const Rational& max_norm,
                     const std::function<void(const RationalVector&, const Rational&)>& visit);

}  // namespace voachar
