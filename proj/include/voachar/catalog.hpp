#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voachar/lattice.hpp"
#include "voachar/qseries.hpp"

namespace voachar {

/// A simple module: conformal weight and graded dimensions from q^0.
struct ModuleChar {
  Rational weight;
  QSeries dims;
};

struct TheoryFlags {
  bool rational = true;
  bool strong_cft = true;
  bool nontrivial = true;
};

/// Catalog record for a VOA: invariants plus, when known, its simple modules.
struct Theory {
  std::string name;
  Rational c;
  std::int64_t lie_rank = 0;
  /// Empty for invariants-only theories.
  std::vector<ModuleChar> modules;
  /// Number of simple modules when known (may exceed what is enumerated).
  std::optional<Integer> module_count;
  std::optional<Rational> lambda_min;
  TheoryFlags flags;
  std::size_t vacuum_index = 0;
  /// Character of the vacuum space Omega_V of the Heisenberg decomposition.
  std::optional<QSeries> vacuum_space;

  bool invariants_only() const { return modules.empty(); }
};

/// VOACHAR_MODULE_BOUND when set and valid, else 10^4.
std::int64_t default_module_bound();

Theory trivial_theory(std::int64_t prec);
Theory free_boson(std::int64_t l, std::int64_t prec);
Theory lattice_theory(const EvenLattice& lattice, std::int64_t prec);
Theory minimal_theory(std::int64_t p, std::int64_t q, std::int64_t prec);
Theory moonshine_theory(std::int64_t prec);
Theory affine_unitary_theory(std::int64_t dim_g, std::int64_t rank_g, std::int64_t h_dual, std::int64_t k);

/// Modules are enumerated only when both sides are full and the pair count
/// stays within module_bound; otherwise the result is invariants-only.
Theory tensor(const Theory& a, const Theory& b, std::int64_t module_bound = default_module_bound());
Theory tensor_power(const Theory& a, std::int64_t n, std::int64_t module_bound = default_module_bound());

/// c - 24 lambda_min.  Throws InvalidArgument("weights unknown").
Rational effective_central_charge(const Theory& t);

struct RankBoundReport {
  bool applicable = false;  // only rational theories are checked
  bool holds = false;
  Rational lie_rank;
  Rational c_tilde;
  bool c_tilde_positive = false;
};

RankBoundReport check_rank_bound(const Theory& t);

/// c~ = l = c.
bool check_lattice_characterization(const Theory& t);

/// shift(dims_j, lambda_j - c/24).  Throws InvalidArgument("invariants-only theory").
QSeries full_character(const Theory& t, std::size_t j);

/// The two sides of eta^c~ Z_V = q^((l-c)/24) eta^(c~-l) ch Omega.
struct VacuumIdentity {
  QSeries lhs;
  QSeries rhs;
};
VacuumIdentity vacuum_identity_sides(const Theory& t);
/// Exact comparison of both sides over a relative range of at least prec.
/// Throws InvalidArgument("no vacuum-space decomposition known") and
/// PrecisionError when the theory was built at too low a precision.
bool verify_vacuum_identity(const Theory& t, std::int64_t prec);

/// eta(q)^x = q^(x/24) phi^x for rational x, trusted to relative precision prec.
QSeries eta_power(const Rational& x, std::int64_t prec);

}  // namespace voachar
