#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "catcoh/abelian.hpp"
#include "catcoh/ccstruct.hpp"
#include "catcoh/fincat.hpp"
#include "catcoh/natsys.hpp"

namespace catcoh {

// Linear extension of the base of `coeff` by `coeff`: a total category whose
// fiber over each base morphism f is a torsor under D_f, composition bilinear
// over the actions. Fibers require finite D_f (enumerations are stored).
struct LinearExtension {
  NaturalSystem coeff;
  FinCategory total;
  std::vector<std::size_t> proj;                 // total morphism -> base morphism
  std::vector<std::size_t> pos_in_fiber;         // total morphism -> position
  std::vector<std::vector<std::size_t>> fiber;   // base morphism -> total morphisms
  std::vector<GroupEnumeration> enums;           // one per base morphism
  // action[f][elem index][fiber position] -> fiber position
  std::vector<std::vector<std::vector<std::size_t>>> action;

  const FinCategory& base() const { return coeff.base; }
  // The unique element moving `from` to `to` within the fiber of f.
  GroupEnumeration::Elem fiber_difference(std::size_t f, std::size_t to,
                                          std::size_t from) const;
};

struct ExtViolation {
  std::string what;
  std::string detail;
};

// Checks: total category axioms, identity on objects, functoriality and
// fullness of the projection, the torsor axioms per fiber, and the bilinear
// composition law (xi + f)(eta + g) = f_* eta + g^* xi + fg, exhaustively.
std::optional<ExtViolation> validate_extension(const LinearExtension& ext,
                                               std::size_t max_checks = 1000000);

// Normalized 2-cochain: one element of D_{l1 l2} per degree-2 nerve tuple,
// zero whenever either entry is an identity. Tuples in nerve order.
struct TwoCochain {
  std::vector<NerveTuple> tuples;
  std::vector<GroupEnumeration::Elem> values;
};

TwoCochain zero_cochain(const NaturalSystem& d);
bool cochain_is_zero(const LinearExtension& ext, const TwoCochain& c);
// Coboundary evaluated on all degree-3 tuples; true iff all vanish.
bool cocycle_condition(const NaturalSystem& d, const TwoCochain& c);
// c1 - c2 = delta(b) for some normalized 1-cochain b, decided by an integer
// linear solve (no enumeration).
bool cochains_cohomologous(const NaturalSystem& d, const TwoCochain& c1,
                           const TwoCochain& c2);

// The split extension with fibers D_f and zero cocycle.
LinearExtension trivial_extension(const FinCategory& c, const NaturalSystem& d);
// Total category with hom fibers D_f x {f} and composition twisted by c;
// requires c normalized with delta(c) = 0 (checked, InputError otherwise).
LinearExtension extension_of_cocycle(const NaturalSystem& d, const TwoCochain& c);

// c(f,g) = s(f) o s(g) - s(f o g) for the set-level lift s; identity lifts
// are forced to the identity morphisms, so the result is normalized and
// satisfies the cocycle condition.
TwoCochain cocycle_of(const LinearExtension& ext,
                      const std::optional<std::vector<std::size_t>>& lifts = std::nullopt);

// Backtracking search for a functorial section of the projection (identity
// lifts fixed); nullopt iff the extension does not split.
std::optional<FinFunctor> find_section(const LinearExtension& ext,
                                       std::size_t max_nodes = 1000000);

struct ClassifyResult {
  std::size_t classes = 0;
  std::size_t cocycles = 0;
  std::size_t coboundaries = 0;
  std::vector<TwoCochain> representatives;  // first cocycle of each class
};

// Enumerates all normalized 2-cochains, filters by the cocycle condition and
// quotients by coboundaries of normalized 1-cochains. The enumeration sizes
// are guarded. Count equals |H^2| by the classification bijection.
ClassifyResult classify(const NaturalSystem& d, std::size_t max_cochains = 1000000);

struct LiftResult {
  std::optional<CCStructure> structure;       // on ext.total when successful
  std::optional<StructureViolation> failure;  // violating cone otherwise
};

// Lifts the chosen structure of the base along the projection by choosing the
// basepoint in each relevant fiber, then re-validates on the total category.
// Succeeds exactly when the coefficient system is cartesian closed.
LiftResult cc_structure_lift(const LinearExtension& ext, const CCStructure& s);

}  // namespace catcoh
