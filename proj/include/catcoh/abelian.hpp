#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "catcoh/intmat.hpp"

namespace catcoh {

// Finitely presented abelian group Z^ngens / colspan(relations).
// relations always has ngens rows; zero columns are allowed and harmless.
struct FPAbelianGroup {
  std::size_t ngens = 0;
  IntMatrix relations;  // ngens x (any)

  FPAbelianGroup() : relations(0, 0) {}
  FPAbelianGroup(std::size_t n, IntMatrix rels) : ngens(n), relations(std::move(rels)) {
    if (relations.rows() != ngens) throw InputError("group: relation rows != ngens");
  }
};

FPAbelianGroup zero_group();
FPAbelianGroup free_abelian_group(std::size_t rank);
FPAbelianGroup cyclic_group(const Int& order);  // Z/order; order 0 gives Z

// Canonical invariants: free rank plus torsion factors d1 | d2 | ..., di >= 2.
struct InvariantFactors {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  // Order of a finite group; meaningless when free_rank > 0.
  Int order() const;
  bool operator==(const InvariantFactors& o) const = default;
};

InvariantFactors invariant_factors(const FPAbelianGroup& g);
// "0", "Z^r", "Z/d1 + Z/d2", "Z^r + Z/d1 + ..."; factors in divisibility order.
std::string format_group(const InvariantFactors& inv);
std::string format_group(const FPAbelianGroup& g);
bool is_trivial_group(const FPAbelianGroup& g);

// Homomorphism src -> dst given by a matrix on generators.
struct GroupHom {
  FPAbelianGroup src, dst;
  IntMatrix matrix;  // dst.ngens x src.ngens
};

// Well-defined iff every src relation maps into the dst relation lattice.
bool hom_well_defined(const FPAbelianGroup& src, const FPAbelianGroup& dst,
                      const IntMatrix& matrix);
// Checked constructor; throws InputError if shapes or well-definedness fail.
GroupHom make_hom(const FPAbelianGroup& src, const FPAbelianGroup& dst, IntMatrix matrix);
GroupHom identity_hom(const FPAbelianGroup& g);
GroupHom zero_hom(const FPAbelianGroup& src, const FPAbelianGroup& dst);
GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f
GroupHom add(const GroupHom& a, const GroupHom& b);
GroupHom negate_hom(const GroupHom& a);
// Equality of maps, i.e. matrices agree columnwise modulo dst relations.
bool hom_equal(const GroupHom& a, const GroupHom& b);
bool is_zero_hom(const GroupHom& a);
bool is_isomorphism(const GroupHom& h);
// Inverse of an isomorphism; throws InputError if h is not one.
GroupHom hom_inverse(const GroupHom& h);

struct DirectSum {
  FPAbelianGroup group;
  std::vector<GroupHom> inclusions;   // summand -> sum
  std::vector<GroupHom> projections;  // sum -> summand
};
DirectSum direct_sum(const std::vector<FPAbelianGroup>& parts);
// Just the sum; each hom in DirectSum copies the whole sum group, so with
// many parts the full structure is quadratic in memory.
FPAbelianGroup direct_sum_group(const std::vector<FPAbelianGroup>& parts);

// Cochain complex concentrated in degrees 0..groups.size()-1; degrees outside
// that range are zero groups. differentials[n] : groups[n] -> groups[n+1].
struct CochainComplex {
  std::vector<FPAbelianGroup> groups;
  std::vector<GroupHom> differentials;
};

// Checks shapes, well-definedness and d(n+1) o d(n) = 0; throws InputError.
CochainComplex make_complex(std::vector<FPAbelianGroup> groups,
                            std::vector<GroupHom> differentials);

// Presents span(gens) / span(kill) inside Z^N, where the columns of kill must
// lie in the span of the columns of gens.
FPAbelianGroup subquotient_presentation(const IntMatrix& gens, const IntMatrix& kill);

// ker d^degree / im d^(degree-1); out-of-range degrees give the zero group.
FPAbelianGroup cohomology_at(const CochainComplex& cx, std::size_t degree);

// Coordinates for the elements of a finite f.p. group: one slot per cyclic
// invariant factor >= 2. Construction throws InputError on an infinite group
// and LimitError when the order exceeds the cap.
class GroupEnumeration {
 public:
  using Elem = std::vector<long>;

  explicit GroupEnumeration(const FPAbelianGroup& g, unsigned long order_cap = 1000000);

  const FPAbelianGroup& group() const { return group_; }
  std::size_t order() const { return order_; }
  std::size_t torsion_slots() const { return moduli_.size(); }

  Elem zero_elem() const { return Elem(moduli_.size(), 0); }
  Elem add(const Elem& a, const Elem& b) const;
  Elem negate(const Elem& a) const;
  Elem sub(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;

  std::size_t index_of(const Elem& e) const;  // mixed-radix rank
  Elem element(std::size_t index) const;

  // Generator coordinates -> canonical coordinates (quotient map).
  Elem reduce(const std::vector<Int>& gencoords) const;
  // Canonical coordinates -> one representative in Z^ngens.
  std::vector<Int> lift(const Elem& e) const;

 private:
  FPAbelianGroup group_;
  std::vector<long> moduli_;        // invariant factors >= 2
  std::vector<std::size_t> slots_;  // rows of the Smith form carrying them
  IntMatrix u_, uinv_;
  std::size_t order_ = 1;
};

// Image of e under h, in canonical coordinates of the two enumerations.
GroupEnumeration::Elem apply_hom(const GroupEnumeration& src, const GroupEnumeration& dst,
                                 const GroupHom& h, const GroupEnumeration::Elem& e);

}  // namespace catcoh
