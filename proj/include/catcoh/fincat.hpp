#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catcoh/intmat.hpp"

namespace catcoh {

// Finite category as explicit tables: objects and morphisms carry string ids,
// composition is a dense nmor x nmor table (npos where not composable).
// Build with the add_* methods, then call finalize() once.
class FinCategory {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Mor {
    std::string id;
    std::size_t src = 0, tgt = 0;
  };

  std::size_t add_object(const std::string& id);
  std::size_t add_morphism(const std::string& id, const std::string& src,
                           const std::string& tgt);
  void set_identity(const std::string& obj, const std::string& mor);
  void set_compose(const std::string& g, const std::string& f, const std::string& gf);
  // Freezes the tables and builds lookups. Does not check the axioms; use
  // validate_category for that.
  void finalize();

  std::size_t nobj() const { return objects_.size(); }
  std::size_t nmor() const { return morphisms_.size(); }
  const std::string& object_id(std::size_t x) const { return objects_[x]; }
  const Mor& morphism(std::size_t m) const { return morphisms_[m]; }
  const std::string& morphism_id(std::size_t m) const { return morphisms_[m].id; }
  std::size_t src(std::size_t m) const { return morphisms_[m].src; }
  std::size_t tgt(std::size_t m) const { return morphisms_[m].tgt; }
  std::size_t identity_of(std::size_t obj) const { return identity_[obj]; }
  bool is_identity(std::size_t m) const;
  bool composable(std::size_t g, std::size_t f) const;
  // g o f; npos if undefined or not composable.
  std::size_t compose_raw(std::size_t g, std::size_t f) const {
    return table_[g * morphisms_.size() + f];
  }
  // g o f; throws InputError if not composable or missing from the table.
  std::size_t compose(std::size_t g, std::size_t f) const;
  std::size_t object_index(const std::string& id) const;
  std::size_t morphism_index(const std::string& id) const;
  bool has_object(const std::string& id) const { return obj_index_.count(id) != 0; }
  bool has_morphism(const std::string& id) const { return mor_index_.count(id) != 0; }
  const std::vector<std::size_t>& hom_set(std::size_t src, std::size_t tgt) const;
  bool finalized() const { return finalized_; }
  // Morphism indices ordered by id; used wherever deterministic order matters.
  const std::vector<std::size_t>& morphisms_by_id() const { return by_id_; }

 private:
  std::vector<std::string> objects_;
  std::vector<Mor> morphisms_;
  std::vector<std::size_t> identity_;
  std::vector<std::size_t> table_;
  std::map<std::string, std::size_t> obj_index_, mor_index_;
  std::vector<std::vector<std::size_t>> hom_;
  std::vector<std::size_t> by_id_;
  bool finalized_ = false;
};

// One witness of a failed category axiom.
struct CategoryViolation {
  enum Kind {
    missing_identity,
    identity_typing,
    missing_composite,
    composite_typing,
    left_unit,
    right_unit,
    associativity,
  };
  Kind kind;
  std::vector<std::size_t> mors;  // the morphisms (or object, for identities) involved
  std::string detail;
};

std::optional<CategoryViolation> validate_category(const FinCategory& c);

// Identity-on-objects functor data; also used for sections of extensions.
struct FinFunctor {
  FinCategory src, dst;
  std::vector<std::size_t> omap;  // src object -> dst object
  std::vector<std::size_t> mmap;  // src morphism -> dst morphism
};

// Functoriality check: typing, identities, composites. Returns a description
// of the first failure.
std::optional<std::string> validate_functor(const FinFunctor& f);
bool is_full(const FinFunctor& f);
bool is_faithful(const FinFunctor& f);
bool is_essentially_surjective(const FinFunctor& f);
// Full + faithful + essentially surjective.
bool is_equivalence(const FinFunctor& f);

// Factorization category FC: objects are the morphisms of c; a morphism
// f -> g is a pair (a, b) with b o f o a = g. Object ids are the morphism
// ids of c; morphism ids are "(a,b):f>g".
struct FactorizationCategory {
  FinCategory cat;
  // FC morphism index -> (a, b, from f, to g) as morphism indices of the base.
  struct Arrow {
    std::size_t a, b, from, to;
  };
  std::vector<Arrow> arrows;
  std::vector<std::size_t> object_to_base;  // FC object -> base morphism
};
FactorizationCategory factorization_category(const FinCategory& c);

// Composable tuple (l1, ..., ln) with tgt(l_{i+1}) = src(l_i); the composite
// is l1 o ... o ln. Degree 0 tuples have empty mors and composite = id_A.
struct NerveTuple {
  std::vector<std::size_t> mors;
  std::size_t composite = 0;
};

// All degree-n nerve tuples, sorted lexicographically by morphism id
// (by object id in degree 0). Throws LimitError past max_tuples.
std::vector<NerveTuple> nerve(const FinCategory& c, std::size_t degree,
                              std::size_t max_tuples = 1000000);

}  // namespace catcoh
