#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catcoh/abelian.hpp"
#include "catcoh/ccstruct.hpp"
#include "catcoh/fincat.hpp"

namespace catcoh {

// Natural system on a finite category: an abelian group D_f per morphism f,
// with pre-composition maps a^* : D_f -> D_{f o a} and post-composition maps
// b_* : D_f -> D_{b o f} for every composable pair. Functor laws are not
// enforced on construction; validate_natsys checks them exhaustively.
struct NaturalSystem {
  FinCategory base;
  std::vector<FPAbelianGroup> value;                          // per morphism
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> pre;   // (a, f)
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> post;  // (b, f)

  const FPAbelianGroup& group(std::size_t f) const { return value[f]; }
  bool has_pre(std::size_t a, std::size_t f) const { return pre.count({a, f}) != 0; }
  bool has_post(std::size_t b, std::size_t f) const { return post.count({b, f}) != 0; }
  // a^* : D_f -> D_{f o a}; requires tgt(a) = src(f).
  GroupHom pre_hom(std::size_t a, std::size_t f) const;
  // b_* : D_f -> D_{b o f}; requires tgt(f) = src(b).
  GroupHom post_hom(std::size_t b, std::size_t f) const;
};

struct NatSysViolation {
  std::string law;                // which family failed
  std::vector<std::size_t> mors;  // morphisms instantiating the failure
  std::string detail;
};

std::optional<NatSysViolation> validate_natsys(const NaturalSystem& d);

// All values g, all pre/post maps the identity.
NaturalSystem constant_system(const FinCategory& c, const FPAbelianGroup& g);
NaturalSystem zero_system(const FinCategory& c);

// One-object group category acting on a fixed module m: D_g = m for all g,
// post = action, pre = identity. The action is given on any generating set of
// morphisms and closed under composition; conflicts with the composition
// table (modulo m's relations) raise InputError, as do unreachable morphisms.
NaturalSystem from_group_module(const FinCategory& g, const FPAbelianGroup& m,
                                const std::map<std::string, IntMatrix>& generator_action);

// D(f) := D'(F f) with transported pre/post maps.
NaturalSystem pullback(const FinFunctor& f, const NaturalSystem& dprime);

// One verdict of the cartesian / cartesian-closed checks.
struct CartesianCheck {
  enum What { nullary, binary, exponential };
  What what;
  std::size_t mor;                             // the morphism examined
  std::pair<std::size_t, std::size_t> cone;    // product (a,b) / exponential (y,z) key
  bool ok;
  std::string detail;  // names the failing homomorphism when !ok
};

struct CartesianReport {
  bool overall = true;
  bool precondition_failed = false;  // cartesian-closed check on a non-cartesian system
  std::vector<CartesianCheck> checks;

  const CartesianCheck* first_failure() const;
};

// Nullary: D_f = 0 for every f into the chosen terminal. Binary: for every
// chosen product cone and every f into its object, (pi1_*, pi2_*) must be an
// isomorphism D_f -> D_{pi1 o f} + D_{pi2 o f}.
CartesianReport is_cartesian(const NaturalSystem& d, const CCStructure& s);

// For every chosen exponential (y, z) and every h : X -> Z^Y, the composite
//   D_h --pi1^*--> D_{h o pi1} --(cartesian iso)^-1 paired with 0--> D_{h x 1_Y}
//       --ev_*--> D_{ev o (h x 1_Y)}
// must be an isomorphism. Requires is_cartesian (the iso being inverted).
CartesianReport is_cartesian_closed(const NaturalSystem& d, const CCStructure& s);

}  // namespace catcoh
