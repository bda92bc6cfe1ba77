#pragma once

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "catcoh/ccstruct.hpp"
#include "catcoh/fincat.hpp"
#include "catcoh/natsys.hpp"

namespace catcoh {

// One object, one identity.
FinCategory terminal_category();

// Objects v0 <= v1 <= ... <= v{n-1}; morphism "le_i_j" for each i <= j.
FinCategory chain_poset(std::size_t n);

// One object "x", morphisms "e" (identity), "g1", ..., "g{k-1}" composing as
// the cyclic group of order k.
FinCategory cyclic_group_category(std::size_t k);

// Heyting-algebra structure on the n-chain: meets as products, top terminal,
// implication as exponentials.
CCStructure chain_heyting_ccc(std::size_t n);

// The connected groupoid with `nobj` objects and all hom-sets the cyclic group
// of order k; equivalent to the one-object case via the inclusion at o0.
FinCategory group_clone_category(std::size_t k, std::size_t nobj);
FinFunctor group_clone_inclusion(std::size_t k, std::size_t nobj);

// Free category on an acyclic graph: morphisms are edge paths.
struct FreeCategory {
  FinCategory cat;
  std::vector<std::size_t> generators;  // morphism indices of the single edges
};
FreeCategory free_dag_category(std::size_t nobj,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// Small categories used by randomized property tests.
std::vector<FinCategory> small_category_catalog();

// D_f = M(tgt f) (+) N(src f) where M is the free (mod m if m > 0) abelian
// group on hom(a0, -) and N on hom(-, b0); post acts on the covariant part by
// postcomposition, pre on the contravariant part by precomposition.
NaturalSystem hom_functor_system(const FinCategory& c, std::size_t a0, std::size_t b0,
                                 long mod, bool covariant, bool contravariant);

// Replace each presentation by an equivalent one through random unimodular
// changes of generators; the system stays valid and its cohomology unchanged.
NaturalSystem unimodular_twist(const NaturalSystem& d, std::mt19937_64& rng,
                               int ops_per_group = 4);

NaturalSystem random_natural_system(const FinCategory& c, std::mt19937_64& rng);

// H^n of the cyclic group of order k acting on M through the generator action
// t, by the closed form for cyclic groups (kernels and images of t - 1 and of
// the norm 1 + t + ... + t^{k-1}).
InvariantFactors cyclic_group_cohomology(std::size_t k, const FPAbelianGroup& m,
                                         const IntMatrix& t, std::size_t n);

}  // namespace catcoh
