#pragma once

#include <cstddef>
#include <vector>

#include "catcoh/bwcoh.hpp"
#include "catcoh/ccstruct.hpp"
#include "catcoh/linext.hpp"
#include "catcoh/natsys.hpp"

namespace catcoh {

enum class DerFlavor { plain, lawvere, ccc };

// Solutions of the Leibniz system d(f o g) = f_* d(g) + g^* d(f) inside the
// ambient lattice ⊕_f D_f (slots in morphism-id order, matching C^1), with
// d(p1) = d(p2) = 0 added for lawvere and additionally d(ev) = 0 for ccc.
struct DerivationSpace {
  DerFlavor flavor = DerFlavor::plain;
  NaturalSystem coeff;
  FPAbelianGroup solutions;
  IntMatrix embedding;               // ambient-gencoord column per solution generator
  std::vector<std::size_t> slot;     // morphism index -> ambient offset
  std::size_t ambient_gens = 0;

  DerivationSpace() : solutions(zero_group()), embedding(0, 0) {}
};

DerivationSpace derivations(const NaturalSystem& d, DerFlavor flavor,
                            const CCStructure* s = nullptr);

// The section f -> (d(f), f) of the trivial extension determined by the
// solution-space element with the given coordinates.
FinFunctor derivation_to_section(const DerivationSpace& space,
                                 const std::vector<Int>& coords,
                                 const LinearExtension& trivial);

// Direct-sum test on a free category: ker delta^1 should decompose as the
// derivations plus the kernel classes vanishing on the designated generators.
struct DecompositionReport {
  bool intersection_trivial = false;
  bool spans = false;
  bool summands_contained = false;
  bool ok = false;
  InvariantFactors der_part, reduced_part, kernel;

  DecompositionReport()
      : der_part(invariant_factors(zero_group())),
        reduced_part(der_part),
        kernel(der_part) {}
};

DecompositionReport ker_delta1_decomposition(const NaturalSystem& d,
                                             const std::vector<std::size_t>& generators);

}  // namespace catcoh
