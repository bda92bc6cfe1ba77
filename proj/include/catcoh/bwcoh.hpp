#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "catcoh/abelian.hpp"
#include "catcoh/fincat.hpp"
#include "catcoh/natsys.hpp"

namespace catcoh {

// Baues-Wirsching cochain complex of (base of d, d) up to degree nmax:
// C^n = direct sum over degree-n nerve tuples of D_{composite}, with
// C^0 indexed by objects carrying D_{id_A}. Tuples are ordered
// lexicographically by morphism id (object id in degree 0).
struct BWComplex {
  NaturalSystem coeff;
  std::size_t nmax = 0;
  std::vector<std::vector<NerveTuple>> tuples;        // per degree 0..nmax
  std::vector<std::vector<std::size_t>> offsets;      // generator offset per tuple
  CochainComplex cx;                                  // groups + differentials
};

// Builds the complex and verifies d o d = 0. The projected total generator
// count across degrees is capped (LimitError beyond max_generators).
BWComplex bw_complex(const NaturalSystem& d, std::size_t nmax,
                     std::size_t max_generators = 1000000);

// H^n; builds the complex through degree n+1 so the kernel of d^n is honest.
FPAbelianGroup bw_cohomology(const NaturalSystem& d, std::size_t degree,
                             std::size_t max_generators = 1000000);
// H^0..H^maxdeg from one complex of depth maxdeg+1.
std::vector<FPAbelianGroup> bw_cohomology_range(const NaturalSystem& d,
                                                std::size_t maxdeg,
                                                std::size_t max_generators = 1000000);

// H^0 computed directly as the equalizer
//   {x in prod_A D_{id_A} : lambda_* x_A = lambda^* x_B for all lambda: A -> B},
// independent of the complex assembly; used as a cross-check.
FPAbelianGroup bw_h0_equalizer(const NaturalSystem& d);

struct EquivalenceInvarianceReport {
  bool equal = true;
  std::vector<InvariantFactors> pulled_back;  // H^n of (src, pullback coefficients)
  std::vector<InvariantFactors> original;     // H^n of (dst, given coefficients)
};

// Requires f to be an equivalence (checked; InputError otherwise); compares
// invariant factors of H^n(src, pullback(f, d)) and H^n(dst, d) for n <= nmax.
EquivalenceInvarianceReport equivalence_invariance_check(const FinFunctor& f,
                                                         const NaturalSystem& d,
                                                         std::size_t nmax);

}  // namespace catcoh
