#include "catcoh/der.hpp"

#include <set>
#include <string>

namespace catcoh {

namespace {

// Accumulate block at (row_off, slot_off) with the given sign.
void add_block(IntMatrix& into, const IntMatrix& block, std::size_t row_off,
               std::size_t col_off, int sign) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j)
      into.at(row_off + i, col_off + j) += sign * block.at(i, j);
}

struct Ambient {
  std::vector<std::size_t> slot;
  std::size_t gens = 0;
  IntMatrix relations;

  explicit Ambient(const NaturalSystem& d) : relations(0, 0) {
    const FinCategory& c = d.base;
    slot.assign(c.nmor(), 0);
    std::size_t rel_cols = 0;
    for (std::size_t f : c.morphisms_by_id()) {
      slot[f] = gens;
      gens += d.value[f].ngens;
      rel_cols += d.value[f].relations.cols();
    }
    relations = IntMatrix(gens, rel_cols);
    std::size_t coff = 0;
    for (std::size_t f : c.morphisms_by_id()) {
      add_block(relations, d.value[f].relations, slot[f], coff, 1);
      coff += d.value[f].relations.cols();
    }
  }
};

}  // namespace

DerivationSpace derivations(const NaturalSystem& d, DerFlavor flavor,
                            const CCStructure* s) {
  const FinCategory& c = d.base;
  if (flavor != DerFlavor::plain) {
    if (!s)
      throw InputError("derivations: structured flavor requires chosen structure");
    if (s->base.nmor() != c.nmor() || s->base.nobj() != c.nobj())
      throw InputError("derivations: structure is over a different category");
  }
  Ambient amb(d);

  // Structural morphisms whose value is constrained to vanish.
  std::vector<std::size_t> structural;
  if (flavor != DerFlavor::plain) {
    for (const auto& [key, cone] : s->products) {
      structural.push_back(cone.p1);
      structural.push_back(cone.p2);
    }
    if (flavor == DerFlavor::ccc)
      for (const auto& [key, cone] : s->exponentials) structural.push_back(cone.ev);
  }

  std::vector<NerveTuple> pairs = nerve(c, 2);
  std::size_t rows = 0, rel_cols = 0;
  for (const NerveTuple& t : pairs) {
    rows += d.value[t.composite].ngens;
    rel_cols += d.value[t.composite].relations.cols();
  }
  for (std::size_t m : structural) {
    rows += d.value[m].ngens;
    rel_cols += d.value[m].relations.cols();
  }

  IntMatrix a(rows, amb.gens), r(rows, rel_cols);
  std::size_t roff = 0, coff = 0;
  for (const NerveTuple& t : pairs) {
    std::size_t l1 = t.mors[0], l2 = t.mors[1], comp = t.composite;
    std::size_t n = d.value[comp].ngens;
    // d(l1 o l2) - l1_* d(l2) - l2^* d(l1) = 0 in D_{l1 l2}.
    add_block(a, IntMatrix::identity(n), roff, amb.slot[comp], 1);
    add_block(a, d.post.at({l1, l2}), roff, amb.slot[l2], -1);
    add_block(a, d.pre.at({l2, l1}), roff, amb.slot[l1], -1);
    add_block(r, d.value[comp].relations, roff, coff, 1);
    roff += n;
    coff += d.value[comp].relations.cols();
  }
  for (std::size_t m : structural) {
    std::size_t n = d.value[m].ngens;
    add_block(a, IntMatrix::identity(n), roff, amb.slot[m], 1);
    add_block(r, d.value[m].relations, roff, coff, 1);
    roff += n;
    coff += d.value[m].relations.cols();
  }

  DerivationSpace space;
  space.flavor = flavor;
  space.coeff = d;
  space.slot = amb.slot;
  space.ambient_gens = amb.gens;
  space.embedding = colspan_preimage(a, r);
  space.solutions = subquotient_presentation(space.embedding, amb.relations);
  return space;
}

FinFunctor derivation_to_section(const DerivationSpace& space,
                                 const std::vector<Int>& coords,
                                 const LinearExtension& trivial) {
  const FinCategory& c = space.coeff.base;
  if (coords.size() != space.solutions.ngens)
    throw InputError("derivation_to_section: coordinate vector has wrong length");
  if (trivial.coeff.base.nmor() != c.nmor() || trivial.coeff.base.nobj() != c.nobj())
    throw InputError("derivation_to_section: extension is over a different category");
  std::vector<Int> v = mul(space.embedding, coords);
  FinFunctor sec;
  sec.src = c;
  sec.dst = trivial.total;
  sec.omap.resize(c.nobj());
  for (std::size_t x = 0; x < c.nobj(); ++x) sec.omap[x] = x;
  sec.mmap.resize(c.nmor());
  for (std::size_t f = 0; f < c.nmor(); ++f) {
    std::vector<Int> val(space.coeff.value[f].ngens);
    for (std::size_t i = 0; i < val.size(); ++i) val[i] = v[space.slot[f] + i];
    const GroupEnumeration& e = trivial.enums[f];
    sec.mmap[f] = trivial.fiber[f][e.index_of(e.reduce(val))];
  }
  return sec;
}

DecompositionReport ker_delta1_decomposition(const NaturalSystem& d,
                                             const std::vector<std::size_t>& generators) {
  const FinCategory& c = d.base;
  std::set<std::size_t> genset;
  for (std::size_t g : generators) {
    if (g >= c.nmor() || c.is_identity(g))
      throw InputError("ker_delta1_decomposition: invalid generator");
    if (!genset.insert(g).second)
      throw InputError("ker_delta1_decomposition: duplicate generator");
  }
  // Every non-identity morphism must factor through the generators in exactly
  // one way; identities only as the empty path.
  {
    std::vector<int> state(c.nmor(), 0);
    std::vector<unsigned long> ways(c.nmor(), 0);
    auto count = [&](auto&& self, std::size_t m) -> unsigned long {
      if (state[m] == 1)
        throw InputError("ker_delta1_decomposition: category is not free on the "
                         "designated generators (cyclic factorization at '" +
                         c.morphism_id(m) + "')");
      if (state[m] == 2) return ways[m];
      state[m] = 1;
      unsigned long w = c.is_identity(m) ? 1 : 0;
      for (std::size_t g : generators) {
        if (c.tgt(g) != c.tgt(m)) continue;
        for (std::size_t rest = 0; rest < c.nmor(); ++rest)
          if (c.composable(g, rest) && c.compose(g, rest) == m) {
            w += self(self, rest);
            if (w > 1000000)
              throw InputError("ker_delta1_decomposition: factorization count "
                               "explodes; category is not free");
          }
      }
      state[m] = 2;
      ways[m] = w;
      return w;
    };
    for (std::size_t m = 0; m < c.nmor(); ++m)
      if (count(count, m) != 1)
        throw InputError("ker_delta1_decomposition: '" + c.morphism_id(m) +
                         "' has " + std::to_string(ways[m]) +
                         " generator factorizations; category is not free on the "
                         "designated generators");
  }

  BWComplex bw = bw_complex(d, 2);
  const IntMatrix& delta1 = bw.cx.differentials[1].matrix;
  const IntMatrix& r_c1 = bw.cx.groups[1].relations;
  const IntMatrix& r_c2 = bw.cx.groups[2].relations;

  IntMatrix k1 = colspan_preimage(delta1, r_c2);

  DerivationSpace der = derivations(d, DerFlavor::plain);
  const IntMatrix& kd = der.embedding;

  // Kernel classes vanishing on the generators: stack selector rows under delta^1.
  std::size_t extra = 0, extra_rel = 0;
  for (std::size_t g : generators) {
    extra += d.value[g].ngens;
    extra_rel += d.value[g].relations.cols();
  }
  IntMatrix a0(delta1.rows() + extra, delta1.cols());
  IntMatrix r0(delta1.rows() + extra, r_c2.cols() + extra_rel);
  for (std::size_t i = 0; i < delta1.rows(); ++i)
    for (std::size_t j = 0; j < delta1.cols(); ++j) a0.at(i, j) = delta1.at(i, j);
  for (std::size_t i = 0; i < r_c2.rows(); ++i)
    for (std::size_t j = 0; j < r_c2.cols(); ++j) r0.at(i, j) = r_c2.at(i, j);
  {
    std::size_t roff = delta1.rows(), coff = r_c2.cols();
    for (std::size_t g : generators) {
      std::size_t n = d.value[g].ngens;
      for (std::size_t i = 0; i < n; ++i) a0.at(roff + i, der.slot[g] + i) = 1;
      for (std::size_t i = 0; i < d.value[g].relations.rows(); ++i)
        for (std::size_t j = 0; j < d.value[g].relations.cols(); ++j)
          r0.at(roff + i, coff + j) = d.value[g].relations.at(i, j);
      roff += n;
      coff += d.value[g].relations.cols();
    }
  }
  IntMatrix k0 = colspan_preimage(a0, r0);

  DecompositionReport rep;
  rep.der_part = invariant_factors(subquotient_presentation(kd, r_c1));
  rep.reduced_part = invariant_factors(subquotient_presentation(k0, r_c1));
  rep.kernel = invariant_factors(subquotient_presentation(k1, r_c1));

  IntMatrix meet =
      colspan_intersection(hstack(kd, r_c1), hstack(k0, r_c1));
  rep.intersection_trivial = is_trivial_group(subquotient_presentation(meet, r_c1));
  rep.spans = colspan_contains(hstack(hstack(kd, k0), r_c1), k1);
  rep.summands_contained = colspan_contains(hstack(k1, r_c1), kd) &&
                           colspan_contains(hstack(k1, r_c1), k0);
  rep.ok = rep.intersection_trivial && rep.spans && rep.summands_contained;
  return rep;
}

}  // namespace catcoh
