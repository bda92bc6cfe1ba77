#include "catcoh/bwcoh.hpp"

#include <map>

namespace catcoh {

namespace {

// Writes the block src_off/dst_off of `into` from `block`, scaled by sign.
void add_block(IntMatrix& into, const IntMatrix& block, std::size_t dst_off,
               std::size_t src_off, int sign) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) {
      if (sign > 0)
        into.at(dst_off + i, src_off + j) += block.at(i, j);
      else
        into.at(dst_off + i, src_off + j) -= block.at(i, j);
    }
}

}  // namespace

BWComplex bw_complex(const NaturalSystem& d, std::size_t nmax,
                     std::size_t max_generators) {
  const FinCategory& c = d.base;
  if (nmax < 1) throw InputError("bw_complex: nmax must be at least 1");
  BWComplex bw;
  bw.coeff = d;
  bw.nmax = nmax;

  std::size_t total_gens = 0;
  std::vector<FPAbelianGroup> groups;
  for (std::size_t n = 0; n <= nmax; ++n) {
    bw.tuples.push_back(nerve(c, n, max_generators));
    std::vector<std::size_t> offs;
    std::size_t off = 0;
    std::vector<FPAbelianGroup> parts;
    for (const NerveTuple& t : bw.tuples[n]) {
      offs.push_back(off);
      off += d.value[t.composite].ngens;
      parts.push_back(d.value[t.composite]);
    }
    total_gens += off;
    if (total_gens > max_generators)
      throw LimitError("bw_complex: projected generator count " +
                       std::to_string(total_gens) + " exceeds cap of " +
                       std::to_string(max_generators));
    bw.offsets.push_back(std::move(offs));
    groups.push_back(direct_sum_group(parts));
  }

  // Tuple lookup per degree: by morphism list for n >= 1, by object for n = 0.
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(nmax + 1);
  std::vector<std::size_t> object_slot(c.nobj());
  for (std::size_t i = 0; i < bw.tuples[0].size(); ++i)
    object_slot[c.src(bw.tuples[0][i].composite)] = i;
  for (std::size_t n = 1; n <= nmax; ++n)
    for (std::size_t i = 0; i < bw.tuples[n].size(); ++i) index[n][bw.tuples[n][i].mors] = i;

  auto slot_of = [&](std::size_t n, const std::vector<std::size_t>& mors,
                     std::size_t object) -> std::size_t {
    return n == 0 ? object_slot[object] : index[n].at(mors);
  };

  std::vector<GroupHom> diffs;
  for (std::size_t n = 0; n < nmax; ++n) {
    IntMatrix m(groups[n + 1].ngens, groups[n].ngens);
    for (std::size_t ti = 0; ti < bw.tuples[n + 1].size(); ++ti) {
      const NerveTuple& t = bw.tuples[n + 1][ti];
      std::size_t row = bw.offsets[n + 1][ti];
      // Face 0 drops l1; the coefficient map is (l1)_* on D of the rest.
      std::vector<std::size_t> rest(t.mors.begin() + 1, t.mors.end());
      std::size_t rest_comp =
          n == 0 ? c.identity_of(c.src(t.mors[0]))
                 : [&] {
                     std::size_t comp = rest.back();
                     for (std::size_t i = rest.size() - 1; i-- > 0;)
                       comp = c.compose(rest[i], comp);
                     return comp;
                   }();
      std::size_t s0 = slot_of(n, rest, c.src(t.mors[0]));
      add_block(m, d.post.at({t.mors[0], rest_comp}), row, bw.offsets[n][s0], +1);
      // Inner faces compose adjacent entries; composite unchanged, so the
      // coefficient map is the identity, with sign (-1)^i.
      for (std::size_t i = 1; i <= n; ++i) {
        // Entries before i-1, then the composite of slots i-1 and i, then the rest.
        std::vector<std::size_t> inner;
        inner.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i - 1)
            inner.push_back(c.compose(t.mors[i - 1], t.mors[i]));
          else if (j < i - 1)
            inner.push_back(t.mors[j]);
          else
            inner.push_back(t.mors[j + 1]);
        }
        std::size_t si = slot_of(n, inner, 0);
        IntMatrix ident = IntMatrix::identity(d.value[t.composite].ngens);
        add_block(m, ident, row, bw.offsets[n][si], i % 2 == 0 ? +1 : -1);
      }
      // Last face drops l_{n+1}; the map is (l_{n+1})^* with sign (-1)^{n+1}.
      std::vector<std::size_t> front(t.mors.begin(), t.mors.end() - 1);
      std::size_t front_comp =
          n == 0 ? c.identity_of(c.tgt(t.mors[0]))
                 : [&] {
                     std::size_t comp = front.back();
                     for (std::size_t i = front.size() - 1; i-- > 0;)
                       comp = c.compose(front[i], comp);
                     return comp;
                   }();
      std::size_t sl = slot_of(n, front, c.tgt(t.mors[0]));
      add_block(m, d.pre.at({t.mors[n], front_comp}), row, bw.offsets[n][sl],
                (n + 1) % 2 == 0 ? +1 : -1);
    }
    diffs.push_back(GroupHom{groups[n], groups[n + 1], std::move(m)});
  }
  bw.cx = make_complex(std::move(groups), std::move(diffs));
  return bw;
}

FPAbelianGroup bw_cohomology(const NaturalSystem& d, std::size_t degree,
                             std::size_t max_generators) {
  BWComplex bw = bw_complex(d, degree + 1, max_generators);
  return cohomology_at(bw.cx, degree);
}

std::vector<FPAbelianGroup> bw_cohomology_range(const NaturalSystem& d,
                                                std::size_t maxdeg,
                                                std::size_t max_generators) {
  BWComplex bw = bw_complex(d, maxdeg + 1, max_generators);
  std::vector<FPAbelianGroup> out;
  for (std::size_t n = 0; n <= maxdeg; ++n) out.push_back(cohomology_at(bw.cx, n));
  return out;
}

FPAbelianGroup bw_h0_equalizer(const NaturalSystem& d) {
  const FinCategory& c = d.base;
  // Ambient: prod_A D_{id_A}, objects in id order.
  std::vector<NerveTuple> objs = nerve(c, 0);
  std::vector<std::size_t> offs;
  std::size_t total = 0;
  std::vector<FPAbelianGroup> parts;
  std::vector<std::size_t> slot_of_obj(c.nobj());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    slot_of_obj[c.src(objs[i].composite)] = i;
    offs.push_back(total);
    total += d.value[objs[i].composite].ngens;
    parts.push_back(d.value[objs[i].composite]);
  }
  FPAbelianGroup ambient = direct_sum_group(parts);
  // One block row per morphism lambda: lambda_* x_A - lambda^* x_B ~ 0.
  std::size_t nrows = 0;
  std::vector<std::size_t> row_off(c.nmor());
  std::vector<IntMatrix> row_rels;
  for (std::size_t f = 0; f < c.nmor(); ++f) {
    row_off[f] = nrows;
    nrows += d.value[f].ngens;
  }
  IntMatrix sys(nrows, ambient.ngens);
  IntMatrix rels(nrows, 0);
  {
    std::vector<IntMatrix> blocks;
    for (std::size_t f = 0; f < c.nmor(); ++f) blocks.push_back(d.value[f].relations);
    std::size_t rcols = 0;
    for (const auto& b : blocks) rcols += b.cols();
    rels = IntMatrix(nrows, rcols);
    std::size_t coff = 0;
    for (std::size_t f = 0; f < c.nmor(); ++f) {
      for (std::size_t i = 0; i < blocks[f].rows(); ++i)
        for (std::size_t j = 0; j < blocks[f].cols(); ++j)
          rels.at(row_off[f] + i, coff + j) = blocks[f].at(i, j);
      coff += blocks[f].cols();
    }
  }
  for (std::size_t f = 0; f < c.nmor(); ++f) {
    std::size_t a = c.src(f), b = c.tgt(f);
    const IntMatrix& post = d.post.at({f, c.identity_of(a)});
    const IntMatrix& pre = d.pre.at({f, c.identity_of(b)});
    add_block(sys, post, row_off[f], offs[slot_of_obj[a]], +1);
    add_block(sys, pre, row_off[f], offs[slot_of_obj[b]], -1);
  }
  IntMatrix sols = colspan_preimage(sys, rels);
  return subquotient_presentation(sols, ambient.relations);
}

EquivalenceInvarianceReport equivalence_invariance_check(const FinFunctor& f,
                                                         const NaturalSystem& d,
                                                         std::size_t nmax) {
  if (auto err = validate_functor(f))
    throw InputError("equivalence_invariance_check: " + *err);
  if (!is_equivalence(f))
    throw InputError("equivalence_invariance_check: functor is not an equivalence");
  NaturalSystem pulled = pullback(f, d);
  std::vector<FPAbelianGroup> hsrc = bw_cohomology_range(pulled, nmax);
  std::vector<FPAbelianGroup> hdst = bw_cohomology_range(d, nmax);
  EquivalenceInvarianceReport rep;
  for (std::size_t n = 0; n <= nmax; ++n) {
    rep.pulled_back.push_back(invariant_factors(hsrc[n]));
    rep.original.push_back(invariant_factors(hdst[n]));
    if (!(rep.pulled_back.back() == rep.original.back())) rep.equal = false;
  }
  return rep;
}

}  // namespace catcoh
