#include "catcoh/abelian.hpp"

#include <sstream>

namespace catcoh {

FPAbelianGroup zero_group() { return FPAbelianGroup(0, IntMatrix(0, 0)); }

FPAbelianGroup free_abelian_group(std::size_t rank) {
  return FPAbelianGroup(rank, IntMatrix(rank, 0));
}

FPAbelianGroup cyclic_group(const Int& order) {
  if (order < 0) throw InputError("cyclic_group: negative order");
  if (order == 0) return free_abelian_group(1);
  IntMatrix r(1, 1);
  r.at(0, 0) = order;
  return FPAbelianGroup(1, std::move(r));
}

Int InvariantFactors::order() const {
  Int n(1);
  for (const Int& d : torsion) n *= d;
  return n;
}

InvariantFactors invariant_factors(const FPAbelianGroup& g) {
  SmithResult snf = smith_normal_form(g.relations);
  InvariantFactors inv;
  inv.free_rank = g.ngens - snf.rank;
  for (const Int& d : snf.diagonal())
    if (d >= 2) inv.torsion.push_back(d);
  return inv;
}

std::string format_group(const InvariantFactors& inv) {
  if (inv.is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (inv.free_rank == 1) {
    os << "Z";
    first = false;
  } else if (inv.free_rank > 1) {
    os << "Z^" << inv.free_rank;
    first = false;
  }
  for (const Int& d : inv.torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

std::string format_group(const FPAbelianGroup& g) {
  return format_group(invariant_factors(g));
}

bool is_trivial_group(const FPAbelianGroup& g) {
  return invariant_factors(g).is_trivial();
}

bool hom_well_defined(const FPAbelianGroup& src, const FPAbelianGroup& dst,
                      const IntMatrix& matrix) {
  if (matrix.rows() != dst.ngens || matrix.cols() != src.ngens) return false;
  if (src.relations.cols() == 0) return true;
  return colspan_contains(dst.relations, mul(matrix, src.relations));
}

GroupHom make_hom(const FPAbelianGroup& src, const FPAbelianGroup& dst, IntMatrix matrix) {
  if (matrix.rows() != dst.ngens || matrix.cols() != src.ngens)
    throw InputError("make_hom: matrix shape does not match groups");
  if (!hom_well_defined(src, dst, matrix))
    throw InputError("make_hom: matrix does not respect source relations");
  return GroupHom{src, dst, std::move(matrix)};
}

GroupHom identity_hom(const FPAbelianGroup& g) {
  return GroupHom{g, g, IntMatrix::identity(g.ngens)};
}

GroupHom zero_hom(const FPAbelianGroup& src, const FPAbelianGroup& dst) {
  return GroupHom{src, dst, IntMatrix(dst.ngens, src.ngens)};
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (g.src.ngens != f.dst.ngens) throw InputError("compose: hom shapes do not chain");
  return GroupHom{f.src, g.dst, mul(g.matrix, f.matrix)};
}

GroupHom add(const GroupHom& a, const GroupHom& b) {
  return GroupHom{a.src, a.dst, add(a.matrix, b.matrix)};
}

GroupHom negate_hom(const GroupHom& a) { return GroupHom{a.src, a.dst, negate(a.matrix)}; }

bool hom_equal(const GroupHom& a, const GroupHom& b) {
  if (a.src.ngens != b.src.ngens || a.dst.ngens != b.dst.ngens) return false;
  return colspan_contains(a.dst.relations, sub(a.matrix, b.matrix));
}

bool is_zero_hom(const GroupHom& a) {
  return colspan_contains(a.dst.relations, a.matrix);
}

bool is_isomorphism(const GroupHom& h) {
  // Surjective iff generators of dst are hit modulo dst relations, i.e.
  // Z^dst / colspan([matrix | dst relations]) is trivial.
  SmithResult snf = smith_normal_form(hstack(h.matrix, h.dst.relations));
  if (snf.rank < h.dst.ngens) return false;
  for (const Int& d : snf.diagonal())
    if (d >= 2) return false;
  // Injective iff every x with h(x) ~ 0 already lies in the src relations:
  // the x-part of ker[matrix | dst relations] must land in colspan(src rels).
  IntMatrix ker = kernel_basis(hstack(h.matrix, h.dst.relations));
  IntMatrix xpart(h.src.ngens, ker.cols());
  for (std::size_t i = 0; i < h.src.ngens; ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) xpart.at(i, j) = ker.at(i, j);
  return colspan_contains(h.src.relations, xpart);
}

GroupHom hom_inverse(const GroupHom& h) {
  if (!is_isomorphism(h)) throw InputError("hom_inverse: not an isomorphism");
  // Solve matrix * x = e_j modulo dst relations, columnwise.
  IntMatrix lhs = hstack(h.matrix, h.dst.relations);
  IntMatrix inv(h.src.ngens, h.dst.ngens);
  for (std::size_t j = 0; j < h.dst.ngens; ++j) {
    std::vector<Int> e(h.dst.ngens, Int(0));
    e[j] = 1;
    auto sol = solve(lhs, e);
    if (!sol) throw InputError("hom_inverse: internal solve failed");
    for (std::size_t i = 0; i < h.src.ngens; ++i) inv.at(i, j) = (*sol)[i];
  }
  return GroupHom{h.dst, h.src, std::move(inv)};
}

FPAbelianGroup direct_sum_group(const std::vector<FPAbelianGroup>& parts) {
  std::size_t n = 0, rcols = 0;
  for (const auto& p : parts) {
    n += p.ngens;
    rcols += p.relations.cols();
  }
  IntMatrix rels(n, rcols);
  std::size_t roff = 0, coff = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.ngens; ++i)
      for (std::size_t j = 0; j < p.relations.cols(); ++j)
        rels.at(roff + i, coff + j) = p.relations.at(i, j);
    roff += p.ngens;
    coff += p.relations.cols();
  }
  return FPAbelianGroup(n, std::move(rels));
}

DirectSum direct_sum(const std::vector<FPAbelianGroup>& parts) {
  DirectSum out;
  out.group = direct_sum_group(parts);
  std::size_t n = out.group.ngens;
  std::size_t roff = 0;
  for (const auto& p : parts) {
    IntMatrix inc(n, p.ngens), prj(p.ngens, n);
    for (std::size_t i = 0; i < p.ngens; ++i) {
      inc.at(roff + i, i) = 1;
      prj.at(i, roff + i) = 1;
    }
    out.inclusions.push_back(GroupHom{p, out.group, std::move(inc)});
    out.projections.push_back(GroupHom{out.group, p, std::move(prj)});
    roff += p.ngens;
  }
  return out;
}

CochainComplex make_complex(std::vector<FPAbelianGroup> groups,
                            std::vector<GroupHom> differentials) {
  if (!groups.empty() && differentials.size() + 1 != groups.size())
    throw InputError("make_complex: need one differential per adjacent degree pair");
  for (std::size_t n = 0; n < differentials.size(); ++n) {
    const GroupHom& d = differentials[n];
    if (d.matrix.rows() != groups[n + 1].ngens || d.matrix.cols() != groups[n].ngens)
      throw InputError("make_complex: differential shape mismatch at degree " +
                       std::to_string(n));
    if (!hom_well_defined(groups[n], groups[n + 1], d.matrix))
      throw InputError("make_complex: differential not well defined at degree " +
                       std::to_string(n));
  }
  for (std::size_t n = 0; n + 1 < differentials.size(); ++n) {
    GroupHom dd = compose(differentials[n + 1], differentials[n]);
    if (!is_zero_hom(dd))
      throw InputError("make_complex: d o d != 0 at degree " + std::to_string(n));
  }
  return CochainComplex{std::move(groups), std::move(differentials)};
}

FPAbelianGroup subquotient_presentation(const IntMatrix& gens, const IntMatrix& kill) {
  if (gens.rows() != kill.rows())
    throw InputError("subquotient_presentation: ambient rank mismatch");
  auto coords = solve_columns(gens, kill);
  if (!coords)
    throw InputError("subquotient_presentation: kill columns not inside span(gens)");
  return FPAbelianGroup(gens.cols(), hstack(*coords, kernel_basis(gens)));
}

FPAbelianGroup cohomology_at(const CochainComplex& cx, std::size_t degree) {
  if (degree >= cx.groups.size()) return zero_group();
  const FPAbelianGroup& gn = cx.groups[degree];

  IntMatrix dn = degree < cx.differentials.size()
                     ? cx.differentials[degree].matrix
                     : IntMatrix(0, gn.ngens);
  IntMatrix rels_for_target = degree + 1 < cx.groups.size()
                                  ? cx.groups[degree + 1].relations
                                  : IntMatrix(dn.rows(), 0);

  // Cocycle lattice: x in Z^gens with d(x) ~ 0 in the next group.
  IntMatrix cocycles = colspan_preimage(dn, rels_for_target);

  // Kill the image of the previous differential plus this degree's relations.
  IntMatrix prev = degree > 0 && degree - 1 < cx.differentials.size()
                       ? cx.differentials[degree - 1].matrix
                       : IntMatrix(gn.ngens, 0);
  IntMatrix kill = hstack(prev, gn.relations);
  return subquotient_presentation(cocycles, kill);
}

GroupEnumeration::GroupEnumeration(const FPAbelianGroup& g, unsigned long order_cap)
    : group_(g) {
  SmithResult snf = smith_normal_form(g.relations);
  if (snf.rank < g.ngens)
    throw InputError("GroupEnumeration: group is infinite");
  u_ = snf.u;
  uinv_ = snf.uinv;
  Int order(1);
  for (std::size_t i = 0; i < g.ngens; ++i) {
    const Int& d = snf.s.at(i, i);
    if (d == 1) continue;
    order *= d;
    if (order > order_cap)
      throw LimitError("GroupEnumeration: order exceeds cap of " +
                       std::to_string(order_cap));
    moduli_.push_back(d.get_si());
    slots_.push_back(i);
  }
  order_ = static_cast<std::size_t>(order.get_ui());
}

GroupEnumeration::Elem GroupEnumeration::add(const Elem& a, const Elem& b) const {
  Elem c(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) c[i] = (a[i] + b[i]) % moduli_[i];
  return c;
}

GroupEnumeration::Elem GroupEnumeration::negate(const Elem& a) const {
  Elem c(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) c[i] = (moduli_[i] - a[i]) % moduli_[i];
  return c;
}

GroupEnumeration::Elem GroupEnumeration::sub(const Elem& a, const Elem& b) const {
  return add(a, negate(b));
}

bool GroupEnumeration::is_zero(const Elem& a) const {
  for (long v : a)
    if (v != 0) return false;
  return true;
}

std::size_t GroupEnumeration::index_of(const Elem& e) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(e[i]);
  return idx;
}

GroupEnumeration::Elem GroupEnumeration::element(std::size_t index) const {
  Elem e(moduli_.size(), 0);
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    e[i] = static_cast<long>(index % static_cast<std::size_t>(moduli_[i]));
    index /= static_cast<std::size_t>(moduli_[i]);
  }
  return e;
}

GroupEnumeration::Elem GroupEnumeration::reduce(const std::vector<Int>& gencoords) const {
  if (gencoords.size() != group_.ngens)
    throw InputError("GroupEnumeration::reduce: coordinate length mismatch");
  std::vector<Int> y = mul(u_, gencoords);
  Elem e(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    Int m;
    mpz_fdiv_r_ui(m.get_mpz_t(), y[slots_[i]].get_mpz_t(),
                  static_cast<unsigned long>(moduli_[i]));
    e[i] = m.get_si();
  }
  return e;
}

std::vector<Int> GroupEnumeration::lift(const Elem& e) const {
  if (e.size() != moduli_.size())
    throw InputError("GroupEnumeration::lift: coordinate length mismatch");
  std::vector<Int> y(group_.ngens, Int(0));
  for (std::size_t i = 0; i < moduli_.size(); ++i) y[slots_[i]] = e[i];
  return mul(uinv_, y);
}

GroupEnumeration::Elem apply_hom(const GroupEnumeration& src, const GroupEnumeration& dst,
                                 const GroupHom& h, const GroupEnumeration::Elem& e) {
  return dst.reduce(mul(h.matrix, src.lift(e)));
}

}  // namespace catcoh
