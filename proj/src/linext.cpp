#include "catcoh/linext.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace catcoh {

namespace {

std::string elem_suffix(std::size_t index) { return "~" + std::to_string(index); }

// Shared context for cochain-level operations: nerve tuples of degrees 2, 3
// and element enumerations of all coefficient groups (finite D required).
struct CochainContext {
  const NaturalSystem& d;
  std::vector<NerveTuple> n2, n3;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx2;
  std::vector<GroupEnumeration> en;

  explicit CochainContext(const NaturalSystem& dd) : d(dd) {
    const FinCategory& c = d.base;
    n2 = nerve(c, 2);
    n3 = nerve(c, 3);
    for (std::size_t i = 0; i < n2.size(); ++i) idx2[{n2[i].mors[0], n2[i].mors[1]}] = i;
    for (std::size_t f = 0; f < c.nmor(); ++f) en.emplace_back(d.value[f]);
  }

  const GroupEnumeration::Elem& value_at(const TwoCochain& c, std::size_t l1,
                                         std::size_t l2) const {
    return c.values[idx2.at({l1, l2})];
  }

  GroupEnumeration::Elem transport_post(std::size_t b, std::size_t f,
                                        const GroupEnumeration::Elem& e) const {
    return apply_hom(en[f], en[d.base.compose(b, f)], d.post_hom(b, f), e);
  }
  GroupEnumeration::Elem transport_pre(std::size_t a, std::size_t f,
                                       const GroupEnumeration::Elem& e) const {
    return apply_hom(en[f], en[d.base.compose(f, a)], d.pre_hom(a, f), e);
  }

  // delta(c) evaluated on the degree-3 tuple (l1, l2, l3), in D_{l1 l2 l3}.
  GroupEnumeration::Elem coboundary_at(const TwoCochain& c, const NerveTuple& t) const {
    const FinCategory& cat = d.base;
    std::size_t l1 = t.mors[0], l2 = t.mors[1], l3 = t.mors[2];
    const GroupEnumeration& et = en[t.composite];
    GroupEnumeration::Elem acc = et.zero_elem();
    acc = et.add(acc, transport_post(l1, cat.compose(l2, l3), value_at(c, l2, l3)));
    acc = et.sub(acc, value_at(c, cat.compose(l1, l2), l3));
    acc = et.add(acc, value_at(c, l1, cat.compose(l2, l3)));
    acc = et.sub(acc, transport_pre(l3, cat.compose(l1, l2), value_at(c, l1, l2)));
    return acc;
  }
};

}  // namespace

GroupEnumeration::Elem LinearExtension::fiber_difference(std::size_t f, std::size_t to,
                                                         std::size_t from) const {
  const auto& act = action[f];
  for (std::size_t e = 0; e < act.size(); ++e)
    if (act[e][from] == to) return enums[f].element(e);
  throw InputError("fiber_difference: action is not transitive on fiber of '" +
                   coeff.base.morphism_id(f) + "'");
}

TwoCochain zero_cochain(const NaturalSystem& d) {
  TwoCochain c;
  c.tuples = nerve(d.base, 2);
  for (const NerveTuple& t : c.tuples)
    c.values.push_back(GroupEnumeration(d.value[t.composite]).zero_elem());
  return c;
}

bool cochain_is_zero(const LinearExtension& ext, const TwoCochain& c) {
  for (std::size_t i = 0; i < c.tuples.size(); ++i) {
    const auto& e = ext.enums[c.tuples[i].composite];
    if (!e.is_zero(c.values[i])) return false;
  }
  return true;
}

bool cocycle_condition(const NaturalSystem& d, const TwoCochain& c) {
  CochainContext ctx(d);
  for (const NerveTuple& t : ctx.n3)
    if (!ctx.en[t.composite].is_zero(ctx.coboundary_at(c, t))) return false;
  return true;
}

bool cochains_cohomologous(const NaturalSystem& d, const TwoCochain& c1,
                           const TwoCochain& c2) {
  CochainContext ctx(d);
  const FinCategory& cat = d.base;
  std::vector<NerveTuple> n1 = nerve(cat, 1);
  // Ambient generator offsets for C^1 and C^2.
  std::vector<std::size_t> off1, off2;
  std::size_t t1 = 0, t2 = 0;
  for (const NerveTuple& t : n1) {
    off1.push_back(t1);
    t1 += d.value[t.composite].ngens;
  }
  for (const NerveTuple& t : ctx.n2) {
    off2.push_back(t2);
    t2 += d.value[t.composite].ngens;
  }
  // delta^1 columns restricted to non-identity slots of C^1, against the
  // block relations of C^2; c1 - c2 must lie in the combined column span.
  std::vector<IntMatrix> cols;
  for (std::size_t s = 0; s < n1.size(); ++s) {
    std::size_t f = n1[s].composite;
    if (cat.is_identity(f)) continue;
    IntMatrix col(t2, d.value[f].ngens);
    for (std::size_t p = 0; p < ctx.n2.size(); ++p) {
      std::size_t l1 = ctx.n2[p].mors[0], l2 = ctx.n2[p].mors[1];
      // delta b (l1, l2) = l1_* b(l2) - b(l1 l2) + l2^* b(l1).
      if (l2 == f) {
        const IntMatrix& m = d.post.at({l1, l2});
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) col.at(off2[p] + i, j) += m.at(i, j);
      }
      if (ctx.n2[p].composite == f)
        for (std::size_t i = 0; i < d.value[f].ngens; ++i) col.at(off2[p] + i, i) -= 1;
      if (l1 == f) {
        const IntMatrix& m = d.pre.at({l2, l1});
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) col.at(off2[p] + i, j) += m.at(i, j);
      }
    }
    cols.push_back(std::move(col));
  }
  IntMatrix rels(t2, 0);
  {
    std::size_t rc = 0;
    for (const NerveTuple& t : ctx.n2) rc += d.value[t.composite].relations.cols();
    rels = IntMatrix(t2, rc);
    std::size_t coff = 0;
    for (std::size_t p = 0; p < ctx.n2.size(); ++p) {
      const IntMatrix& r = d.value[ctx.n2[p].composite].relations;
      for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) rels.at(off2[p] + i, coff + j) = r.at(i, j);
      coff += r.cols();
    }
  }
  std::vector<Int> v(t2, Int(0));
  for (std::size_t p = 0; p < ctx.n2.size(); ++p) {
    const GroupEnumeration& e = ctx.en[ctx.n2[p].composite];
    std::vector<Int> lift = e.lift(e.sub(c1.values[p], c2.values[p]));
    for (std::size_t i = 0; i < lift.size(); ++i) v[off2[p] + i] = lift[i];
  }
  cols.push_back(std::move(rels));
  return in_colspan(hstack(cols, t2), v);
}

namespace {

LinearExtension build_extension(const NaturalSystem& d, const TwoCochain& c) {
  const FinCategory& base = d.base;
  LinearExtension ext;
  ext.coeff = d;
  CochainContext ctx(d);
  for (std::size_t f = 0; f < base.nmor(); ++f) ext.enums.push_back(ctx.en[f]);

  for (std::size_t x = 0; x < base.nobj(); ++x) ext.total.add_object(base.object_id(x));
  ext.fiber.assign(base.nmor(), {});
  for (std::size_t f = 0; f < base.nmor(); ++f) {
    const GroupEnumeration& e = ext.enums[f];
    for (std::size_t k = 0; k < e.order(); ++k) {
      std::size_t tm = ext.total.add_morphism(base.morphism_id(f) + elem_suffix(k),
                                              base.object_id(base.src(f)),
                                              base.object_id(base.tgt(f)));
      ext.proj.push_back(f);
      ext.pos_in_fiber.push_back(k);
      ext.fiber[f].push_back(tm);
    }
  }
  for (std::size_t x = 0; x < base.nobj(); ++x) {
    std::size_t e = base.identity_of(x);
    ext.total.set_identity(base.object_id(x),
                           base.morphism_id(e) + elem_suffix(0));
  }
  // (xi, f) o (eta, g) = (f_* eta + g^* xi + c(f, g), f o g).
  for (std::size_t f = 0; f < base.nmor(); ++f)
    for (std::size_t g = 0; g < base.nmor(); ++g) {
      if (!base.composable(f, g)) continue;
      std::size_t fg = base.compose(f, g);
      const GroupEnumeration& efg = ext.enums[fg];
      const GroupEnumeration::Elem& twist = ctx.value_at(c, f, g);
      for (std::size_t kf = 0; kf < ext.enums[f].order(); ++kf)
        for (std::size_t kg = 0; kg < ext.enums[g].order(); ++kg) {
          GroupEnumeration::Elem xi = ext.enums[f].element(kf);
          GroupEnumeration::Elem eta = ext.enums[g].element(kg);
          GroupEnumeration::Elem res = efg.add(
              efg.add(ctx.transport_post(f, g, eta), ctx.transport_pre(g, f, xi)), twist);
          ext.total.set_compose(
              base.morphism_id(f) + elem_suffix(kf), base.morphism_id(g) + elem_suffix(kg),
              base.morphism_id(fg) + elem_suffix(efg.index_of(res)));
        }
    }
  ext.total.finalize();
  // Torsor actions: position = element index, action is addition.
  ext.action.resize(base.nmor());
  for (std::size_t f = 0; f < base.nmor(); ++f) {
    const GroupEnumeration& e = ext.enums[f];
    ext.action[f].assign(e.order(), std::vector<std::size_t>(e.order()));
    for (std::size_t k = 0; k < e.order(); ++k)
      for (std::size_t p = 0; p < e.order(); ++p)
        ext.action[f][k][p] = e.index_of(e.add(e.element(k), e.element(p)));
  }
  return ext;
}

}  // namespace

LinearExtension trivial_extension(const FinCategory& c, const NaturalSystem& d) {
  (void)c;
  return build_extension(d, zero_cochain(d));
}

LinearExtension extension_of_cocycle(const NaturalSystem& d, const TwoCochain& c) {
  // Normalization and the cocycle condition are preconditions, checked here.
  CochainContext ctx(d);
  for (std::size_t p = 0; p < c.tuples.size(); ++p) {
    const NerveTuple& t = c.tuples[p];
    if ((d.base.is_identity(t.mors[0]) || d.base.is_identity(t.mors[1])) &&
        !ctx.en[t.composite].is_zero(c.values[p]))
      throw InputError("extension_of_cocycle: cochain not normalized at ('" +
                       d.base.morphism_id(t.mors[0]) + "', '" +
                       d.base.morphism_id(t.mors[1]) + "')");
  }
  if (!cocycle_condition(d, c))
    throw InputError("extension_of_cocycle: cochain fails the cocycle condition");
  return build_extension(d, c);
}

std::optional<ExtViolation> validate_extension(const LinearExtension& ext,
                                               std::size_t max_checks) {
  const FinCategory& b = ext.coeff.base;
  const FinCategory& e = ext.total;
  if (ext.proj.size() != e.nmor() || ext.pos_in_fiber.size() != e.nmor() ||
      ext.fiber.size() != b.nmor() || ext.enums.size() != b.nmor() ||
      ext.action.size() != b.nmor())
    return ExtViolation{"shape", "component sizes are inconsistent"};
  if (e.nobj() != b.nobj())
    return ExtViolation{"objects", "total and base have different object counts"};
  for (std::size_t x = 0; x < b.nobj(); ++x)
    if (e.object_id(x) != b.object_id(x))
      return ExtViolation{"objects", "object '" + e.object_id(x) +
                                         "' does not match the base object list"};
  if (auto v = validate_category(e))
    return ExtViolation{"total-category", v->detail};
  for (std::size_t tm = 0; tm < e.nmor(); ++tm) {
    std::size_t f = ext.proj[tm];
    if (e.src(tm) != b.src(f) || e.tgt(tm) != b.tgt(f))
      return ExtViolation{"projection", "projection of '" + e.morphism_id(tm) +
                                            "' has mismatched endpoints"};
  }
  for (std::size_t x = 0; x < b.nobj(); ++x)
    if (ext.proj[e.identity_of(x)] != b.identity_of(x))
      return ExtViolation{"projection", "identity over '" + b.object_id(x) +
                                            "' does not project to the identity"};
  for (std::size_t g = 0; g < e.nmor(); ++g)
    for (std::size_t f = 0; f < e.nmor(); ++f) {
      if (!e.composable(g, f)) continue;
      if (ext.proj[e.compose(g, f)] != b.compose(ext.proj[g], ext.proj[f]))
        return ExtViolation{"projection", "projection fails functoriality at ('" +
                                              e.morphism_id(g) + "', '" + e.morphism_id(f) +
                                              "')"};
    }
  // Fibers partition the total morphisms consistently with the projection.
  for (std::size_t f = 0; f < b.nmor(); ++f) {
    if (ext.fiber[f].empty())
      return ExtViolation{"fullness", "empty fiber over '" + b.morphism_id(f) + "'"};
    for (std::size_t p = 0; p < ext.fiber[f].size(); ++p) {
      std::size_t tm = ext.fiber[f][p];
      if (tm >= e.nmor() || ext.proj[tm] != f || ext.pos_in_fiber[tm] != p)
        return ExtViolation{"fibers", "fiber list over '" + b.morphism_id(f) +
                                          "' disagrees with the projection"};
    }
  }
  {
    std::size_t covered = 0;
    for (std::size_t f = 0; f < b.nmor(); ++f) covered += ext.fiber[f].size();
    if (covered != e.nmor())
      return ExtViolation{"fibers", "fibers do not partition the total morphisms"};
  }
  // Torsor axioms: |fiber| = |D_f|; addition acts; action free and transitive.
  for (std::size_t f = 0; f < b.nmor(); ++f) {
    const GroupEnumeration& en = ext.enums[f];
    std::size_t n = ext.fiber[f].size();
    if (en.order() != n)
      return ExtViolation{"torsor", "fiber over '" + b.morphism_id(f) + "' has " +
                                        std::to_string(n) + " elements but |D_f| = " +
                                        std::to_string(en.order())};
    if (ext.action[f].size() != en.order())
      return ExtViolation{"torsor", "action table over '" + b.morphism_id(f) +
                                        "' has the wrong number of group elements"};
    for (std::size_t k = 0; k < en.order(); ++k)
      if (ext.action[f][k].size() != n)
        return ExtViolation{"torsor", "action table over '" + b.morphism_id(f) +
                                          "' has ragged rows"};
    // Identity acts trivially; action is a homomorphism into permutations.
    std::size_t zero = en.index_of(en.zero_elem());
    for (std::size_t p = 0; p < n; ++p)
      if (ext.action[f][zero][p] != p)
        return ExtViolation{"torsor", "zero element acts nontrivially on fiber of '" +
                                          b.morphism_id(f) + "'"};
    for (std::size_t k1 = 0; k1 < en.order(); ++k1)
      for (std::size_t k2 = 0; k2 < en.order(); ++k2) {
        std::size_t ks = en.index_of(en.add(en.element(k1), en.element(k2)));
        for (std::size_t p = 0; p < n; ++p)
          if (ext.action[f][k1][ext.action[f][k2][p]] != ext.action[f][ks][p])
            return ExtViolation{"torsor", "action fails additivity on fiber of '" +
                                              b.morphism_id(f) + "'"};
      }
    // Free + transitive: e -> e . p is bijective for each basepoint p.
    for (std::size_t p = 0; p < n; ++p) {
      std::vector<bool> hit(n, false);
      for (std::size_t k = 0; k < en.order(); ++k) {
        std::size_t q = ext.action[f][k][p];
        if (hit[q])
          return ExtViolation{"torsor", "action not free on fiber of '" +
                                            b.morphism_id(f) + "'"};
        hit[q] = true;
      }
      for (std::size_t q = 0; q < n; ++q)
        if (!hit[q])
          return ExtViolation{"torsor", "action not transitive on fiber of '" +
                                            b.morphism_id(f) + "'"};
    }
  }
  // Bilinear composition law, exhaustively (guarded).
  std::size_t budget = 0;
  for (std::size_t f = 0; f < b.nmor(); ++f)
    for (std::size_t g = 0; g < b.nmor(); ++g) {
      if (!b.composable(f, g)) continue;
      budget += ext.enums[f].order() * ext.enums[g].order() * ext.fiber[f].size() *
                ext.fiber[g].size();
      if (budget > max_checks)
        throw LimitError("validate_extension: composition-law checks exceed cap of " +
                         std::to_string(max_checks));
    }
  for (std::size_t f = 0; f < b.nmor(); ++f)
    for (std::size_t g = 0; g < b.nmor(); ++g) {
      if (!b.composable(f, g)) continue;
      std::size_t fg = b.compose(f, g);
      const GroupEnumeration& ef = ext.enums[f];
      const GroupEnumeration& eg = ext.enums[g];
      const GroupEnumeration& efg = ext.enums[fg];
      for (std::size_t kf = 0; kf < ef.order(); ++kf)
        for (std::size_t kg = 0; kg < eg.order(); ++kg)
          for (std::size_t pf = 0; pf < ext.fiber[f].size(); ++pf)
            for (std::size_t pg = 0; pg < ext.fiber[g].size(); ++pg) {
              std::size_t lhs = e.compose(ext.fiber[f][ext.action[f][kf][pf]],
                                          ext.fiber[g][ext.action[g][kg][pg]]);
              GroupEnumeration::Elem shift = efg.add(
                  apply_hom(eg, efg, ext.coeff.post_hom(f, g), eg.element(kg)),
                  apply_hom(ef, efg, ext.coeff.pre_hom(g, f), ef.element(kf)));
              std::size_t bare = e.compose(ext.fiber[f][pf], ext.fiber[g][pg]);
              std::size_t rhs =
                  ext.fiber[fg][ext.action[fg][efg.index_of(shift)]
                                           [ext.pos_in_fiber[bare]]];
              if (lhs != rhs)
                return ExtViolation{
                    "composition-law",
                    "bilinear law fails at ('" + b.morphism_id(f) + "', '" +
                        b.morphism_id(g) + "') with group elements " +
                        std::to_string(kf) + ", " + std::to_string(kg)};
            }
    }
  return std::nullopt;
}

TwoCochain cocycle_of(const LinearExtension& ext,
                      const std::optional<std::vector<std::size_t>>& lifts) {
  const FinCategory& b = ext.coeff.base;
  std::vector<std::size_t> s(b.nmor());
  for (std::size_t f = 0; f < b.nmor(); ++f) s[f] = ext.fiber[f][0];
  if (lifts) {
    if (lifts->size() != b.nmor())
      throw InputError("cocycle_of: lift vector has wrong length");
    for (std::size_t f = 0; f < b.nmor(); ++f) {
      if (ext.proj[(*lifts)[f]] != f)
        throw InputError("cocycle_of: lift of '" + b.morphism_id(f) +
                         "' is not in its fiber");
      s[f] = (*lifts)[f];
    }
  }
  // Identity lifts are forced so the cochain comes out normalized.
  for (std::size_t x = 0; x < b.nobj(); ++x)
    s[b.identity_of(x)] = ext.total.identity_of(x);
  TwoCochain c;
  c.tuples = nerve(b, 2);
  for (const NerveTuple& t : c.tuples) {
    std::size_t f = t.mors[0], g = t.mors[1];
    std::size_t prod = ext.total.compose(s[f], s[g]);
    c.values.push_back(ext.fiber_difference(t.composite, ext.pos_in_fiber[prod],
                                            ext.pos_in_fiber[s[t.composite]]));
  }
  return c;
}

std::optional<FinFunctor> find_section(const LinearExtension& ext,
                                       std::size_t max_nodes) {
  const FinCategory& b = ext.coeff.base;
  std::vector<std::size_t> s(b.nmor(), FinCategory::npos);
  for (std::size_t x = 0; x < b.nobj(); ++x)
    s[b.identity_of(x)] = ext.total.identity_of(x);
  std::vector<std::size_t> slots;
  for (std::size_t m : b.morphisms_by_id())
    if (!b.is_identity(m)) slots.push_back(m);

  std::size_t nodes = 0;
  auto consistent = [&](std::size_t just) -> bool {
    for (std::size_t g = 0; g < b.nmor(); ++g) {
      if (s[g] == FinCategory::npos) continue;
      if (b.composable(just, g)) {
        std::size_t comp = b.compose(just, g);
        if (s[comp] != FinCategory::npos &&
            ext.total.compose(s[just], s[g]) != s[comp])
          return false;
      }
      if (b.composable(g, just)) {
        std::size_t comp = b.compose(g, just);
        if (s[comp] != FinCategory::npos &&
            ext.total.compose(s[g], s[just]) != s[comp])
          return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == slots.size()) return true;
    std::size_t f = slots[k];
    for (std::size_t cand : ext.fiber[f]) {
      if (++nodes > max_nodes)
        throw LimitError("find_section: search exceeds cap of " +
                         std::to_string(max_nodes));
      s[f] = cand;
      if (consistent(f) && self(self, k + 1)) return true;
      s[f] = FinCategory::npos;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  FinFunctor sec;
  sec.src = b;
  sec.dst = ext.total;
  sec.omap.resize(b.nobj());
  for (std::size_t x = 0; x < b.nobj(); ++x) sec.omap[x] = x;
  sec.mmap = s;
  return sec;
}

ClassifyResult classify(const NaturalSystem& d, std::size_t max_cochains) {
  CochainContext ctx(d);
  const FinCategory& cat = d.base;
  // Free positions: degree-2 tuples with no identity entry.
  std::vector<std::size_t> free_pos;
  std::size_t combos = 1;
  for (std::size_t p = 0; p < ctx.n2.size(); ++p) {
    const NerveTuple& t = ctx.n2[p];
    if (cat.is_identity(t.mors[0]) || cat.is_identity(t.mors[1])) continue;
    free_pos.push_back(p);
    combos *= ctx.en[t.composite].order();
    if (combos > max_cochains)
      throw LimitError("classify: normalized 2-cochain count exceeds cap of " +
                       std::to_string(max_cochains));
  }
  auto build = [&](const std::vector<std::size_t>& key) {
    TwoCochain c;
    c.tuples = ctx.n2;
    for (std::size_t p = 0; p < ctx.n2.size(); ++p)
      c.values.push_back(ctx.en[ctx.n2[p].composite].zero_elem());
    for (std::size_t i = 0; i < free_pos.size(); ++i)
      c.values[free_pos[i]] = ctx.en[ctx.n2[free_pos[i]].composite].element(key[i]);
    return c;
  };
  // Enumerate cocycles by their free-position keys.
  std::vector<std::vector<std::size_t>> cocycles;
  std::vector<std::size_t> key(free_pos.size(), 0);
  for (;;) {
    TwoCochain c = build(key);
    bool ok = true;
    for (const NerveTuple& t : ctx.n3)
      if (!ctx.en[t.composite].is_zero(ctx.coboundary_at(c, t))) {
        ok = false;
        break;
      }
    if (ok) cocycles.push_back(key);
    // Mixed-radix increment.
    std::size_t i = 0;
    for (; i < key.size(); ++i) {
      if (++key[i] < ctx.en[ctx.n2[free_pos[i]].composite].order()) break;
      key[i] = 0;
    }
    if (i == key.size()) break;
    if (free_pos.empty()) break;
  }
  // Coboundaries of normalized 1-cochains, as free-position keys.
  std::vector<std::size_t> slots;
  std::size_t bcombos = 1;
  for (std::size_t m : cat.morphisms_by_id())
    if (!cat.is_identity(m)) {
      slots.push_back(m);
      bcombos *= ctx.en[m].order();
      if (bcombos > max_cochains)
        throw LimitError("classify: normalized 1-cochain count exceeds cap of " +
                         std::to_string(max_cochains));
    }
  std::set<std::vector<std::size_t>> coboundaries;
  std::vector<std::size_t> bkey(slots.size(), 0);
  for (;;) {
    std::vector<GroupEnumeration::Elem> b(cat.nmor());
    for (std::size_t f = 0; f < cat.nmor(); ++f) b[f] = ctx.en[f].zero_elem();
    for (std::size_t i = 0; i < slots.size(); ++i)
      b[slots[i]] = ctx.en[slots[i]].element(bkey[i]);
    std::vector<std::size_t> dbkey;
    for (std::size_t p : free_pos) {
      std::size_t l1 = ctx.n2[p].mors[0], l2 = ctx.n2[p].mors[1];
      const GroupEnumeration& et = ctx.en[ctx.n2[p].composite];
      GroupEnumeration::Elem v = ctx.transport_post(l1, l2, b[l2]);
      v = et.sub(v, b[cat.compose(l1, l2)]);
      v = et.add(v, ctx.transport_pre(l2, l1, b[l1]));
      dbkey.push_back(et.index_of(v));
    }
    coboundaries.insert(dbkey);
    std::size_t i = 0;
    for (; i < bkey.size(); ++i) {
      if (++bkey[i] < ctx.en[slots[i]].order()) break;
      bkey[i] = 0;
    }
    if (i == bkey.size()) break;
    if (slots.empty()) break;
  }
  // Orbit marking.
  ClassifyResult res;
  res.cocycles = cocycles.size();
  res.coboundaries = coboundaries.size();
  std::set<std::vector<std::size_t>> seen;
  for (const auto& z : cocycles) {
    if (seen.count(z)) continue;
    ++res.classes;
    res.representatives.push_back(build(z));
    for (const auto& db : coboundaries) {
      std::vector<std::size_t> sum(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) {
        const GroupEnumeration& et = ctx.en[ctx.n2[free_pos[i]].composite];
        sum[i] = et.index_of(et.add(et.element(z[i]), et.element(db[i])));
      }
      seen.insert(std::move(sum));
    }
  }
  return res;
}

LiftResult cc_structure_lift(const LinearExtension& ext, const CCStructure& s) {
  CCStructure lifted;
  lifted.base = ext.total;
  if (s.terminal) lifted.terminal = *s.terminal;  // objects are shared
  for (const auto& [key, cone] : s.products)
    lifted.products[key] = ProductCone{cone.object, ext.fiber[cone.p1][0],
                                       ext.fiber[cone.p2][0]};
  for (const auto& [key, cone] : s.exponentials)
    lifted.exponentials[key] = ExpCone{cone.object, ext.fiber[cone.ev][0]};
  if (auto v = validate_structure(lifted)) return LiftResult{std::nullopt, v};
  return LiftResult{std::move(lifted), std::nullopt};
}

}  // namespace catcoh
