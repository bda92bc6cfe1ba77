#include "catcoh/natsys.hpp"

namespace catcoh {

GroupHom NaturalSystem::pre_hom(std::size_t a, std::size_t f) const {
  auto it = pre.find({a, f});
  if (it == pre.end())
    throw InputError("missing pre map (" + base.morphism_id(a) + ")^* on D_" +
                     base.morphism_id(f));
  std::size_t fa = base.compose(f, a);
  return GroupHom{value[f], value[fa], it->second};
}

GroupHom NaturalSystem::post_hom(std::size_t b, std::size_t f) const {
  auto it = post.find({b, f});
  if (it == post.end())
    throw InputError("missing post map (" + base.morphism_id(b) + ")_* on D_" +
                     base.morphism_id(f));
  std::size_t bf = base.compose(b, f);
  return GroupHom{value[f], value[bf], it->second};
}

namespace {

std::string mor_name(const FinCategory& c, std::size_t m) {
  return "'" + c.morphism_id(m) + "'";
}

}  // namespace

std::optional<NatSysViolation> validate_natsys(const NaturalSystem& d) {
  const FinCategory& c = d.base;
  if (d.value.size() != c.nmor())
    return NatSysViolation{"shape", {}, "one value group per morphism required"};

  // Presence and well-definedness of every pre/post map.
  for (std::size_t f = 0; f < c.nmor(); ++f)
    for (std::size_t a = 0; a < c.nmor(); ++a) {
      if (c.composable(f, a)) {  // f o a defined
        auto it = d.pre.find({a, f});
        if (it == d.pre.end())
          return NatSysViolation{"presence", {a, f},
                                 "missing pre map " + mor_name(c, a) + "^* on D_" +
                                     c.morphism_id(f)};
        std::size_t fa = c.compose(f, a);
        if (it->second.rows() != d.value[fa].ngens || it->second.cols() != d.value[f].ngens ||
            !hom_well_defined(d.value[f], d.value[fa], it->second))
          return NatSysViolation{"well-defined", {a, f},
                                 "pre map " + mor_name(c, a) + "^* on D_" +
                                     c.morphism_id(f) + " is not a homomorphism"};
      }
      if (c.composable(a, f)) {  // a o f defined; a plays the post role
        auto it = d.post.find({a, f});
        if (it == d.post.end())
          return NatSysViolation{"presence", {a, f},
                                 "missing post map " + mor_name(c, a) + "_* on D_" +
                                     c.morphism_id(f)};
        std::size_t af = c.compose(a, f);
        if (it->second.rows() != d.value[af].ngens || it->second.cols() != d.value[f].ngens ||
            !hom_well_defined(d.value[f], d.value[af], it->second))
          return NatSysViolation{"well-defined", {a, f},
                                 "post map " + mor_name(c, a) + "_* on D_" +
                                     c.morphism_id(f) + " is not a homomorphism"};
      }
    }

  // Identity laws: id^* = id and id_* = id.
  for (std::size_t f = 0; f < c.nmor(); ++f) {
    GroupHom idf = identity_hom(d.value[f]);
    if (!hom_equal(d.pre_hom(c.identity_of(c.src(f)), f), idf))
      return NatSysViolation{"identity-pre", {f},
                             "id^* on D_" + c.morphism_id(f) + " is not the identity"};
    if (!hom_equal(d.post_hom(c.identity_of(c.tgt(f)), f), idf))
      return NatSysViolation{"identity-post", {f},
                             "id_* on D_" + c.morphism_id(f) + " is not the identity"};
  }

  // Contravariant law: (a o a')^* = a'^* o a^*.
  for (std::size_t f = 0; f < c.nmor(); ++f)
    for (std::size_t a = 0; a < c.nmor(); ++a) {
      if (!c.composable(f, a)) continue;
      std::size_t fa = c.compose(f, a);
      for (std::size_t ap = 0; ap < c.nmor(); ++ap) {
        if (!c.composable(a, ap)) continue;
        GroupHom lhs = d.pre_hom(c.compose(a, ap), f);
        GroupHom rhs = compose(d.pre_hom(ap, fa), d.pre_hom(a, f));
        if (!hom_equal(lhs, rhs))
          return NatSysViolation{"contravariant", {a, ap, f},
                                 "(" + c.morphism_id(a) + " o " + c.morphism_id(ap) +
                                     ")^* != (" + c.morphism_id(ap) + ")^* o (" +
                                     c.morphism_id(a) + ")^* on D_" + c.morphism_id(f)};
      }
    }

  // Covariant law: (b' o b)_* = b'_* o b_*.
  for (std::size_t f = 0; f < c.nmor(); ++f)
    for (std::size_t b = 0; b < c.nmor(); ++b) {
      if (!c.composable(b, f)) continue;
      std::size_t bf = c.compose(b, f);
      for (std::size_t bp = 0; bp < c.nmor(); ++bp) {
        if (!c.composable(bp, b)) continue;
        GroupHom lhs = d.post_hom(c.compose(bp, b), f);
        GroupHom rhs = compose(d.post_hom(bp, bf), d.post_hom(b, f));
        if (!hom_equal(lhs, rhs))
          return NatSysViolation{"covariant", {bp, b, f},
                                 "(" + c.morphism_id(bp) + " o " + c.morphism_id(b) +
                                     ")_* != (" + c.morphism_id(bp) + ")_* o (" +
                                     c.morphism_id(b) + ")_* on D_" + c.morphism_id(f)};
      }
    }

  // Commutation: b_* o a^* = a^* o b_* : D_f -> D_{b o f o a}.
  for (std::size_t f = 0; f < c.nmor(); ++f)
    for (std::size_t a = 0; a < c.nmor(); ++a) {
      if (!c.composable(f, a)) continue;
      std::size_t fa = c.compose(f, a);
      for (std::size_t b = 0; b < c.nmor(); ++b) {
        if (!c.composable(b, f)) continue;
        std::size_t bf = c.compose(b, f);
        GroupHom lhs = compose(d.post_hom(b, fa), d.pre_hom(a, f));
        GroupHom rhs = compose(d.pre_hom(a, bf), d.post_hom(b, f));
        if (!hom_equal(lhs, rhs))
          return NatSysViolation{"commutation", {a, b, f},
                                 "(" + c.morphism_id(b) + ")_* o (" + c.morphism_id(a) +
                                     ")^* != (" + c.morphism_id(a) + ")^* o (" +
                                     c.morphism_id(b) + ")_* on D_" + c.morphism_id(f)};
      }
    }
  return std::nullopt;
}

NaturalSystem constant_system(const FinCategory& c, const FPAbelianGroup& g) {
  NaturalSystem d;
  d.base = c;
  d.value.assign(c.nmor(), g);
  IntMatrix id = IntMatrix::identity(g.ngens);
  for (std::size_t f = 0; f < c.nmor(); ++f)
    for (std::size_t a = 0; a < c.nmor(); ++a) {
      if (c.composable(f, a)) d.pre[{a, f}] = id;
      if (c.composable(a, f)) d.post[{a, f}] = id;
    }
  return d;
}

NaturalSystem zero_system(const FinCategory& c) { return constant_system(c, zero_group()); }

NaturalSystem from_group_module(const FinCategory& g, const FPAbelianGroup& m,
                                const std::map<std::string, IntMatrix>& generator_action) {
  if (g.nobj() != 1) throw InputError("from_group_module: category must have one object");
  // Every morphism must be invertible.
  for (std::size_t f = 0; f < g.nmor(); ++f) {
    bool invertible = false;
    for (std::size_t h = 0; h < g.nmor(); ++h)
      if (g.compose(h, f) == g.identity_of(0) && g.compose(f, h) == g.identity_of(0))
        invertible = true;
    if (!invertible)
      throw InputError("from_group_module: morphism '" + g.morphism_id(f) +
                       "' is not invertible");
  }
  std::map<std::size_t, IntMatrix> action;
  action[g.identity_of(0)] = IntMatrix::identity(m.ngens);
  for (const auto& [id, mat] : generator_action) {
    std::size_t f = g.morphism_index(id);
    if (mat.rows() != m.ngens || mat.cols() != m.ngens || !hom_well_defined(m, m, mat))
      throw InputError("from_group_module: action of '" + id +
                       "' is not an endomorphism of the module");
    auto [it, fresh] = action.emplace(f, mat);
    if (!fresh && !hom_equal(GroupHom{m, m, it->second}, GroupHom{m, m, mat}))
      throw InputError("from_group_module: conflicting action for '" + id + "'");
  }
  // Close under composition; detect conflicts with the group's relations.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [f1, a1] : action)
      for (const auto& [f2, a2] : action) {
        std::size_t h = g.compose(f1, f2);
        IntMatrix prod = mul(a1, a2);
        auto it = action.find(h);
        if (it == action.end()) {
          action.emplace(h, std::move(prod));
          changed = true;
          // The maps were invalidated by insertion; restart the sweep.
          goto restart;
        }
        if (!hom_equal(GroupHom{m, m, it->second}, GroupHom{m, m, prod}))
          throw InputError("from_group_module: action violates the relation '" +
                           g.morphism_id(f1) + "' o '" + g.morphism_id(f2) + "' = '" +
                           g.morphism_id(h) + "'");
      }
  restart:;
  }
  for (std::size_t f = 0; f < g.nmor(); ++f)
    if (!action.count(f))
      throw InputError("from_group_module: morphism '" + g.morphism_id(f) +
                       "' is not generated by the given action");
  NaturalSystem d;
  d.base = g;
  d.value.assign(g.nmor(), m);
  IntMatrix id = IntMatrix::identity(m.ngens);
  for (std::size_t f = 0; f < g.nmor(); ++f)
    for (std::size_t a = 0; a < g.nmor(); ++a) {
      if (g.composable(f, a)) d.pre[{a, f}] = id;
      if (g.composable(a, f)) d.post[{a, f}] = action.at(a);
    }
  return d;
}

NaturalSystem pullback(const FinFunctor& f, const NaturalSystem& dprime) {
  NaturalSystem d;
  d.base = f.src;
  d.value.resize(f.src.nmor());
  for (std::size_t m = 0; m < f.src.nmor(); ++m) d.value[m] = dprime.value[f.mmap[m]];
  for (std::size_t m = 0; m < f.src.nmor(); ++m)
    for (std::size_t a = 0; a < f.src.nmor(); ++a) {
      if (f.src.composable(m, a)) d.pre[{a, m}] = dprime.pre.at({f.mmap[a], f.mmap[m]});
      if (f.src.composable(a, m)) d.post[{a, m}] = dprime.post.at({f.mmap[a], f.mmap[m]});
    }
  return d;
}

const CartesianCheck* CartesianReport::first_failure() const {
  for (const auto& ch : checks)
    if (!ch.ok) return &ch;
  return nullptr;
}

namespace {

// (pi1_*, pi2_*) : D_f -> D_{pi1 o f} + D_{pi2 o f} for f into the cone object.
GroupHom product_comparison(const NaturalSystem& d, const ProductCone& cone,
                            std::size_t f, DirectSum& sum_out) {
  const FinCategory& c = d.base;
  GroupHom h1 = d.post_hom(cone.p1, f);
  GroupHom h2 = d.post_hom(cone.p2, f);
  sum_out = direct_sum({h1.dst, h2.dst});
  GroupHom i1 = compose(sum_out.inclusions[0], h1);
  GroupHom i2 = compose(sum_out.inclusions[1], h2);
  (void)c;
  return add(i1, i2);
}

}  // namespace

CartesianReport is_cartesian(const NaturalSystem& d, const CCStructure& s) {
  const FinCategory& c = d.base;
  CartesianReport rep;
  if (s.terminal) {
    for (std::size_t f = 0; f < c.nmor(); ++f) {
      if (c.tgt(f) != *s.terminal) continue;
      bool ok = is_trivial_group(d.value[f]);
      rep.checks.push_back(
          {CartesianCheck::nullary, f, {*s.terminal, *s.terminal}, ok,
           ok ? "" : "D_" + c.morphism_id(f) + " = " + format_group(d.value[f]) +
                         " is nonzero but '" + c.morphism_id(f) + "' lands in the terminal"});
      if (!ok) rep.overall = false;
    }
  }
  for (const auto& [key, cone] : s.products) {
    for (std::size_t f = 0; f < c.nmor(); ++f) {
      if (c.tgt(f) != cone.object) continue;
      DirectSum sum;
      GroupHom cmp = product_comparison(d, cone, f, sum);
      bool ok = is_isomorphism(cmp);
      rep.checks.push_back(
          {CartesianCheck::binary, f, key, ok,
           ok ? ""
              : "(pi1_*, pi2_*) : D_" + c.morphism_id(f) + " -> " +
                    format_group(sum.group) + " with matrix " + cmp.matrix.to_string() +
                    " is not an isomorphism"});
      if (!ok) rep.overall = false;
    }
  }
  return rep;
}

CartesianReport is_cartesian_closed(const NaturalSystem& d, const CCStructure& s) {
  const FinCategory& c = d.base;
  CartesianReport cart = is_cartesian(d, s);
  if (!cart.overall) {
    cart.precondition_failed = true;
    return cart;
  }
  CartesianReport rep = cart;  // keep the cartesian verdicts in the report
  for (const auto& [key, e] : s.exponentials) {
    const ProductCone& ey = s.product(e.object, key.first);  // (Z^Y, Y)
    for (std::size_t h = 0; h < c.nmor(); ++h) {
      if (c.tgt(h) != e.object) continue;
      std::size_t x = c.src(h), y = key.first;
      const ProductCone& xy = s.product(x, y);
      // h x 1_Y and the two transported morphisms.
      std::size_t hx1 = pairing(s, c.compose(h, xy.p1), xy.p2);
      std::size_t h_p1 = c.compose(h, xy.p1);  // = pi1 o (h x 1)
      // Cartesian comparison at h x 1 through the cone (Z^Y, Y); invertible
      // by the cartesian precondition.
      DirectSum sum;
      GroupHom cmp = product_comparison(d, ey, hx1, sum);
      GroupHom cmp_inv = hom_inverse(cmp);
      // D_h -> D_{h o pi1} + D_{pi2}, second component zero.
      GroupHom first = compose(sum.inclusions[0], d.pre_hom(xy.p1, h));
      (void)h_p1;
      // ev_* after the inverse.
      GroupHom phi = compose(cmp_inv, first);
      GroupHom full = compose(d.post_hom(e.ev, hx1), phi);
      bool ok = is_isomorphism(full);
      rep.checks.push_back(
          {CartesianCheck::exponential, h, key, ok,
           ok ? ""
              : "exponential comparison D_" + c.morphism_id(h) + " -> D_" +
                    c.morphism_id(c.compose(e.ev, hx1)) + " with matrix " +
                    full.matrix.to_string() + " is not an isomorphism"});
      if (!ok) rep.overall = false;
    }
  }
  return rep;
}

}  // namespace catcoh
