#include "catcoh/fincat.hpp"

#include <algorithm>

namespace catcoh {

std::size_t FinCategory::add_object(const std::string& id) {
  if (finalized_) throw InputError("category is finalized");
  if (obj_index_.count(id)) throw InputError("duplicate object id '" + id + "'");
  obj_index_[id] = objects_.size();
  objects_.push_back(id);
  return objects_.size() - 1;
}

std::size_t FinCategory::add_morphism(const std::string& id, const std::string& src,
                                      const std::string& tgt) {
  if (finalized_) throw InputError("category is finalized");
  if (mor_index_.count(id)) throw InputError("duplicate morphism id '" + id + "'");
  Mor m;
  m.id = id;
  m.src = object_index(src);
  m.tgt = object_index(tgt);
  mor_index_[id] = morphisms_.size();
  morphisms_.push_back(std::move(m));
  return morphisms_.size() - 1;
}

void FinCategory::set_identity(const std::string& obj, const std::string& mor) {
  if (finalized_) throw InputError("category is finalized");
  identity_.resize(objects_.size(), npos);
  identity_[object_index(obj)] = morphism_index(mor);
}

void FinCategory::set_compose(const std::string& g, const std::string& f,
                              const std::string& gf) {
  if (finalized_) throw InputError("category is finalized");
  table_.resize(morphisms_.size() * morphisms_.size(), npos);
  table_[morphism_index(g) * morphisms_.size() + morphism_index(f)] = morphism_index(gf);
}

void FinCategory::finalize() {
  if (finalized_) return;
  identity_.resize(objects_.size(), npos);
  table_.resize(morphisms_.size() * morphisms_.size(), npos);
  // Identity composites are implied: id o f = f and g o id = g.
  for (std::size_t x = 0; x < objects_.size(); ++x) {
    std::size_t e = identity_[x];
    if (e == npos) continue;
    for (std::size_t m = 0; m < morphisms_.size(); ++m) {
      if (morphisms_[m].tgt == x && table_[e * morphisms_.size() + m] == npos)
        table_[e * morphisms_.size() + m] = m;
      if (morphisms_[m].src == x && table_[m * morphisms_.size() + e] == npos)
        table_[m * morphisms_.size() + e] = m;
    }
  }
  hom_.assign(objects_.size() * objects_.size(), {});
  by_id_.resize(morphisms_.size());
  for (std::size_t m = 0; m < morphisms_.size(); ++m) by_id_[m] = m;
  std::sort(by_id_.begin(), by_id_.end(), [&](std::size_t a, std::size_t b) {
    return morphisms_[a].id < morphisms_[b].id;
  });
  for (std::size_t m : by_id_)
    hom_[morphisms_[m].src * objects_.size() + morphisms_[m].tgt].push_back(m);
  finalized_ = true;
}

bool FinCategory::is_identity(std::size_t m) const {
  return identity_[morphisms_[m].src] == m && morphisms_[m].src == morphisms_[m].tgt;
}

bool FinCategory::composable(std::size_t g, std::size_t f) const {
  return morphisms_[f].tgt == morphisms_[g].src;
}

std::size_t FinCategory::compose(std::size_t g, std::size_t f) const {
  if (!composable(g, f))
    throw InputError("compose: '" + morphisms_[g].id + "' after '" + morphisms_[f].id +
                     "' is not composable");
  std::size_t r = table_[g * morphisms_.size() + f];
  if (r == npos)
    throw InputError("compose: composite of '" + morphisms_[g].id + "' after '" +
                     morphisms_[f].id + "' is not defined");
  return r;
}

std::size_t FinCategory::object_index(const std::string& id) const {
  auto it = obj_index_.find(id);
  if (it == obj_index_.end()) throw InputError("unknown object '" + id + "'");
  return it->second;
}

std::size_t FinCategory::morphism_index(const std::string& id) const {
  auto it = mor_index_.find(id);
  if (it == mor_index_.end()) throw InputError("unknown morphism '" + id + "'");
  return it->second;
}

const std::vector<std::size_t>& FinCategory::hom_set(std::size_t src,
                                                     std::size_t tgt) const {
  return hom_[src * objects_.size() + tgt];
}

std::optional<CategoryViolation> validate_category(const FinCategory& c) {
  if (!c.finalized()) throw InputError("validate_category: category not finalized");
  for (std::size_t x = 0; x < c.nobj(); ++x) {
    std::size_t e = c.identity_of(x);
    if (e == FinCategory::npos)
      return CategoryViolation{CategoryViolation::missing_identity, {x},
                               "object '" + c.object_id(x) + "' has no identity"};
    if (c.src(e) != x || c.tgt(e) != x)
      return CategoryViolation{CategoryViolation::identity_typing, {e},
                               "identity of '" + c.object_id(x) + "' has wrong endpoints"};
  }
  for (std::size_t g = 0; g < c.nmor(); ++g)
    for (std::size_t f = 0; f < c.nmor(); ++f) {
      std::size_t gf = c.compose_raw(g, f);
      if (!c.composable(g, f)) {
        if (gf != FinCategory::npos)
          return CategoryViolation{
              CategoryViolation::composite_typing, {g, f},
              "composite defined for non-composable pair ('" + c.morphism_id(g) +
                  "', '" + c.morphism_id(f) + "')"};
        continue;
      }
      if (gf == FinCategory::npos)
        return CategoryViolation{CategoryViolation::missing_composite, {g, f},
                                 "missing composite '" + c.morphism_id(g) + "' o '" +
                                     c.morphism_id(f) + "'"};
      if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
        return CategoryViolation{CategoryViolation::composite_typing, {g, f, gf},
                                 "composite '" + c.morphism_id(gf) + "' has wrong endpoints"};
    }
  for (std::size_t f = 0; f < c.nmor(); ++f) {
    std::size_t lid = c.identity_of(c.tgt(f)), rid = c.identity_of(c.src(f));
    if (c.compose_raw(lid, f) != f)
      return CategoryViolation{CategoryViolation::left_unit, {lid, f},
                               "id o '" + c.morphism_id(f) + "' != '" + c.morphism_id(f) + "'"};
    if (c.compose_raw(f, rid) != f)
      return CategoryViolation{CategoryViolation::right_unit, {f, rid},
                               "'" + c.morphism_id(f) + "' o id != '" + c.morphism_id(f) + "'"};
  }
  for (std::size_t h = 0; h < c.nmor(); ++h)
    for (std::size_t g = 0; g < c.nmor(); ++g) {
      if (!c.composable(h, g)) continue;
      std::size_t hg = c.compose_raw(h, g);
      for (std::size_t f = 0; f < c.nmor(); ++f) {
        if (!c.composable(g, f)) continue;
        std::size_t gf = c.compose_raw(g, f);
        if (c.compose_raw(hg, f) != c.compose_raw(h, gf))
          return CategoryViolation{
              CategoryViolation::associativity, {h, g, f},
              "('" + c.morphism_id(h) + "' o '" + c.morphism_id(g) + "') o '" +
                  c.morphism_id(f) + "' differs from '" + c.morphism_id(h) + "' o ('" +
                  c.morphism_id(g) + "' o '" + c.morphism_id(f) + "')"};
      }
    }
  return std::nullopt;
}

std::optional<std::string> validate_functor(const FinFunctor& f) {
  if (f.omap.size() != f.src.nobj() || f.mmap.size() != f.src.nmor())
    return "functor maps have wrong lengths";
  for (std::size_t m = 0; m < f.src.nmor(); ++m) {
    std::size_t fm = f.mmap[m];
    if (fm >= f.dst.nmor()) return "morphism image out of range";
    if (f.dst.src(fm) != f.omap[f.src.src(m)] || f.dst.tgt(fm) != f.omap[f.src.tgt(m)])
      return "image of '" + f.src.morphism_id(m) + "' has wrong endpoints";
  }
  for (std::size_t x = 0; x < f.src.nobj(); ++x)
    if (f.mmap[f.src.identity_of(x)] != f.dst.identity_of(f.omap[x]))
      return "identity of '" + f.src.object_id(x) + "' not preserved";
  for (std::size_t g = 0; g < f.src.nmor(); ++g)
    for (std::size_t m = 0; m < f.src.nmor(); ++m) {
      if (!f.src.composable(g, m)) continue;
      if (f.mmap[f.src.compose(g, m)] != f.dst.compose(f.mmap[g], f.mmap[m]))
        return "composite '" + f.src.morphism_id(g) + "' o '" + f.src.morphism_id(m) +
               "' not preserved";
    }
  return std::nullopt;
}

bool is_full(const FinFunctor& f) {
  for (std::size_t x = 0; x < f.src.nobj(); ++x)
    for (std::size_t y = 0; y < f.src.nobj(); ++y) {
      const auto& target = f.dst.hom_set(f.omap[x], f.omap[y]);
      for (std::size_t tm : target) {
        bool hit = false;
        for (std::size_t m : f.src.hom_set(x, y))
          if (f.mmap[m] == tm) {
            hit = true;
            break;
          }
        if (!hit) return false;
      }
    }
  return true;
}

bool is_faithful(const FinFunctor& f) {
  for (std::size_t x = 0; x < f.src.nobj(); ++x)
    for (std::size_t y = 0; y < f.src.nobj(); ++y) {
      const auto& hs = f.src.hom_set(x, y);
      for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j)
          if (f.mmap[hs[i]] == f.mmap[hs[j]]) return false;
    }
  return true;
}

namespace {

bool objects_isomorphic(const FinCategory& c, std::size_t x, std::size_t y) {
  for (std::size_t f : c.hom_set(x, y))
    for (std::size_t g : c.hom_set(y, x))
      if (c.compose(g, f) == c.identity_of(x) && c.compose(f, g) == c.identity_of(y))
        return true;
  return false;
}

}  // namespace

bool is_essentially_surjective(const FinFunctor& f) {
  for (std::size_t y = 0; y < f.dst.nobj(); ++y) {
    bool hit = false;
    for (std::size_t x = 0; x < f.src.nobj() && !hit; ++x)
      hit = objects_isomorphic(f.dst, f.omap[x], y);
    if (!hit) return false;
  }
  return true;
}

bool is_equivalence(const FinFunctor& f) {
  return is_full(f) && is_faithful(f) && is_essentially_surjective(f);
}

FactorizationCategory factorization_category(const FinCategory& c) {
  if (!c.finalized()) throw InputError("factorization_category: category not finalized");
  FactorizationCategory fc;
  // Objects: one per morphism of c.
  for (std::size_t m : c.morphisms_by_id()) {
    fc.cat.add_object(c.morphism_id(m));
    fc.object_to_base.push_back(m);
  }
  // Morphisms f -> g: pairs (a, b) with b o f o a = g, where
  // a : src(g) -> src(f) and b : tgt(f) -> tgt(g).
  struct Key {
    std::size_t a, b, from, to;
  };
  std::vector<Key> keys;
  for (std::size_t fi = 0; fi < fc.object_to_base.size(); ++fi) {
    std::size_t f = fc.object_to_base[fi];
    for (std::size_t gi = 0; gi < fc.object_to_base.size(); ++gi) {
      std::size_t g = fc.object_to_base[gi];
      for (std::size_t a : c.hom_set(c.src(g), c.src(f)))
        for (std::size_t b : c.hom_set(c.tgt(f), c.tgt(g)))
          if (c.compose(b, c.compose(f, a)) == g) keys.push_back({a, b, f, g});
    }
  }
  std::map<std::pair<std::size_t, std::size_t>,
           std::map<std::pair<std::size_t, std::size_t>, std::size_t>>
      index;  // (from, to) -> (a, b) -> FC morphism
  for (const Key& k : keys) {
    std::string id = "(" + c.morphism_id(k.a) + "," + c.morphism_id(k.b) + "):" +
                     c.morphism_id(k.from) + ">" + c.morphism_id(k.to);
    fc.cat.add_morphism(id, c.morphism_id(k.from), c.morphism_id(k.to));
    fc.arrows.push_back({k.a, k.b, k.from, k.to});
    index[{k.from, k.to}][{k.a, k.b}] = fc.arrows.size() - 1;
  }
  for (std::size_t fi = 0; fi < fc.object_to_base.size(); ++fi) {
    std::size_t f = fc.object_to_base[fi];
    std::size_t e = index.at({f, f}).at({c.identity_of(c.src(f)), c.identity_of(c.tgt(f))});
    fc.cat.set_identity(c.morphism_id(f), fc.cat.morphism(e).id);
  }
  // Composition: (a', b') o (a, b) = (a o a', b' o b).
  for (std::size_t m2 = 0; m2 < fc.arrows.size(); ++m2)
    for (std::size_t m1 = 0; m1 < fc.arrows.size(); ++m1) {
      const auto& s = fc.arrows[m1];  // f -> g
      const auto& t = fc.arrows[m2];  // g -> h
      if (s.to != t.from) continue;
      std::size_t a = c.compose(s.a, t.a);
      std::size_t b = c.compose(t.b, s.b);
      std::size_t comp = index.at({s.from, t.to}).at({a, b});
      fc.cat.set_compose(fc.cat.morphism(m2).id, fc.cat.morphism(m1).id,
                         fc.cat.morphism(comp).id);
    }
  fc.cat.finalize();
  return fc;
}

std::vector<NerveTuple> nerve(const FinCategory& c, std::size_t degree,
                              std::size_t max_tuples) {
  if (!c.finalized()) throw InputError("nerve: category not finalized");
  std::vector<NerveTuple> out;
  if (degree == 0) {
    std::vector<std::size_t> objs(c.nobj());
    for (std::size_t x = 0; x < c.nobj(); ++x) objs[x] = x;
    std::sort(objs.begin(), objs.end(), [&](std::size_t a, std::size_t b) {
      return c.object_id(a) < c.object_id(b);
    });
    for (std::size_t x : objs) out.push_back(NerveTuple{{}, c.identity_of(x)});
    return out;
  }
  // Build tuples (l1, ..., ln) with tgt(l_{i+1}) = src(l_i), iterating each
  // slot in id order so the result is already lexicographic by morphism id.
  NerveTuple cur;
  cur.mors.resize(degree);
  auto rec = [&](auto&& self, std::size_t slot) -> void {
    if (slot == degree) {
      NerveTuple t = cur;
      std::size_t comp = t.mors[degree - 1];
      for (std::size_t i = degree - 1; i-- > 0;) comp = c.compose(t.mors[i], comp);
      t.composite = comp;
      out.push_back(std::move(t));
      if (out.size() > max_tuples)
        throw LimitError("nerve: tuple count exceeds cap of " + std::to_string(max_tuples));
      return;
    }
    for (std::size_t m : c.morphisms_by_id()) {
      if (slot > 0 && c.tgt(m) != c.src(cur.mors[slot - 1])) continue;
      cur.mors[slot] = m;
      self(self, slot + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace catcoh
