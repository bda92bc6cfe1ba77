#include "catcoh/families.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace catcoh {

FinCategory terminal_category() {
  FinCategory c;
  c.add_object("x");
  c.add_morphism("id_x", "x", "x");
  c.set_identity("x", "id_x");
  c.finalize();
  return c;
}

namespace {
std::string le_name(std::size_t i, std::size_t j) {
  return "le_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string cyc_name(std::size_t t) {
  return t == 0 ? "e" : "g" + std::to_string(t);
}
}  // namespace

FinCategory chain_poset(std::size_t n) {
  FinCategory c;
  for (std::size_t i = 0; i < n; ++i) c.add_object("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      c.add_morphism(le_name(i, j), "v" + std::to_string(i), "v" + std::to_string(j));
  for (std::size_t i = 0; i < n; ++i) c.set_identity("v" + std::to_string(i), le_name(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        c.set_compose(le_name(j, k), le_name(i, j), le_name(i, k));
  c.finalize();
  return c;
}

FinCategory cyclic_group_category(std::size_t k) {
  FinCategory c;
  c.add_object("x");
  for (std::size_t t = 0; t < k; ++t) c.add_morphism(cyc_name(t), "x", "x");
  c.set_identity("x", "e");
  for (std::size_t t1 = 0; t1 < k; ++t1)
    for (std::size_t t2 = 0; t2 < k; ++t2)
      c.set_compose(cyc_name(t1), cyc_name(t2), cyc_name((t1 + t2) % k));
  c.finalize();
  return c;
}

CCStructure chain_heyting_ccc(std::size_t n) {
  CCStructure s;
  s.base = chain_poset(n);
  const FinCategory& c = s.base;
  s.terminal = c.object_index("v" + std::to_string(n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t m = std::min(i, j);
      ProductCone cone;
      cone.object = c.object_index("v" + std::to_string(m));
      cone.p1 = c.morphism_index(le_name(m, i));
      cone.p2 = c.morphism_index(le_name(m, j));
      s.products[{c.object_index("v" + std::to_string(i)),
                  c.object_index("v" + std::to_string(j))}] = cone;
    }
  // z^y = top when y <= z, else z; ev: (z^y) & y -> z.
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) {
      std::size_t e = y <= z ? n - 1 : z;
      std::size_t m = std::min(e, y);
      ExpCone cone;
      cone.object = c.object_index("v" + std::to_string(e));
      cone.ev = c.morphism_index(le_name(m, z));
      s.exponentials[{c.object_index("v" + std::to_string(y)),
                      c.object_index("v" + std::to_string(z))}] = cone;
    }
  return s;
}

namespace {
std::string clone_name(std::size_t i, std::size_t j, std::size_t t) {
  return "h_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(t);
}
}  // namespace

FinCategory group_clone_category(std::size_t k, std::size_t nobj) {
  FinCategory c;
  for (std::size_t i = 0; i < nobj; ++i) c.add_object("o" + std::to_string(i));
  for (std::size_t i = 0; i < nobj; ++i)
    for (std::size_t j = 0; j < nobj; ++j)
      for (std::size_t t = 0; t < k; ++t)
        c.add_morphism(clone_name(i, j, t), "o" + std::to_string(i),
                       "o" + std::to_string(j));
  for (std::size_t i = 0; i < nobj; ++i)
    c.set_identity("o" + std::to_string(i), clone_name(i, i, 0));
  for (std::size_t i = 0; i < nobj; ++i)
    for (std::size_t j = 0; j < nobj; ++j)
      for (std::size_t l = 0; l < nobj; ++l)
        for (std::size_t t1 = 0; t1 < k; ++t1)
          for (std::size_t t2 = 0; t2 < k; ++t2)
            c.set_compose(clone_name(j, l, t2), clone_name(i, j, t1),
                          clone_name(i, l, (t1 + t2) % k));
  c.finalize();
  return c;
}

FinFunctor group_clone_inclusion(std::size_t k, std::size_t nobj) {
  FinFunctor f;
  f.src = cyclic_group_category(k);
  f.dst = group_clone_category(k, nobj);
  f.omap.assign(1, f.dst.object_index("o0"));
  f.mmap.resize(k);
  for (std::size_t t = 0; t < k; ++t)
    f.mmap[f.src.morphism_index(cyc_name(t))] = f.dst.morphism_index(clone_name(0, 0, t));
  return f;
}

FreeCategory free_dag_category(
    std::size_t nobj, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  for (const auto& [u, v] : edges)
    if (u >= nobj || v >= nobj) throw InputError("free_dag_category: edge out of range");
  // Reject cycles before enumerating paths; a cyclic graph has unboundedly
  // long paths and the enumeration below would never terminate.
  {
    std::vector<int> color(nobj, 0);  // 0 unvisited, 1 on stack, 2 done
    auto dfs = [&](auto&& self, std::size_t u) -> void {
      color[u] = 1;
      for (const auto& [a, b] : edges)
        if (a == u) {
          if (color[b] == 1)
            throw InputError("free_dag_category: graph must be acyclic");
          if (color[b] == 0) self(self, b);
        }
      color[u] = 2;
    };
    for (std::size_t u = 0; u < nobj; ++u)
      if (color[u] == 0) dfs(dfs, u);
  }
  // All nonempty edge paths, by depth-first extension; a cap bounds the size.
  std::vector<std::vector<std::size_t>> paths;
  auto extend = [&](auto&& self, std::vector<std::size_t>& cur) -> void {
    if (paths.size() > 100000)
      throw InputError("free_dag_category: path count explodes; graph must be acyclic");
    std::size_t at = edges[cur.back()].second;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].first == at) {
        cur.push_back(e);
        paths.push_back(cur);
        self(self, cur);
        cur.pop_back();
      }
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::vector<std::size_t> cur{e};
    paths.push_back(cur);
    extend(extend, cur);
  }

  auto path_name = [&](const std::vector<std::size_t>& p) {
    std::string s = "p";
    for (std::size_t i = 0; i < p.size(); ++i)
      s += (i ? "_" : "") + std::to_string(p[i]);
    return s;
  };
  FreeCategory fc;
  FinCategory& c = fc.cat;
  for (std::size_t i = 0; i < nobj; ++i) c.add_object("o" + std::to_string(i));
  for (std::size_t i = 0; i < nobj; ++i) {
    c.add_morphism("id_o" + std::to_string(i), "o" + std::to_string(i),
                   "o" + std::to_string(i));
    c.set_identity("o" + std::to_string(i), "id_o" + std::to_string(i));
  }
  std::map<std::vector<std::size_t>, std::string> names;
  for (const auto& p : paths) {
    names[p] = path_name(p);
    c.add_morphism(names[p], "o" + std::to_string(edges[p.front()].first),
                   "o" + std::to_string(edges[p.back()].second));
  }
  for (const auto& pf : paths)
    for (const auto& pg : paths) {
      if (edges[pf.back()].second != edges[pg.front()].first) continue;
      std::vector<std::size_t> cat_path = pf;
      cat_path.insert(cat_path.end(), pg.begin(), pg.end());
      c.set_compose(names.at(pg), names.at(pf), names.at(cat_path));
    }
  c.finalize();
  for (std::size_t e = 0; e < edges.size(); ++e)
    fc.generators.push_back(c.morphism_index(path_name({e})));
  return fc;
}

std::vector<FinCategory> small_category_catalog() {
  std::vector<FinCategory> cats;
  cats.push_back(terminal_category());
  cats.push_back(chain_poset(2));
  cats.push_back(cyclic_group_category(2));
  cats.push_back(cyclic_group_category(3));
  cats.push_back(cyclic_group_category(4));
  cats.push_back(free_dag_category(2, {{0, 1}, {0, 1}}).cat);  // parallel pair
  return cats;
}

NaturalSystem hom_functor_system(const FinCategory& c, std::size_t a0, std::size_t b0,
                                 long mod, bool covariant, bool contravariant) {
  if (!covariant && !contravariant)
    throw InputError("hom_functor_system: at least one variance required");
  // Basis of the covariant part at x: hom(a0, x); contravariant: hom(x, b0).
  std::vector<std::vector<std::size_t>> cov(c.nobj()), con(c.nobj());
  std::vector<std::map<std::size_t, std::size_t>> cov_pos(c.nobj()), con_pos(c.nobj());
  for (std::size_t x = 0; x < c.nobj(); ++x) {
    if (covariant) {
      cov[x] = c.hom_set(a0, x);
      for (std::size_t i = 0; i < cov[x].size(); ++i) cov_pos[x][cov[x][i]] = i;
    }
    if (contravariant) {
      con[x] = c.hom_set(x, b0);
      for (std::size_t i = 0; i < con[x].size(); ++i) con_pos[x][con[x][i]] = i;
    }
  }
  auto dims = [&](std::size_t f) {
    return std::make_pair(cov[c.tgt(f)].size(), con[c.src(f)].size());
  };
  NaturalSystem d;
  d.base = c;
  for (std::size_t f = 0; f < c.nmor(); ++f) {
    auto [nc, nn] = dims(f);
    std::size_t n = nc + nn;
    IntMatrix rels(n, mod > 0 ? n : 0);
    if (mod > 0)
      for (std::size_t i = 0; i < n; ++i) rels.at(i, i) = mod;
    d.value.emplace_back(n, rels);
  }
  for (std::size_t f = 0; f < c.nmor(); ++f) {
    auto [nc, nn] = dims(f);
    for (std::size_t b = 0; b < c.nmor(); ++b) {
      if (c.src(b) != c.tgt(f)) continue;
      std::size_t bf = c.compose(b, f);
      auto [mc, mn] = dims(bf);
      IntMatrix m(mc + mn, nc + nn);
      for (std::size_t i = 0; i < nc; ++i)
        m.at(cov_pos[c.tgt(b)].at(c.compose(b, cov[c.tgt(f)][i])), i) = 1;
      for (std::size_t i = 0; i < nn; ++i) m.at(mc + i, nc + i) = 1;
      d.post[{b, f}] = m;
    }
    for (std::size_t a = 0; a < c.nmor(); ++a) {
      if (c.tgt(a) != c.src(f)) continue;
      std::size_t fa = c.compose(f, a);
      auto [mc, mn] = dims(fa);
      IntMatrix m(mc + mn, nc + nn);
      for (std::size_t i = 0; i < nc; ++i) m.at(i, i) = 1;
      for (std::size_t i = 0; i < nn; ++i)
        m.at(mc + con_pos[c.src(a)].at(c.compose(con[c.src(f)][i], a)), nc + i) = 1;
      d.pre[{a, f}] = m;
    }
  }
  return d;
}

NaturalSystem unimodular_twist(const NaturalSystem& d, std::mt19937_64& rng,
                               int ops_per_group) {
  const FinCategory& c = d.base;
  std::vector<IntMatrix> u, uinv;
  for (std::size_t f = 0; f < c.nmor(); ++f) {
    std::size_t n = d.value[f].ngens;
    IntMatrix uf = IntMatrix::identity(n), vf = IntMatrix::identity(n);
    if (n >= 2) {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::uniform_int_distribution<int> coef(-2, 2);
      for (int k = 0; k < ops_per_group; ++k) {
        std::size_t i = pick(rng), j = pick(rng);
        int cc = coef(rng);
        if (i == j || cc == 0) continue;
        for (std::size_t r = 0; r < n; ++r) uf.at(r, j) += cc * uf.at(r, i);
        for (std::size_t r = 0; r < n; ++r) vf.at(i, r) -= cc * vf.at(j, r);
      }
    }
    u.push_back(uf);
    uinv.push_back(vf);
  }
  NaturalSystem out;
  out.base = c;
  for (std::size_t f = 0; f < c.nmor(); ++f)
    out.value.emplace_back(d.value[f].ngens, mul(uinv[f], d.value[f].relations));
  for (const auto& [key, m] : d.post)
    out.post[key] = mul(uinv[c.compose(key.first, key.second)], mul(m, u[key.second]));
  for (const auto& [key, m] : d.pre)
    out.pre[key] = mul(uinv[c.compose(key.second, key.first)], mul(m, u[key.second]));
  return out;
}

NaturalSystem random_natural_system(const FinCategory& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> obj(0, c.nobj() - 1);
  const long mods[] = {0, 2, 3, 4};
  std::uniform_int_distribution<int> modpick(0, 3), flag(0, 2), coin(0, 1);
  int variance = flag(rng);  // 0 cov, 1 con, 2 both
  NaturalSystem d = hom_functor_system(c, obj(rng), obj(rng), mods[modpick(rng)],
                                       variance != 1, variance != 0);
  if (coin(rng)) d = unimodular_twist(d, rng);
  return d;
}

InvariantFactors cyclic_group_cohomology(std::size_t k, const FPAbelianGroup& m,
                                         const IntMatrix& t, std::size_t n) {
  GroupHom th = make_hom(m, m, t);
  GroupHom power = identity_hom(m);
  for (std::size_t i = 0; i < k; ++i) power = compose(th, power);
  if (!hom_equal(power, identity_hom(m)))
    throw InputError("cyclic_group_cohomology: generator action has wrong order");
  IntMatrix tm1 = sub(t, IntMatrix::identity(m.ngens));
  IntMatrix norm(m.ngens, m.ngens);
  {
    IntMatrix p = IntMatrix::identity(m.ngens);
    for (std::size_t i = 0; i < k; ++i) {
      norm = add(norm, p);
      p = mul(t, p);
    }
  }
  const IntMatrix& r = m.relations;
  FPAbelianGroup h = zero_group();
  if (n == 0)
    h = subquotient_presentation(colspan_preimage(tm1, r), r);
  else if (n % 2 == 1)
    h = subquotient_presentation(colspan_preimage(norm, r), hstack(tm1, r));
  else
    h = subquotient_presentation(colspan_preimage(tm1, r), hstack(norm, r));
  return invariant_factors(h);
}

}  // namespace catcoh
