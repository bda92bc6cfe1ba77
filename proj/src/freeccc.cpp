#include "catcoh/freeccc.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace catcoh {

ObjPtr obj_sort(const std::string& name) {
  auto o = std::make_shared<ObjExpr>();
  o->kind = ObjExpr::Kind::sort;
  o->name = name;
  return o;
}
ObjPtr obj_unit() {
  auto o = std::make_shared<ObjExpr>();
  o->kind = ObjExpr::Kind::unit;
  return o;
}
ObjPtr obj_prod(ObjPtr a, ObjPtr b) {
  auto o = std::make_shared<ObjExpr>();
  o->kind = ObjExpr::Kind::prod;
  o->a = std::move(a);
  o->b = std::move(b);
  return o;
}
ObjPtr obj_exp(ObjPtr base, ObjPtr exponent) {
  auto o = std::make_shared<ObjExpr>();
  o->kind = ObjExpr::Kind::exp;
  o->a = std::move(base);
  o->b = std::move(exponent);
  return o;
}

bool obj_equal(const ObjPtr& a, const ObjPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ObjExpr::Kind::sort:
      return a->name == b->name;
    case ObjExpr::Kind::unit:
      return true;
    default:
      return obj_equal(a->a, b->a) && obj_equal(a->b, b->b);
  }
}

namespace {
// Precedence levels for printing: atoms 3, ^ 2, * 1.
int obj_level(const ObjPtr& o) {
  switch (o->kind) {
    case ObjExpr::Kind::prod:
      return 1;
    case ObjExpr::Kind::exp:
      return 2;
    default:
      return 3;
  }
}
void print_obj(const ObjPtr& o, int minlevel, std::string& out) {
  bool paren = obj_level(o) < minlevel;
  if (paren) out += "(";
  switch (o->kind) {
    case ObjExpr::Kind::sort:
      out += o->name;
      break;
    case ObjExpr::Kind::unit:
      out += "1";
      break;
    case ObjExpr::Kind::prod:
      print_obj(o->a, 1, out);
      out += " * ";
      print_obj(o->b, 2, out);
      break;
    case ObjExpr::Kind::exp:
      print_obj(o->a, 3, out);
      out += " ^ ";
      print_obj(o->b, 2, out);
      break;
  }
  if (paren) out += ")";
}
}  // namespace

std::string obj_to_string(const ObjPtr& o) {
  std::string s;
  print_obj(o, 0, s);
  return s;
}

namespace {
std::shared_ptr<MorExpr> mknode(MorExpr::Kind k) {
  auto m = std::make_shared<MorExpr>();
  m->kind = k;
  return m;
}
}  // namespace

MorPtr mor_gen(const std::string& name) {
  auto m = mknode(MorExpr::Kind::gen);
  m->name = name;
  return m;
}
MorPtr mor_id(ObjPtr a) {
  auto m = mknode(MorExpr::Kind::id);
  m->ta = std::move(a);
  return m;
}
MorPtr mor_bang(ObjPtr a) {
  auto m = mknode(MorExpr::Kind::bang);
  m->ta = std::move(a);
  return m;
}
MorPtr mor_proj1(ObjPtr a, ObjPtr b) {
  auto m = mknode(MorExpr::Kind::proj1);
  m->ta = std::move(a);
  m->tb = std::move(b);
  return m;
}
MorPtr mor_proj2(ObjPtr a, ObjPtr b) {
  auto m = mknode(MorExpr::Kind::proj2);
  m->ta = std::move(a);
  m->tb = std::move(b);
  return m;
}
MorPtr mor_ev(ObjPtr y, ObjPtr z) {
  auto m = mknode(MorExpr::Kind::ev);
  m->ta = std::move(y);
  m->tb = std::move(z);
  return m;
}
MorPtr mor_comp(MorPtr outer, MorPtr inner) {
  auto m = mknode(MorExpr::Kind::comp);
  m->x = std::move(outer);
  m->y = std::move(inner);
  return m;
}
MorPtr mor_pair(MorPtr f, MorPtr g) {
  auto m = mknode(MorExpr::Kind::pair);
  m->x = std::move(f);
  m->y = std::move(g);
  return m;
}
MorPtr mor_curry(MorPtr f) {
  auto m = mknode(MorExpr::Kind::curry);
  m->x = std::move(f);
  return m;
}

bool mor_equal(const MorPtr& a, const MorPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  auto oeq = [](const ObjPtr& x, const ObjPtr& y) {
    return (!x && !y) || (x && y && obj_equal(x, y));
  };
  auto meq = [](const MorPtr& x, const MorPtr& y) {
    return (!x && !y) || (x && y && mor_equal(x, y));
  };
  return a->name == b->name && oeq(a->ta, b->ta) && oeq(a->tb, b->tb) &&
         meq(a->x, b->x) && meq(a->y, b->y);
}

namespace {
void print_mor_atom(const MorPtr& m, std::string& out);
void print_mor_chain(const MorPtr& m, std::string& out) {
  if (m->kind == MorExpr::Kind::comp) {
    // `.` parses left-associatively, so only a right operand needs parens
    print_mor_chain(m->x, out);
    out += " . ";
    if (m->y->kind == MorExpr::Kind::comp) {
      out += "(";
      print_mor_chain(m->y, out);
      out += ")";
    } else {
      print_mor_atom(m->y, out);
    }
  } else {
    print_mor_atom(m, out);
  }
}
void print_mor_atom(const MorPtr& m, std::string& out) {
  switch (m->kind) {
    case MorExpr::Kind::gen:
      out += m->name;
      break;
    case MorExpr::Kind::id:
      out += "id[" + obj_to_string(m->ta) + "]";
      break;
    case MorExpr::Kind::bang:
      out += "bang[" + obj_to_string(m->ta) + "]";
      break;
    case MorExpr::Kind::proj1:
      out += "p1[" + obj_to_string(m->ta) + ", " + obj_to_string(m->tb) + "]";
      break;
    case MorExpr::Kind::proj2:
      out += "p2[" + obj_to_string(m->ta) + ", " + obj_to_string(m->tb) + "]";
      break;
    case MorExpr::Kind::ev:
      out += "ev[" + obj_to_string(m->ta) + ", " + obj_to_string(m->tb) + "]";
      break;
    case MorExpr::Kind::pair:
      out += "<";
      print_mor_chain(m->x, out);
      out += ", ";
      print_mor_chain(m->y, out);
      out += ">";
      break;
    case MorExpr::Kind::curry:
      out += "curry(";
      print_mor_chain(m->x, out);
      out += ")";
      break;
    case MorExpr::Kind::comp:
      out += "(";
      print_mor_chain(m, out);
      out += ")";
      break;
  }
}
}  // namespace

std::string mor_to_string(const MorPtr& m) {
  std::string s;
  print_mor_chain(m, s);
  return s;
}

const CCSignature::Gen* CCSignature::find(const std::string& name) const {
  for (const auto& g : generators)
    if (g.name == name) return &g;
  return nullptr;
}

namespace {
void check_sorts(const CCSignature& sig, const ObjPtr& o) {
  switch (o->kind) {
    case ObjExpr::Kind::sort: {
      for (const auto& s : sig.sorts)
        if (s == o->name) return;
      throw InputError("unknown sort '" + o->name + "'");
    }
    case ObjExpr::Kind::unit:
      return;
    default:
      check_sorts(sig, o->a);
      check_sorts(sig, o->b);
  }
}
}  // namespace

void validate_signature(const CCSignature& sig) {
  std::set<std::string> seen;
  static const std::set<std::string> reserved = {"curry", "ev", "p1", "p2",
                                                "id", "bang"};
  for (const auto& s : sig.sorts)
    if (reserved.count(s) || s == "1")
      throw InputError("sort name '" + s + "' is reserved");
  for (const auto& g : sig.generators) {
    if (!seen.insert(g.name).second)
      throw InputError("duplicate generator name '" + g.name + "'");
    if (reserved.count(g.name))
      throw InputError("generator name '" + g.name + "' is reserved");
    check_sorts(sig, g.src);
    check_sorts(sig, g.tgt);
  }
}

std::pair<ObjPtr, ObjPtr> typecheck(const CCSignature& sig, const MorPtr& e) {
  switch (e->kind) {
    case MorExpr::Kind::gen: {
      const CCSignature::Gen* g = sig.find(e->name);
      if (!g) throw InputError("unknown generator '" + e->name + "'");
      return {g->src, g->tgt};
    }
    case MorExpr::Kind::id:
      check_sorts(sig, e->ta);
      return {e->ta, e->ta};
    case MorExpr::Kind::bang:
      check_sorts(sig, e->ta);
      return {e->ta, obj_unit()};
    case MorExpr::Kind::proj1:
      check_sorts(sig, e->ta);
      check_sorts(sig, e->tb);
      return {obj_prod(e->ta, e->tb), e->ta};
    case MorExpr::Kind::proj2:
      check_sorts(sig, e->ta);
      check_sorts(sig, e->tb);
      return {obj_prod(e->ta, e->tb), e->tb};
    case MorExpr::Kind::ev:
      check_sorts(sig, e->ta);
      check_sorts(sig, e->tb);
      return {obj_prod(obj_exp(e->tb, e->ta), e->ta), e->tb};
    case MorExpr::Kind::comp: {
      auto [sy, ty] = typecheck(sig, e->y);
      auto [sx, tx] = typecheck(sig, e->x);
      if (!obj_equal(ty, sx))
        throw InputError("composition mismatch: inner term has target " +
                         obj_to_string(ty) + " but outer term has source " +
                         obj_to_string(sx));
      return {sy, tx};
    }
    case MorExpr::Kind::pair: {
      auto [sx, tx] = typecheck(sig, e->x);
      auto [sy, ty] = typecheck(sig, e->y);
      if (!obj_equal(sx, sy))
        throw InputError("pairing mismatch: components have sources " +
                         obj_to_string(sx) + " and " + obj_to_string(sy));
      return {sx, obj_prod(tx, ty)};
    }
    case MorExpr::Kind::curry: {
      auto [sf, tf] = typecheck(sig, e->x);
      if (sf->kind != ObjExpr::Kind::prod)
        throw InputError("curry applied to a term whose source " +
                         obj_to_string(sf) + " is not a product");
      return {sf->a, obj_exp(tf, sf->b)};
    }
  }
  throw InputError("malformed term");
}

// ---------------------------------------------------------------------------
// Normalization by evaluation through the simply typed lambda-calculus with
// unit and binary products, eta-long at unit, product, and function types.

namespace {

struct Value;
using ValuePtr = std::shared_ptr<Value>;
struct Neutral;
using NeutralPtr = std::shared_ptr<Neutral>;

struct Neutral {
  enum class K { var, app, fst, snd, gen };
  K k;
  std::size_t level = 0;    // var
  NeutralPtr head;          // app/fst/snd
  ValuePtr arg;             // app
  ObjPtr arg_ty, res_ty;    // app
  ObjPtr pa, pb;            // fst/snd: head has type prod(pa, pb)
  std::string gname;        // gen
  ValuePtr garg;
  ObjPtr gsrc, gtgt;
};

struct Value {
  enum class K { lam, pairv, star, neutral };
  K k;
  std::function<ValuePtr(const ValuePtr&)> fn;  // lam
  ValuePtr a, b;                                // pair
  NeutralPtr ne;
  ObjPtr ne_ty;
};

ValuePtr v_lam(std::function<ValuePtr(const ValuePtr&)> fn) {
  auto v = std::make_shared<Value>();
  v->k = Value::K::lam;
  v->fn = std::move(fn);
  return v;
}
ValuePtr v_pair(ValuePtr a, ValuePtr b) {
  auto v = std::make_shared<Value>();
  v->k = Value::K::pairv;
  v->a = std::move(a);
  v->b = std::move(b);
  return v;
}
ValuePtr v_star() {
  auto v = std::make_shared<Value>();
  v->k = Value::K::star;
  return v;
}
ValuePtr v_ne(NeutralPtr ne, ObjPtr ty) {
  auto v = std::make_shared<Value>();
  v->k = Value::K::neutral;
  v->ne = std::move(ne);
  v->ne_ty = std::move(ty);
  return v;
}

ValuePtr vapp(const ValuePtr& f, const ValuePtr& x) {
  if (f->k == Value::K::lam) return f->fn(x);
  auto ne = std::make_shared<Neutral>();
  ne->k = Neutral::K::app;
  ne->head = f->ne;
  ne->arg = x;
  ne->res_ty = f->ne_ty->a;
  ne->arg_ty = f->ne_ty->b;
  return v_ne(ne, f->ne_ty->a);
}
ValuePtr vfst(const ValuePtr& p) {
  if (p->k == Value::K::pairv) return p->a;
  auto ne = std::make_shared<Neutral>();
  ne->k = Neutral::K::fst;
  ne->head = p->ne;
  ne->pa = p->ne_ty->a;
  ne->pb = p->ne_ty->b;
  return v_ne(ne, p->ne_ty->a);
}
ValuePtr vsnd(const ValuePtr& p) {
  if (p->k == Value::K::pairv) return p->b;
  auto ne = std::make_shared<Neutral>();
  ne->k = Neutral::K::snd;
  ne->head = p->ne;
  ne->pa = p->ne_ty->a;
  ne->pb = p->ne_ty->b;
  return v_ne(ne, p->ne_ty->b);
}

std::function<ValuePtr(const ValuePtr&)> sem(const CCSignature& sig, const MorPtr& e) {
  switch (e->kind) {
    case MorExpr::Kind::gen: {
      const CCSignature::Gen* g = sig.find(e->name);
      std::string name = e->name;
      ObjPtr src = g->src, tgt = g->tgt;
      return [name, src, tgt](const ValuePtr& v) {
        auto ne = std::make_shared<Neutral>();
        ne->k = Neutral::K::gen;
        ne->gname = name;
        ne->garg = v;
        ne->gsrc = src;
        ne->gtgt = tgt;
        return v_ne(ne, tgt);
      };
    }
    case MorExpr::Kind::id:
      return [](const ValuePtr& v) { return v; };
    case MorExpr::Kind::bang:
      return [](const ValuePtr&) { return v_star(); };
    case MorExpr::Kind::proj1:
      return [](const ValuePtr& v) { return vfst(v); };
    case MorExpr::Kind::proj2:
      return [](const ValuePtr& v) { return vsnd(v); };
    case MorExpr::Kind::ev:
      return [](const ValuePtr& v) { return vapp(vfst(v), vsnd(v)); };
    case MorExpr::Kind::comp: {
      auto fo = sem(sig, e->x), fi = sem(sig, e->y);
      return [fo, fi](const ValuePtr& v) { return fo(fi(v)); };
    }
    case MorExpr::Kind::pair: {
      auto f1 = sem(sig, e->x), f2 = sem(sig, e->y);
      return [f1, f2](const ValuePtr& v) { return v_pair(f1(v), f2(v)); };
    }
    case MorExpr::Kind::curry: {
      auto f = sem(sig, e->x);
      return [f](const ValuePtr& v) {
        return v_lam([f, v](const ValuePtr& y) { return f(v_pair(v, y)); });
      };
    }
  }
  throw InputError("malformed term");
}

// Syntactic normal forms read off the semantics, with the types needed for
// combinator readback recorded on the spine.
struct Nf;
using NfPtr = std::shared_ptr<Nf>;
struct NeS;
using NeSPtr = std::shared_ptr<NeS>;
struct Nf {
  enum class K { lam, pairn, star, ne };
  K k;
  NfPtr a, b;
  NeSPtr n;
};
struct NeS {
  enum class K { var, app, fst, snd, gen };
  K k;
  std::size_t level = 0;
  NeSPtr head;
  NfPtr arg;
  ObjPtr arg_ty, res_ty;
  ObjPtr pa, pb;
  std::string gname;
  NfPtr garg;
  ObjPtr gsrc, gtgt;
};

struct Budget {
  std::size_t used = 0, cap;
  void tick() {
    if (++used > cap)
      throw LimitError("normalize: normal form exceeds size cap of " +
                       std::to_string(cap) + " nodes");
  }
};

NeSPtr reify_ne(const NeutralPtr& ne, std::size_t level, Budget& bd);

NfPtr reify(const ValuePtr& v, const ObjPtr& ty, std::size_t level, Budget& bd) {
  bd.tick();
  auto nf = std::make_shared<Nf>();
  switch (ty->kind) {
    case ObjExpr::Kind::unit:
      nf->k = Nf::K::star;
      return nf;
    case ObjExpr::Kind::prod:
      nf->k = Nf::K::pairn;
      nf->a = reify(vfst(v), ty->a, level, bd);
      nf->b = reify(vsnd(v), ty->b, level, bd);
      return nf;
    case ObjExpr::Kind::exp: {
      nf->k = Nf::K::lam;
      auto var = std::make_shared<Neutral>();
      var->k = Neutral::K::var;
      var->level = level;
      nf->a = reify(vapp(v, v_ne(var, ty->b)), ty->a, level + 1, bd);
      return nf;
    }
    case ObjExpr::Kind::sort:
      nf->k = Nf::K::ne;
      nf->n = reify_ne(v->ne, level, bd);
      return nf;
  }
  throw InputError("malformed object expression");
}

NeSPtr reify_ne(const NeutralPtr& ne, std::size_t level, Budget& bd) {
  bd.tick();
  auto n = std::make_shared<NeS>();
  switch (ne->k) {
    case Neutral::K::var:
      n->k = NeS::K::var;
      n->level = ne->level;
      return n;
    case Neutral::K::app:
      n->k = NeS::K::app;
      n->head = reify_ne(ne->head, level, bd);
      n->arg = reify(ne->arg, ne->arg_ty, level, bd);
      n->arg_ty = ne->arg_ty;
      n->res_ty = ne->res_ty;
      return n;
    case Neutral::K::fst:
    case Neutral::K::snd:
      n->k = ne->k == Neutral::K::fst ? NeS::K::fst : NeS::K::snd;
      n->head = reify_ne(ne->head, level, bd);
      n->pa = ne->pa;
      n->pb = ne->pb;
      return n;
    case Neutral::K::gen:
      n->k = NeS::K::gen;
      n->gname = ne->gname;
      n->garg = reify(ne->garg, ne->gsrc, level, bd);
      n->gsrc = ne->gsrc;
      n->gtgt = ne->gtgt;
      return n;
  }
  throw InputError("malformed neutral");
}

// Combinator readback: the context [T0, ..., Tn-1] denotes the left-nested
// product ((T0 x T1) x ...) x Tn-1; variables become projection chains.
MorPtr mk_comp_smart(MorPtr outer, MorPtr inner) {
  if (inner->kind == MorExpr::Kind::id) return outer;
  if (outer->kind == MorExpr::Kind::id) return inner;
  return mor_comp(std::move(outer), std::move(inner));
}

ObjPtr ctx_prefix(const std::vector<ObjPtr>& ctx, std::size_t upto) {
  ObjPtr o = ctx[0];
  for (std::size_t i = 1; i <= upto; ++i) o = obj_prod(o, ctx[i]);
  return o;
}

MorPtr var_mor(const std::vector<ObjPtr>& ctx, std::size_t upto, std::size_t pos) {
  if (pos == upto) {
    if (upto == 0) return mor_id(ctx[0]);
    return mor_proj2(ctx_prefix(ctx, upto - 1), ctx[upto]);
  }
  return mk_comp_smart(var_mor(ctx, upto - 1, pos),
                       mor_proj1(ctx_prefix(ctx, upto - 1), ctx[upto]));
}

std::pair<MorPtr, ObjPtr> rb_ne(std::vector<ObjPtr>& ctx, const NeSPtr& n);

MorPtr rb(std::vector<ObjPtr>& ctx, const NfPtr& nf, const ObjPtr& ty) {
  switch (nf->k) {
    case Nf::K::star:
      return mor_bang(ctx_prefix(ctx, ctx.size() - 1));
    case Nf::K::pairn:
      return mor_pair(rb(ctx, nf->a, ty->a), rb(ctx, nf->b, ty->b));
    case Nf::K::lam: {
      ctx.push_back(ty->b);
      MorPtr body = rb(ctx, nf->a, ty->a);
      ctx.pop_back();
      return mor_curry(body);
    }
    case Nf::K::ne:
      return rb_ne(ctx, nf->n).first;
  }
  throw InputError("malformed normal form");
}

std::pair<MorPtr, ObjPtr> rb_ne(std::vector<ObjPtr>& ctx, const NeSPtr& n) {
  switch (n->k) {
    case NeS::K::var:
      return {var_mor(ctx, ctx.size() - 1, n->level), ctx[n->level]};
    case NeS::K::app: {
      auto [mh, _] = rb_ne(ctx, n->head);
      MorPtr ma = rb(ctx, n->arg, n->arg_ty);
      return {mk_comp_smart(mor_ev(n->arg_ty, n->res_ty), mor_pair(mh, ma)),
              n->res_ty};
    }
    case NeS::K::fst: {
      auto [mh, _] = rb_ne(ctx, n->head);
      return {mk_comp_smart(mor_proj1(n->pa, n->pb), mh), n->pa};
    }
    case NeS::K::snd: {
      auto [mh, _] = rb_ne(ctx, n->head);
      return {mk_comp_smart(mor_proj2(n->pa, n->pb), mh), n->pb};
    }
    case NeS::K::gen: {
      MorPtr ma = rb(ctx, n->garg, n->gsrc);
      return {mk_comp_smart(mor_gen(n->gname), ma), n->gtgt};
    }
  }
  throw InputError("malformed neutral");
}

}  // namespace

NormalForm normalize(const CCSignature& sig, const MorPtr& e, std::size_t size_cap) {
  auto [src, tgt] = typecheck(sig, e);
  auto var = std::make_shared<Neutral>();
  var->k = Neutral::K::var;
  var->level = 0;
  Budget bd{0, size_cap};
  ValuePtr out = sem(sig, e)(v_ne(var, src));
  NfPtr nf = reify(out, tgt, 1, bd);
  std::vector<ObjPtr> ctx{src};
  return NormalForm{rb(ctx, nf, tgt), src, tgt};
}

bool equal(const CCSignature& sig, const MorPtr& e1, const MorPtr& e2,
           std::size_t size_cap) {
  auto [s1, t1] = typecheck(sig, e1);
  auto [s2, t2] = typecheck(sig, e2);
  if (!obj_equal(s1, s2) || !obj_equal(t1, t2))
    throw InputError("equal: terms have different types: " + obj_to_string(s1) +
                     " -> " + obj_to_string(t1) + " vs " + obj_to_string(s2) +
                     " -> " + obj_to_string(t2));
  return mor_equal(normalize(sig, e1, size_cap).term,
                   normalize(sig, e2, size_cap).term);
}

// ---------------------------------------------------------------------------
// Interpretation into a finite CCC through its chosen structure.

std::size_t translate_object(const CCStructure& s,
                             const std::map<std::string, std::size_t>& objmap,
                             const ObjPtr& o) {
  switch (o->kind) {
    case ObjExpr::Kind::sort: {
      auto it = objmap.find(o->name);
      if (it == objmap.end())
        throw InputError("no object assigned to sort '" + o->name + "'");
      return it->second;
    }
    case ObjExpr::Kind::unit:
      if (!s.terminal) throw InputError("structure has no chosen terminal");
      return *s.terminal;
    case ObjExpr::Kind::prod: {
      std::size_t x = translate_object(s, objmap, o->a), y = translate_object(s, objmap, o->b);
      if (!s.has_product(x, y))
        throw InputError("no chosen product for (" + s.base.object_id(x) + ", " +
                         s.base.object_id(y) + ")");
      return s.product(x, y).object;
    }
    case ObjExpr::Kind::exp: {
      std::size_t z = translate_object(s, objmap, o->a), y = translate_object(s, objmap, o->b);
      if (!s.has_exponential(y, z))
        throw InputError("no chosen exponential for (" + s.base.object_id(y) +
                         ", " + s.base.object_id(z) + ")");
      return s.exponential(y, z).object;
    }
  }
  throw InputError("malformed object expression");
}

namespace {

struct InterpResult {
  std::size_t m;
  ObjPtr src, tgt;
};

InterpResult interp(const CCSignature& sig, const CCStructure& s,
                    const std::map<std::string, std::size_t>& objmap,
                    const std::map<std::string, std::size_t>& genmap,
                    const MorPtr& e) {
  const FinCategory& c = s.base;
  switch (e->kind) {
    case MorExpr::Kind::gen: {
      const CCSignature::Gen* g = sig.find(e->name);
      if (!g) throw InputError("unknown generator '" + e->name + "'");
      auto it = genmap.find(e->name);
      if (it == genmap.end())
        throw InputError("no morphism assigned to generator '" + e->name + "'");
      std::size_t m = it->second;
      if (c.src(m) != translate_object(s, objmap, g->src) ||
          c.tgt(m) != translate_object(s, objmap, g->tgt))
        throw InputError("assignment of generator '" + e->name +
                         "' does not match the translated typing");
      return {m, g->src, g->tgt};
    }
    case MorExpr::Kind::id:
      return {c.identity_of(translate_object(s, objmap, e->ta)), e->ta, e->ta};
    case MorExpr::Kind::bang:
      return {s.bang(translate_object(s, objmap, e->ta)), e->ta, obj_unit()};
    case MorExpr::Kind::proj1: {
      std::size_t x = translate_object(s, objmap, e->ta), y = translate_object(s, objmap, e->tb);
      if (!s.has_product(x, y))
        throw InputError("no chosen product for the projection annotation");
      return {s.product(x, y).p1, obj_prod(e->ta, e->tb), e->ta};
    }
    case MorExpr::Kind::proj2: {
      std::size_t x = translate_object(s, objmap, e->ta), y = translate_object(s, objmap, e->tb);
      if (!s.has_product(x, y))
        throw InputError("no chosen product for the projection annotation");
      return {s.product(x, y).p2, obj_prod(e->ta, e->tb), e->tb};
    }
    case MorExpr::Kind::ev: {
      std::size_t y = translate_object(s, objmap, e->ta), z = translate_object(s, objmap, e->tb);
      if (!s.has_exponential(y, z))
        throw InputError("no chosen exponential for the ev annotation");
      return {s.exponential(y, z).ev, obj_prod(obj_exp(e->tb, e->ta), e->ta), e->tb};
    }
    case MorExpr::Kind::comp: {
      InterpResult ri = interp(sig, s, objmap, genmap, e->y);
      InterpResult ro = interp(sig, s, objmap, genmap, e->x);
      if (!obj_equal(ri.tgt, ro.src))
        throw InputError("composition mismatch in interpretation");
      return {c.compose(ro.m, ri.m), ri.src, ro.tgt};
    }
    case MorExpr::Kind::pair: {
      InterpResult r1 = interp(sig, s, objmap, genmap, e->x);
      InterpResult r2 = interp(sig, s, objmap, genmap, e->y);
      if (!obj_equal(r1.src, r2.src))
        throw InputError("pairing mismatch in interpretation");
      return {pairing(s, r1.m, r2.m), r1.src, obj_prod(r1.tgt, r2.tgt)};
    }
    case MorExpr::Kind::curry: {
      InterpResult rf = interp(sig, s, objmap, genmap, e->x);
      if (rf.src->kind != ObjExpr::Kind::prod)
        throw InputError("curry applied to a non-product source");
      std::size_t x = translate_object(s, objmap, rf.src->a);
      std::size_t y = translate_object(s, objmap, rf.src->b);
      std::size_t z = translate_object(s, objmap, rf.tgt);
      return {lambda_of(s, x, y, z, rf.m), rf.src->a, obj_exp(rf.tgt, rf.src->b)};
    }
  }
  throw InputError("malformed term");
}

}  // namespace

std::size_t interpret(const CCSignature& sig, const CCStructure& s,
                      const std::map<std::string, std::size_t>& objmap,
                      const std::map<std::string, std::size_t>& genmap,
                      const MorPtr& e) {
  typecheck(sig, e);
  return interp(sig, s, objmap, genmap, e).m;
}

// ---------------------------------------------------------------------------
// Surface syntax: lexer, object parser, term parser with annotation inference.

namespace {

struct Token {
  enum class K { ident, one, dot, comma, lt, gt, lpar, rpar, lbrack, rbrack, star, caret, end };
  K k;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      ++i;
      continue;
    }
    std::size_t pos = i;
    auto push = [&](Token::K k, std::size_t len) {
      out.push_back(Token{k, s.substr(pos, len), pos});
      i += len;
    };
    switch (ch) {
      case '.': push(Token::K::dot, 1); continue;
      case ',': push(Token::K::comma, 1); continue;
      case '<': push(Token::K::lt, 1); continue;
      case '>': push(Token::K::gt, 1); continue;
      case '(': push(Token::K::lpar, 1); continue;
      case ')': push(Token::K::rpar, 1); continue;
      case '[': push(Token::K::lbrack, 1); continue;
      case ']': push(Token::K::rbrack, 1); continue;
      case '*': push(Token::K::star, 1); continue;
      case '^': push(Token::K::caret, 1); continue;
      case '1': push(Token::K::one, 1); continue;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back(Token{Token::K::ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    throw InputError("unexpected character '" + std::string(1, ch) +
                     "' at column " + std::to_string(i + 1));
  }
  out.push_back(Token{Token::K::end, "", s.size()});
  return out;
}

struct TokenStream {
  std::vector<Token> toks;
  std::size_t p = 0;
  const Token& peek() const { return toks[p]; }
  Token take() { return toks[p++]; }
  bool at(Token::K k) const { return toks[p].k == k; }
  Token expect(Token::K k, const std::string& what) {
    if (!at(k))
      throw InputError("expected " + what + " at column " +
                       std::to_string(toks[p].pos + 1));
    return take();
  }
};

ObjPtr parse_obj_prod(TokenStream& ts);

ObjPtr parse_obj_atom(TokenStream& ts) {
  if (ts.at(Token::K::one)) {
    ts.take();
    return obj_unit();
  }
  if (ts.at(Token::K::ident)) return obj_sort(ts.take().text);
  if (ts.at(Token::K::lpar)) {
    ts.take();
    ObjPtr o = parse_obj_prod(ts);
    ts.expect(Token::K::rpar, "')'");
    return o;
  }
  throw InputError("expected an object expression at column " +
                   std::to_string(ts.peek().pos + 1));
}

ObjPtr parse_obj_exp(TokenStream& ts) {
  ObjPtr base = parse_obj_atom(ts);
  if (ts.at(Token::K::caret)) {
    ts.take();
    ObjPtr e = parse_obj_exp(ts);
    return obj_exp(base, e);
  }
  return base;
}

ObjPtr parse_obj_prod(TokenStream& ts) {
  ObjPtr l = parse_obj_exp(ts);
  while (ts.at(Token::K::star)) {
    ts.take();
    l = obj_prod(l, parse_obj_exp(ts));
  }
  return l;
}

// Surface terms: annotations are optional and inferred by unification.
struct STerm {
  MorExpr::Kind kind;
  std::string name;
  ObjPtr ann1, ann2;
  std::shared_ptr<STerm> x, y;
  std::size_t pos = 0;
};
using SPtr = std::shared_ptr<STerm>;

SPtr parse_sterm(TokenStream& ts);

SPtr snode(MorExpr::Kind k, std::size_t pos) {
  auto t = std::make_shared<STerm>();
  t->kind = k;
  t->pos = pos;
  return t;
}

SPtr parse_satom(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.k == Token::K::lpar) {
    ts.take();
    SPtr s = parse_sterm(ts);
    ts.expect(Token::K::rpar, "')'");
    return s;
  }
  if (t.k == Token::K::lt) {
    ts.take();
    SPtr a = parse_sterm(ts);
    ts.expect(Token::K::comma, "','");
    SPtr b = parse_sterm(ts);
    ts.expect(Token::K::gt, "'>'");
    SPtr s = snode(MorExpr::Kind::pair, t.pos);
    s->x = a;
    s->y = b;
    return s;
  }
  if (t.k == Token::K::ident) {
    Token tok = ts.take();
    auto ann2 = [&](SPtr s) {
      if (ts.at(Token::K::lbrack)) {
        ts.take();
        s->ann1 = parse_obj_prod(ts);
        ts.expect(Token::K::comma, "','");
        s->ann2 = parse_obj_prod(ts);
        ts.expect(Token::K::rbrack, "']'");
      }
      return s;
    };
    auto ann1 = [&](SPtr s) {
      if (ts.at(Token::K::lbrack)) {
        ts.take();
        s->ann1 = parse_obj_prod(ts);
        ts.expect(Token::K::rbrack, "']'");
      }
      return s;
    };
    if (tok.text == "curry") {
      ts.expect(Token::K::lpar, "'('");
      SPtr body = parse_sterm(ts);
      ts.expect(Token::K::rpar, "')'");
      SPtr s = snode(MorExpr::Kind::curry, tok.pos);
      s->x = body;
      return s;
    }
    if (tok.text == "ev") return ann2(snode(MorExpr::Kind::ev, tok.pos));
    if (tok.text == "p1") return ann2(snode(MorExpr::Kind::proj1, tok.pos));
    if (tok.text == "p2") return ann2(snode(MorExpr::Kind::proj2, tok.pos));
    if (tok.text == "id") return ann1(snode(MorExpr::Kind::id, tok.pos));
    if (tok.text == "bang") return ann1(snode(MorExpr::Kind::bang, tok.pos));
    SPtr s = snode(MorExpr::Kind::gen, tok.pos);
    s->name = tok.text;
    return s;
  }
  throw InputError("expected a term at column " + std::to_string(t.pos + 1));
}

SPtr parse_sterm(TokenStream& ts) {
  SPtr l = parse_satom(ts);
  while (ts.at(Token::K::dot)) {
    std::size_t pos = ts.take().pos;
    SPtr r = parse_satom(ts);
    SPtr s = snode(MorExpr::Kind::comp, pos);
    s->x = l;
    s->y = r;
    l = s;
  }
  return l;
}

// Object expressions with metavariables, for annotation inference.
struct EObj {
  enum class K { sort, unit, prod, exp, meta };
  K k;
  std::string name;
  std::shared_ptr<EObj> a, b;
  std::size_t mid = 0;
};
using EPtr = std::shared_ptr<EObj>;

struct Unifier {
  std::vector<EPtr> subst;

  EPtr fresh() {
    auto e = std::make_shared<EObj>();
    e->k = EObj::K::meta;
    e->mid = subst.size();
    subst.push_back(nullptr);
    return e;
  }
  EPtr mkk(EObj::K k, EPtr a = nullptr, EPtr b = nullptr) {
    auto e = std::make_shared<EObj>();
    e->k = k;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
  }
  EPtr of_obj(const ObjPtr& o) {
    switch (o->kind) {
      case ObjExpr::Kind::sort: {
        auto e = mkk(EObj::K::sort);
        e->name = o->name;
        return e;
      }
      case ObjExpr::Kind::unit:
        return mkk(EObj::K::unit);
      case ObjExpr::Kind::prod:
        return mkk(EObj::K::prod, of_obj(o->a), of_obj(o->b));
      case ObjExpr::Kind::exp:
        return mkk(EObj::K::exp, of_obj(o->a), of_obj(o->b));
    }
    throw InputError("malformed object expression");
  }
  EPtr walk(EPtr t) {
    while (t->k == EObj::K::meta && subst[t->mid]) t = subst[t->mid];
    return t;
  }
  bool occurs(std::size_t mid, EPtr t) {
    t = walk(t);
    if (t->k == EObj::K::meta) return t->mid == mid;
    if (t->a && occurs(mid, t->a)) return true;
    if (t->b && occurs(mid, t->b)) return true;
    return false;
  }
  std::string show(EPtr t) {
    t = walk(t);
    switch (t->k) {
      case EObj::K::sort:
        return t->name;
      case EObj::K::unit:
        return "1";
      case EObj::K::prod:
        return "(" + show(t->a) + " * " + show(t->b) + ")";
      case EObj::K::exp:
        return "(" + show(t->a) + " ^ " + show(t->b) + ")";
      case EObj::K::meta:
        return "?" + std::to_string(t->mid);
    }
    return "?";
  }
  void unify(EPtr x, EPtr y, std::size_t pos) {
    x = walk(x);
    y = walk(y);
    if (x->k == EObj::K::meta && y->k == EObj::K::meta && x->mid == y->mid) return;
    if (x->k == EObj::K::meta) {
      if (occurs(x->mid, y))
        throw InputError("cannot infer annotations near column " +
                         std::to_string(pos + 1) + ": circular object constraint");
      subst[x->mid] = y;
      return;
    }
    if (y->k == EObj::K::meta) {
      unify(y, x, pos);
      return;
    }
    if (x->k != y->k || (x->k == EObj::K::sort && x->name != y->name))
      throw InputError("type mismatch near column " + std::to_string(pos + 1) +
                       ": cannot unify " + show(x) + " with " + show(y));
    if (x->a) unify(x->a, y->a, pos);
    if (x->b) unify(x->b, y->b, pos);
  }
  ObjPtr ground(EPtr t, std::size_t pos) {
    t = walk(t);
    switch (t->k) {
      case EObj::K::sort:
        return obj_sort(t->name);
      case EObj::K::unit:
        return obj_unit();
      case EObj::K::prod:
        return obj_prod(ground(t->a, pos), ground(t->b, pos));
      case EObj::K::exp:
        return obj_exp(ground(t->a, pos), ground(t->b, pos));
      case EObj::K::meta:
        throw InputError("cannot infer the annotation at column " +
                         std::to_string(pos + 1) +
                         "; supply it explicitly with [...]");
    }
    throw InputError("malformed object expression");
  }
};

struct Elab {
  const CCSignature& sig;
  Unifier u;
  // Per-node inferred pieces, keyed by the surface node.
  std::map<const STerm*, std::pair<EPtr, EPtr>> ty;  // (src, tgt)
  std::map<const STerm*, std::pair<EPtr, EPtr>> ann;

  void infer(const SPtr& t) {
    switch (t->kind) {
      case MorExpr::Kind::gen: {
        const CCSignature::Gen* g = sig.find(t->name);
        if (!g)
          throw InputError("unknown generator '" + t->name + "' at column " +
                           std::to_string(t->pos + 1));
        ty[t.get()] = {u.of_obj(g->src), u.of_obj(g->tgt)};
        return;
      }
      case MorExpr::Kind::id: {
        EPtr a = t->ann1 ? u.of_obj(t->ann1) : u.fresh();
        ann[t.get()] = {a, nullptr};
        ty[t.get()] = {a, a};
        return;
      }
      case MorExpr::Kind::bang: {
        EPtr a = t->ann1 ? u.of_obj(t->ann1) : u.fresh();
        ann[t.get()] = {a, nullptr};
        ty[t.get()] = {a, u.mkk(EObj::K::unit)};
        return;
      }
      case MorExpr::Kind::proj1:
      case MorExpr::Kind::proj2: {
        EPtr a = t->ann1 ? u.of_obj(t->ann1) : u.fresh();
        EPtr b = t->ann2 ? u.of_obj(t->ann2) : u.fresh();
        ann[t.get()] = {a, b};
        ty[t.get()] = {u.mkk(EObj::K::prod, a, b),
                       t->kind == MorExpr::Kind::proj1 ? a : b};
        return;
      }
      case MorExpr::Kind::ev: {
        EPtr y = t->ann1 ? u.of_obj(t->ann1) : u.fresh();
        EPtr z = t->ann2 ? u.of_obj(t->ann2) : u.fresh();
        ann[t.get()] = {y, z};
        ty[t.get()] = {u.mkk(EObj::K::prod, u.mkk(EObj::K::exp, z, y), y), z};
        return;
      }
      case MorExpr::Kind::comp: {
        infer(t->x);
        infer(t->y);
        u.unify(ty[t->y.get()].second, ty[t->x.get()].first, t->pos);
        ty[t.get()] = {ty[t->y.get()].first, ty[t->x.get()].second};
        return;
      }
      case MorExpr::Kind::pair: {
        infer(t->x);
        infer(t->y);
        u.unify(ty[t->x.get()].first, ty[t->y.get()].first, t->pos);
        ty[t.get()] = {ty[t->x.get()].first,
                       u.mkk(EObj::K::prod, ty[t->x.get()].second,
                             ty[t->y.get()].second)};
        return;
      }
      case MorExpr::Kind::curry: {
        infer(t->x);
        EPtr a = u.fresh(), b = u.fresh();
        u.unify(ty[t->x.get()].first, u.mkk(EObj::K::prod, a, b), t->pos);
        ty[t.get()] = {a, u.mkk(EObj::K::exp, ty[t->x.get()].second, b)};
        return;
      }
    }
    throw InputError("malformed term");
  }

  MorPtr build(const SPtr& t) {
    switch (t->kind) {
      case MorExpr::Kind::gen:
        return mor_gen(t->name);
      case MorExpr::Kind::id:
        return mor_id(u.ground(ann[t.get()].first, t->pos));
      case MorExpr::Kind::bang:
        return mor_bang(u.ground(ann[t.get()].first, t->pos));
      case MorExpr::Kind::proj1:
        return mor_proj1(u.ground(ann[t.get()].first, t->pos),
                         u.ground(ann[t.get()].second, t->pos));
      case MorExpr::Kind::proj2:
        return mor_proj2(u.ground(ann[t.get()].first, t->pos),
                         u.ground(ann[t.get()].second, t->pos));
      case MorExpr::Kind::ev:
        return mor_ev(u.ground(ann[t.get()].first, t->pos),
                      u.ground(ann[t.get()].second, t->pos));
      case MorExpr::Kind::comp:
        return mor_comp(build(t->x), build(t->y));
      case MorExpr::Kind::pair:
        return mor_pair(build(t->x), build(t->y));
      case MorExpr::Kind::curry:
        return mor_curry(build(t->x));
    }
    throw InputError("malformed term");
  }
};

}  // namespace

ObjPtr parse_object(const std::string& text) {
  TokenStream ts{tokenize(text)};
  ObjPtr o = parse_obj_prod(ts);
  if (!ts.at(Token::K::end))
    throw InputError("unexpected trailing input at column " +
                     std::to_string(ts.peek().pos + 1));
  return o;
}

MorPtr parse_term(const CCSignature& sig, const std::string& text) {
  TokenStream ts{tokenize(text)};
  SPtr s = parse_sterm(ts);
  if (!ts.at(Token::K::end))
    throw InputError("unexpected trailing input at column " +
                     std::to_string(ts.peek().pos + 1));
  Elab el{sig, {}, {}, {}};
  el.infer(s);
  MorPtr m = el.build(s);
  typecheck(sig, m);  // elaboration must agree with the checker
  return m;
}

}  // namespace catcoh
