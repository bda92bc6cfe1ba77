#include "catcoh/eqlogic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace catcoh {

const Signature::Op* Signature::find_op(const std::string& name) const {
  for (const auto& op : ops)
    if (op.name == name) return &op;
  return nullptr;
}

bool Signature::has_sort(const std::string& s) const {
  return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
}

void validate_eqsignature(const Signature& sig) {
  std::set<std::string> seen_sorts, seen_ops;
  for (const auto& s : sig.sorts)
    if (!seen_sorts.insert(s).second)
      throw InputError("duplicate sort '" + s + "'");
  for (const auto& op : sig.ops) {
    if (!seen_ops.insert(op.name).second)
      throw InputError("duplicate operation '" + op.name + "'");
    for (const auto& s : op.argsorts)
      if (!sig.has_sort(s))
        throw InputError("operation '" + op.name + "' uses undeclared sort '" + s + "'");
    if (!sig.has_sort(op.ressort))
      throw InputError("operation '" + op.name + "' uses undeclared sort '" +
                       op.ressort + "'");
  }
}

TermPtr term_var(const std::string& name, const std::string& sort) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::var;
  t->name = name;
  t->sort = sort;
  return t;
}

TermPtr term_app(const std::string& op, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::app;
  t->name = op;
  t->args = std::move(args);
  return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->kind == Term::Kind::var) return a->sort == b->sort;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string term_to_string(const TermPtr& t) {
  if (t->kind == Term::Kind::var) return t->name;
  if (t->args.empty()) return t->name + "()";
  std::string s = t->name + "(";
  for (std::size_t i = 0; i < t->args.size(); ++i)
    s += (i ? ", " : "") + term_to_string(t->args[i]);
  return s + ")";
}

std::string sort_of(const Signature& sig, const TermPtr& t) {
  if (t->kind == Term::Kind::var) {
    if (!sig.has_sort(t->sort))
      throw InputError("variable '" + t->name + "' has undeclared sort '" + t->sort + "'");
    return t->sort;
  }
  const Signature::Op* op = sig.find_op(t->name);
  if (!op) throw InputError("unknown operation '" + t->name + "'");
  if (op->argsorts.size() != t->args.size())
    throw InputError("operation '" + t->name + "' expects " +
                     std::to_string(op->argsorts.size()) + " arguments, got " +
                     std::to_string(t->args.size()));
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    std::string s = sort_of(sig, t->args[i]);
    if (s != op->argsorts[i])
      throw InputError("argument " + std::to_string(i + 1) + " of '" + t->name +
                       "' has sort " + s + ", expected " + op->argsorts[i]);
  }
  return op->ressort;
}

namespace {
void free_vars(const TermPtr& t, std::map<std::string, std::string>& out) {
  if (t->kind == Term::Kind::var)
    out[t->name] = t->sort;
  else
    for (const auto& a : t->args) free_vars(a, out);
}
}  // namespace

void validate_equation(const Signature& sig, const Equation& eq) {
  std::string ls = sort_of(sig, eq.lhs), rs = sort_of(sig, eq.rhs);
  if (ls != rs)
    throw InputError("equation sides have different sorts " + ls + " and " + rs);
  std::map<std::string, std::string> ctx;
  for (const auto& [v, s] : eq.context) {
    if (!sig.has_sort(s))
      throw InputError("context variable '" + v + "' has undeclared sort '" + s + "'");
    if (!ctx.emplace(v, s).second)
      throw InputError("duplicate context variable '" + v + "'");
  }
  std::map<std::string, std::string> fv;
  free_vars(eq.lhs, fv);
  free_vars(eq.rhs, fv);
  for (const auto& [v, s] : fv) {
    auto it = ctx.find(v);
    if (it == ctx.end())
      throw InputError("variable '" + v + "' is not covered by the context");
    if (it->second != s)
      throw InputError("variable '" + v + "' has sort " + s +
                       " in the terms but " + it->second + " in the context");
  }
}

std::string equation_to_string(const Equation& eq) {
  return term_to_string(eq.lhs) + " ~ " + term_to_string(eq.rhs);
}

TermPtr apply_subst(const TermPtr& t, const Substitution& sub) {
  if (t->kind == Term::Kind::var) {
    auto it = sub.find(t->name);
    return it == sub.end() ? t : it->second;
  }
  std::vector<TermPtr> args;
  for (const auto& a : t->args) args.push_back(apply_subst(a, sub));
  return term_app(t->name, std::move(args));
}

ProofPtr proof_axiom(std::size_t index) {
  auto p = std::make_shared<Proof>();
  p->rule = Proof::Rule::axiom;
  p->index = index;
  return p;
}
ProofPtr proof_refl(TermPtr t) {
  auto p = std::make_shared<Proof>();
  p->rule = Proof::Rule::refl;
  p->t = std::move(t);
  return p;
}
ProofPtr proof_sym(ProofPtr q) {
  auto p = std::make_shared<Proof>();
  p->rule = Proof::Rule::sym;
  p->subs = {std::move(q)};
  return p;
}
ProofPtr proof_trans(ProofPtr p1, ProofPtr p2) {
  auto p = std::make_shared<Proof>();
  p->rule = Proof::Rule::trans;
  p->subs = {std::move(p1), std::move(p2)};
  return p;
}
ProofPtr proof_subst(ProofPtr q, Substitution sub) {
  auto p = std::make_shared<Proof>();
  p->rule = Proof::Rule::subst;
  p->subs = {std::move(q)};
  p->sub_map = std::move(sub);
  return p;
}
ProofPtr proof_cong(const std::string& op, std::vector<ProofPtr> subs) {
  auto p = std::make_shared<Proof>();
  p->rule = Proof::Rule::cong;
  p->op = op;
  p->subs = std::move(subs);
  return p;
}

namespace {
struct ProofFail {
  std::string path, reason;
};

std::pair<TermPtr, TermPtr> conclude(const Signature& sig,
                                     const std::vector<Equation>& E,
                                     const ProofPtr& p, const std::string& path) {
  switch (p->rule) {
    case Proof::Rule::axiom: {
      if (p->index >= E.size())
        throw ProofFail{path, "axiom index " + std::to_string(p->index) +
                                  " out of range (have " +
                                  std::to_string(E.size()) + " axioms)"};
      return {E[p->index].lhs, E[p->index].rhs};
    }
    case Proof::Rule::refl: {
      try {
        sort_of(sig, p->t);
      } catch (const InputError& e) {
        throw ProofFail{path, std::string("ill-sorted term in refl: ") + e.what()};
      }
      return {p->t, p->t};
    }
    case Proof::Rule::sym: {
      auto [l, r] = conclude(sig, E, p->subs[0], path + ".1");
      return {r, l};
    }
    case Proof::Rule::trans: {
      auto [l1, r1] = conclude(sig, E, p->subs[0], path + ".1");
      auto [l2, r2] = conclude(sig, E, p->subs[1], path + ".2");
      if (!term_equal(r1, l2))
        throw ProofFail{path, "trans premises do not chain: " + term_to_string(r1) +
                                  " vs " + term_to_string(l2)};
      return {l1, r2};
    }
    case Proof::Rule::subst: {
      auto [l, r] = conclude(sig, E, p->subs[0], path + ".1");
      for (const auto& [v, t] : p->sub_map) {
        std::string s;
        try {
          s = sort_of(sig, t);
        } catch (const InputError& e) {
          throw ProofFail{path, "ill-sorted substitution for '" + v + "': " + e.what()};
        }
        std::map<std::string, std::string> fv;
        free_vars(l, fv);
        free_vars(r, fv);
        auto it = fv.find(v);
        if (it != fv.end() && it->second != s)
          throw ProofFail{path, "substitution for '" + v + "' has sort " + s +
                                    " but the variable has sort " + it->second};
      }
      return {apply_subst(l, p->sub_map), apply_subst(r, p->sub_map)};
    }
    case Proof::Rule::cong: {
      const Signature::Op* op = sig.find_op(p->op);
      if (!op) throw ProofFail{path, "unknown operation '" + p->op + "' in cong"};
      if (p->subs.size() != op->argsorts.size())
        throw ProofFail{path, "cong for '" + p->op + "' needs " +
                                  std::to_string(op->argsorts.size()) +
                                  " premises, got " + std::to_string(p->subs.size())};
      std::vector<TermPtr> ls, rs;
      for (std::size_t i = 0; i < p->subs.size(); ++i) {
        auto [l, r] = conclude(sig, E, p->subs[i], path + "." + std::to_string(i + 1));
        std::string s = sort_of(sig, l);
        if (s != op->argsorts[i])
          throw ProofFail{path, "premise " + std::to_string(i + 1) + " of cong has sort " +
                                    s + ", expected " + op->argsorts[i]};
        ls.push_back(l);
        rs.push_back(r);
      }
      return {term_app(p->op, ls), term_app(p->op, rs)};
    }
  }
  throw ProofFail{path, "malformed proof node"};
}
}  // namespace

bool check_proof(const Signature& sig, const std::vector<Equation>& E,
                 const ProofPtr& p, const Equation& goal, std::string* why) {
  validate_equation(sig, goal);
  try {
    auto [l, r] = conclude(sig, E, p, "root");
    if (!term_equal(l, goal.lhs) || !term_equal(r, goal.rhs)) {
      if (why)
        *why = "root: proof concludes " + term_to_string(l) + " ~ " +
               term_to_string(r) + ", goal is " + equation_to_string(goal);
      return false;
    }
    return true;
  } catch (const ProofFail& f) {
    if (why) *why = f.path + ": " + f.reason;
    return false;
  }
}

void validate_algebra(const Signature& sig, const FinAlgebra& a) {
  for (const auto& s : sig.sorts)
    if (!a.carrier.count(s))
      throw InputError("algebra has no carrier for sort '" + s + "'");
  for (const auto& op : sig.ops) {
    auto it = a.table.find(op.name);
    if (it == a.table.end())
      throw InputError("algebra has no table for operation '" + op.name + "'");
    std::size_t expect = 1;
    for (const auto& s : op.argsorts) expect *= a.carrier.at(s);
    if (it->second.size() != expect)
      throw InputError("table for '" + op.name + "' has " +
                       std::to_string(it->second.size()) + " entries, expected " +
                       std::to_string(expect));
    for (std::size_t v : it->second)
      if (v >= a.carrier.at(op.ressort))
        throw InputError("table for '" + op.name + "' has out-of-range entry");
  }
}

std::size_t interpret_term(const Signature& sig, const FinAlgebra& a, const TermPtr& t,
                           const std::map<std::string, std::size_t>& valuation) {
  if (t->kind == Term::Kind::var) {
    auto it = valuation.find(t->name);
    if (it == valuation.end())
      throw InputError("valuation does not cover variable '" + t->name + "'");
    return it->second;
  }
  const Signature::Op* op = sig.find_op(t->name);
  if (!op) throw InputError("unknown operation '" + t->name + "'");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    std::size_t v = interpret_term(sig, a, t->args[i], valuation);
    idx = idx * a.carrier.at(op->argsorts[i]) + v;
  }
  return a.table.at(t->name)[idx];
}

bool satisfies(const Signature& sig, const FinAlgebra& a, const Equation& eq) {
  std::vector<std::size_t> radix;
  for (const auto& [v, s] : eq.context) radix.push_back(a.carrier.at(s));
  std::vector<std::size_t> val(radix.size(), 0);
  for (std::size_t r : radix)
    if (r == 0) return true;  // no valuations
  for (;;) {
    std::map<std::string, std::size_t> v;
    for (std::size_t i = 0; i < val.size(); ++i) v[eq.context[i].first] = val[i];
    if (interpret_term(sig, a, eq.lhs, v) != interpret_term(sig, a, eq.rhs, v))
      return false;
    std::size_t i = 0;
    for (; i < val.size(); ++i) {
      if (++val[i] < radix[i]) break;
      val[i] = 0;
    }
    if (i == val.size()) break;
  }
  return true;
}

bool satisfies_all(const Signature& sig, const FinAlgebra& a,
                   const std::vector<Equation>& eqs) {
  for (const auto& eq : eqs)
    if (!satisfies(sig, a, eq)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Canned presentation: categories with a fixed object set.

namespace {
std::string hom_sort(const std::string& x, const std::string& y) {
  return "hom(" + x + "," + y + ")";
}
std::string comp_op(const std::string& x, const std::string& y, const std::string& z) {
  return "comp(" + x + "," + y + "," + z + ")";
}
std::string id_op(const std::string& x) { return "id(" + x + ")"; }
}  // namespace

Presentation canned_cat_presentation(const std::vector<std::string>& objects) {
  if (objects.empty()) throw InputError("canned_cat_presentation: empty object set");
  Presentation p;
  for (const auto& x : objects)
    for (const auto& y : objects) p.sig.sorts.push_back(hom_sort(x, y));
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects)
        p.sig.ops.push_back({comp_op(x, y, z), {hom_sort(y, z), hom_sort(x, y)},
                             hom_sort(x, z)});
  for (const auto& x : objects) p.sig.ops.push_back({id_op(x), {}, hom_sort(x, x)});

  for (const auto& w : objects)
    for (const auto& x : objects)
      for (const auto& y : objects)
        for (const auto& z : objects) {
          TermPtr h = term_var("h", hom_sort(y, z));
          TermPtr g = term_var("g", hom_sort(x, y));
          TermPtr f = term_var("f", hom_sort(w, x));
          Equation eq;
          eq.lhs = term_app(comp_op(w, y, z), {h, term_app(comp_op(w, x, y), {g, f})});
          eq.rhs = term_app(comp_op(w, x, z), {term_app(comp_op(x, y, z), {h, g}), f});
          eq.context = {{"h", hom_sort(y, z)}, {"g", hom_sort(x, y)}, {"f", hom_sort(w, x)}};
          p.eqs.push_back(eq);
        }
  for (const auto& x : objects)
    for (const auto& y : objects) {
      TermPtr f = term_var("f", hom_sort(x, y));
      Equation lu;
      lu.lhs = term_app(comp_op(x, y, y), {term_app(id_op(y), {}), f});
      lu.rhs = f;
      lu.context = {{"f", hom_sort(x, y)}};
      p.eqs.push_back(lu);
      Equation ru;
      ru.lhs = term_app(comp_op(x, x, y), {f, term_app(id_op(x), {})});
      ru.rhs = f;
      ru.context = {{"f", hom_sort(x, y)}};
      p.eqs.push_back(ru);
    }
  return p;
}

FinCategory algebra_to_category(const std::vector<std::string>& objects,
                                const FinAlgebra& a) {
  Presentation p = canned_cat_presentation(objects);
  validate_algebra(p.sig, a);
  for (const auto& eq : p.eqs)
    if (!satisfies(p.sig, a, eq))
      throw InputError("algebra fails the equation " + equation_to_string(eq));
  auto mor_name = [&](const std::string& x, const std::string& y, std::size_t k) {
    return x + ">" + y + "#" + std::to_string(k);
  };
  FinCategory c;
  for (const auto& x : objects) c.add_object(x);
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (std::size_t k = 0; k < a.carrier.at(hom_sort(x, y)); ++k)
        c.add_morphism(mor_name(x, y, k), x, y);
  for (const auto& x : objects) {
    const auto& t = a.table.at(id_op(x));
    if (t.empty()) throw InputError("empty identity table for '" + x + "'");
    c.set_identity(x, mor_name(x, x, t[0]));
  }
  for (const auto& x : objects)
    for (const auto& y : objects)
      for (const auto& z : objects) {
        std::size_t nyz = a.carrier.at(hom_sort(y, z));
        std::size_t nxy = a.carrier.at(hom_sort(x, y));
        const auto& t = a.table.at(comp_op(x, y, z));
        for (std::size_t b = 0; b < nyz; ++b)
          for (std::size_t f = 0; f < nxy; ++f)
            c.set_compose(mor_name(y, z, b), mor_name(x, y, f),
                          mor_name(x, z, t[b * nxy + f]));
      }
  c.finalize();
  return c;
}

// ---------------------------------------------------------------------------
// Canned presentation: finite-product theories over words.

namespace {
using Word = std::vector<std::string>;

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + w[i];
  return s;
}
std::string map_sort_w(const Word& a, const Word& b) {
  return "map(" + word_str(a) + "," + word_str(b) + ")";
}
std::string comp_op_w(const Word& a, const Word& b, const Word& c) {
  return "comp(" + word_str(a) + "," + word_str(b) + "," + word_str(c) + ")";
}
std::string id_op_w(const Word& a) { return "id(" + word_str(a) + ")"; }
std::string proj_op_w(const Word& a, std::size_t i) {
  return "proj(" + word_str(a) + "," + std::to_string(i) + ")";
}
std::string tuple_op_w(const Word& a, const Word& b) {
  return "tuple(" + word_str(a) + "," + word_str(b) + ")";
}

std::vector<Word> all_words(const std::vector<std::string>& sorts, std::size_t maxlen) {
  std::vector<Word> out{{}};
  std::vector<Word> prev{{}};
  for (std::size_t l = 1; l <= maxlen; ++l) {
    std::vector<Word> next;
    for (const auto& w : prev)
      for (const auto& s : sorts) {
        Word e = w;
        e.push_back(s);
        next.push_back(e);
      }
    out.insert(out.end(), next.begin(), next.end());
    prev = next;
  }
  return out;
}
}  // namespace

Presentation canned_law_presentation(const std::vector<std::string>& sorts,
                                     std::size_t maxlen) {
  if (maxlen < 1) throw InputError("canned_law_presentation: maxlen must be >= 1");
  Presentation p;
  std::vector<Word> ws = all_words(sorts, maxlen);
  for (const auto& a : ws)
    for (const auto& b : ws) p.sig.sorts.push_back(map_sort_w(a, b));
  for (const auto& a : ws)
    for (const auto& b : ws)
      for (const auto& c : ws)
        p.sig.ops.push_back({comp_op_w(a, b, c), {map_sort_w(b, c), map_sort_w(a, b)},
                             map_sort_w(a, c)});
  for (const auto& a : ws) p.sig.ops.push_back({id_op_w(a), {}, map_sort_w(a, a)});
  for (const auto& a : ws)
    for (std::size_t i = 0; i < a.size(); ++i)
      p.sig.ops.push_back({proj_op_w(a, i), {}, map_sort_w(a, Word{a[i]})});
  for (const auto& a : ws)
    for (const auto& b : ws) {
      std::vector<std::string> argsorts;
      for (const auto& s : b) argsorts.push_back(map_sort_w(a, Word{s}));
      p.sig.ops.push_back({tuple_op_w(a, b), argsorts, map_sort_w(a, b)});
    }

  auto var = [](const std::string& n, const std::string& s) { return term_var(n, s); };
  // Category laws.
  for (const auto& w : ws)
    for (const auto& x : ws)
      for (const auto& y : ws)
        for (const auto& z : ws) {
          TermPtr h = var("h", map_sort_w(y, z)), g = var("g", map_sort_w(x, y)),
                  f = var("f", map_sort_w(w, x));
          Equation eq;
          eq.lhs = term_app(comp_op_w(w, y, z), {h, term_app(comp_op_w(w, x, y), {g, f})});
          eq.rhs = term_app(comp_op_w(w, x, z), {term_app(comp_op_w(x, y, z), {h, g}), f});
          eq.context = {{"h", map_sort_w(y, z)}, {"g", map_sort_w(x, y)},
                        {"f", map_sort_w(w, x)}};
          p.eqs.push_back(eq);
        }
  for (const auto& x : ws)
    for (const auto& y : ws) {
      TermPtr f = var("f", map_sort_w(x, y));
      Equation lu{term_app(comp_op_w(x, y, y), {term_app(id_op_w(y), {}), f}), f,
                  {{"f", map_sort_w(x, y)}}};
      Equation ru{term_app(comp_op_w(x, x, y), {f, term_app(id_op_w(x), {})}), f,
                  {{"f", map_sort_w(x, y)}}};
      p.eqs.push_back(lu);
      p.eqs.push_back(ru);
    }
  // Projection/tupling laws.
  for (const auto& w : ws)
    for (const auto& b : ws) {
      std::vector<TermPtr> fs;
      std::vector<std::pair<std::string, std::string>> ctx;
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::string nm = "f" + std::to_string(i + 1);
        fs.push_back(var(nm, map_sort_w(w, Word{b[i]})));
        ctx.push_back({nm, map_sort_w(w, Word{b[i]})});
      }
      TermPtr tup = term_app(tuple_op_w(w, b), fs);
      for (std::size_t i = 0; i < b.size(); ++i) {
        Equation beta{term_app(comp_op_w(w, b, Word{b[i]}),
                               {term_app(proj_op_w(b, i), {}), tup}),
                      fs[i], ctx};
        p.eqs.push_back(beta);
      }
      if (b.empty()) {
        // Terminal uniqueness: any map to the empty word is the empty tuple.
        TermPtr f = var("f", map_sort_w(w, b));
        p.eqs.push_back(Equation{f, tup, {{"f", map_sort_w(w, b)}}});
      }
      if (b.size() == 1) {
        // Singleton tupling is the identity on components.
        p.eqs.push_back(Equation{tup, fs[0], ctx});
      }
    }
  for (const auto& w : ws) {
    // <proj_1, ..., proj_n> = id.
    std::vector<TermPtr> ps;
    for (std::size_t i = 0; i < w.size(); ++i)
      ps.push_back(term_app(proj_op_w(w, i), {}));
    p.eqs.push_back(Equation{term_app(tuple_op_w(w, w), ps),
                             term_app(id_op_w(w), {}),
                             {}});
  }
  // Naturality: tuple(f_i) o g = tuple(f_i o g).
  for (const auto& v : ws)
    for (const auto& w : ws)
      for (const auto& b : ws) {
        std::vector<TermPtr> fs, fg;
        std::vector<std::pair<std::string, std::string>> ctx{{"g", map_sort_w(v, w)}};
        TermPtr g = var("g", map_sort_w(v, w));
        for (std::size_t i = 0; i < b.size(); ++i) {
          std::string nm = "f" + std::to_string(i + 1);
          fs.push_back(var(nm, map_sort_w(w, Word{b[i]})));
          ctx.push_back({nm, map_sort_w(w, Word{b[i]})});
          fg.push_back(term_app(comp_op_w(v, w, Word{b[i]}), {fs.back(), g}));
        }
        Equation nat{term_app(comp_op_w(v, w, b), {term_app(tuple_op_w(w, b), fs), g}),
                     term_app(tuple_op_w(v, b), fg), ctx};
        p.eqs.push_back(nat);
      }
  return p;
}

// ---------------------------------------------------------------------------
// Canned presentation: cartesian closed theories over object expressions.

namespace {
std::size_t obj_depth(const ObjPtr& o) {
  switch (o->kind) {
    case ObjExpr::Kind::sort:
    case ObjExpr::Kind::unit:
      return 1;
    default:
      return 1 + std::max(obj_depth(o->a), obj_depth(o->b));
  }
}
std::string map_sort_o(const ObjPtr& a, const ObjPtr& b) {
  return "map(" + obj_to_string(a) + "," + obj_to_string(b) + ")";
}
std::string op_o(const std::string& head, std::initializer_list<ObjPtr> os) {
  std::string s = head + "(";
  bool first = true;
  for (const auto& o : os) {
    if (!first) s += ",";
    s += obj_to_string(o);
    first = false;
  }
  return s + ")";
}
}  // namespace

std::vector<ObjPtr> enumerate_objects(const std::vector<std::string>& sorts,
                                      std::size_t maxdepth) {
  std::vector<ObjPtr> out;
  out.push_back(obj_unit());
  for (const auto& s : sorts) out.push_back(obj_sort(s));
  std::size_t level_start = 0, level_end = out.size();
  for (std::size_t d = 2; d <= maxdepth; ++d) {
    // depth-d expressions: prod/exp with at least one factor from depth d-1
    for (std::size_t i = 0; i < level_end; ++i)
      for (std::size_t j = 0; j < level_end; ++j) {
        if (i < level_start && j < level_start) continue;
        out.push_back(obj_prod(out[i], out[j]));
      }
    for (std::size_t i = 0; i < level_end; ++i)
      for (std::size_t j = 0; j < level_end; ++j) {
        if (i < level_start && j < level_start) continue;
        out.push_back(obj_exp(out[i], out[j]));
      }
    level_start = level_end;
    level_end = out.size();
  }
  return out;
}

Presentation canned_ccc_presentation(const std::vector<std::string>& sorts,
                                     std::size_t maxdepth) {
  if (maxdepth < 1) throw InputError("canned_ccc_presentation: maxdepth must be >= 1");
  std::vector<ObjPtr> os = enumerate_objects(sorts, maxdepth);
  auto within = [&](const ObjPtr& o) { return obj_depth(o) <= maxdepth; };

  Presentation p;
  for (const auto& a : os)
    for (const auto& b : os) p.sig.sorts.push_back(map_sort_o(a, b));
  for (const auto& a : os)
    for (const auto& b : os)
      for (const auto& c : os)
        p.sig.ops.push_back({op_o("comp", {a, b, c}),
                             {map_sort_o(b, c), map_sort_o(a, b)}, map_sort_o(a, c)});
  for (const auto& a : os) {
    p.sig.ops.push_back({op_o("id", {a}), {}, map_sort_o(a, a)});
    p.sig.ops.push_back({op_o("bang", {a}), {}, map_sort_o(a, obj_unit())});
  }
  for (const auto& a : os)
    for (const auto& b : os) {
      ObjPtr ab = obj_prod(a, b);
      if (within(ab)) {
        p.sig.ops.push_back({op_o("p1", {a, b}), {}, map_sort_o(ab, a)});
        p.sig.ops.push_back({op_o("p2", {a, b}), {}, map_sort_o(ab, b)});
      }
    }
  for (const auto& y : os)
    for (const auto& z : os) {
      ObjPtr zy = obj_exp(z, y);
      if (!within(zy)) continue;
      ObjPtr dom = obj_prod(zy, y);
      if (within(dom))
        p.sig.ops.push_back({op_o("ev", {y, z}), {}, map_sort_o(dom, z)});
    }
  for (const auto& a : os)
    for (const auto& b : os)
      for (const auto& c : os) {
        ObjPtr bc = obj_prod(b, c);
        if (within(bc))
          p.sig.ops.push_back({op_o("pair", {a, b, c}),
                               {map_sort_o(a, b), map_sort_o(a, c)}, map_sort_o(a, bc)});
        ObjPtr ab = obj_prod(a, b), cb = obj_exp(c, b);
        if (within(ab) && within(cb))
          p.sig.ops.push_back({op_o("curry", {a, b, c}),
                               {map_sort_o(ab, c)}, map_sort_o(a, cb)});
      }

  auto t_comp = [&](const ObjPtr& a, const ObjPtr& b, const ObjPtr& c, TermPtr g,
                    TermPtr f) { return term_app(op_o("comp", {a, b, c}), {g, f}); };
  auto t_id = [&](const ObjPtr& a) { return term_app(op_o("id", {a}), {}); };
  auto t_bang = [&](const ObjPtr& a) { return term_app(op_o("bang", {a}), {}); };
  auto t_p1 = [&](const ObjPtr& a, const ObjPtr& b) {
    return term_app(op_o("p1", {a, b}), {});
  };
  auto t_p2 = [&](const ObjPtr& a, const ObjPtr& b) {
    return term_app(op_o("p2", {a, b}), {});
  };
  auto t_ev = [&](const ObjPtr& y, const ObjPtr& z) {
    return term_app(op_o("ev", {y, z}), {});
  };
  auto t_pair = [&](const ObjPtr& a, const ObjPtr& b, const ObjPtr& c, TermPtr f,
                    TermPtr g) { return term_app(op_o("pair", {a, b, c}), {f, g}); };
  auto t_curry = [&](const ObjPtr& a, const ObjPtr& b, const ObjPtr& c, TermPtr f) {
    return term_app(op_o("curry", {a, b, c}), {f});
  };

  // Category laws.
  for (const auto& w : os)
    for (const auto& x : os)
      for (const auto& y : os)
        for (const auto& z : os) {
          TermPtr h = term_var("h", map_sort_o(y, z));
          TermPtr g = term_var("g", map_sort_o(x, y));
          TermPtr f = term_var("f", map_sort_o(w, x));
          p.eqs.push_back(Equation{
              t_comp(w, y, z, h, t_comp(w, x, y, g, f)),
              t_comp(w, x, z, t_comp(x, y, z, h, g), f),
              {{"h", map_sort_o(y, z)}, {"g", map_sort_o(x, y)}, {"f", map_sort_o(w, x)}}});
        }
  for (const auto& x : os)
    for (const auto& y : os) {
      TermPtr f = term_var("f", map_sort_o(x, y));
      p.eqs.push_back(Equation{t_comp(x, y, y, t_id(y), f), f, {{"f", map_sort_o(x, y)}}});
      p.eqs.push_back(Equation{t_comp(x, x, y, f, t_id(x)), f, {{"f", map_sort_o(x, y)}}});
    }
  // Terminal: naturality of bang and uniqueness.
  ObjPtr unit = obj_unit();
  for (const auto& a : os)
    for (const auto& b : os) {
      TermPtr g = term_var("g", map_sort_o(a, b));
      p.eqs.push_back(Equation{t_comp(a, b, unit, t_bang(b), g), t_bang(a),
                               {{"g", map_sort_o(a, b)}}});
    }
  for (const auto& a : os) {
    TermPtr f = term_var("f", map_sort_o(a, unit));
    p.eqs.push_back(Equation{f, t_bang(a), {{"f", map_sort_o(a, unit)}}});
  }
  // Products: beta, eta, naturality.
  for (const auto& a : os)
    for (const auto& b : os)
      for (const auto& c : os) {
        ObjPtr bc = obj_prod(b, c);
        if (!within(bc)) continue;
        TermPtr f = term_var("f", map_sort_o(a, b));
        TermPtr g = term_var("g", map_sort_o(a, c));
        std::vector<std::pair<std::string, std::string>> ctx = {
            {"f", map_sort_o(a, b)}, {"g", map_sort_o(a, c)}};
        p.eqs.push_back(Equation{
            t_comp(a, bc, b, t_p1(b, c), t_pair(a, b, c, f, g)), f, ctx});
        p.eqs.push_back(Equation{
            t_comp(a, bc, c, t_p2(b, c), t_pair(a, b, c, f, g)), g, ctx});
      }
  for (const auto& b : os)
    for (const auto& c : os) {
      ObjPtr bc = obj_prod(b, c);
      if (!within(bc)) continue;
      p.eqs.push_back(Equation{t_pair(bc, b, c, t_p1(b, c), t_p2(b, c)), t_id(bc), {}});
    }
  for (const auto& w : os)
    for (const auto& a : os)
      for (const auto& b : os)
        for (const auto& c : os) {
          ObjPtr bc = obj_prod(b, c);
          if (!within(bc)) continue;
          TermPtr h = term_var("h", map_sort_o(w, a));
          TermPtr f = term_var("f", map_sort_o(a, b));
          TermPtr g = term_var("g", map_sort_o(a, c));
          p.eqs.push_back(Equation{
              t_comp(w, a, bc, t_pair(a, b, c, f, g), h),
              t_pair(w, b, c, t_comp(w, a, b, f, h), t_comp(w, a, c, g, h)),
              {{"h", map_sort_o(w, a)}, {"f", map_sort_o(a, b)}, {"g", map_sort_o(a, c)}}});
        }
  // Exponentials: beta and eta.
  for (const auto& a : os)
    for (const auto& b : os)
      for (const auto& c : os) {
        ObjPtr ab = obj_prod(a, b), cb = obj_exp(c, b);
        if (!within(ab) || !within(cb)) continue;
        ObjPtr cbb = obj_prod(cb, b);
        if (!within(cbb)) continue;
        TermPtr f = term_var("f", map_sort_o(ab, c));
        // (curry f x id) = <curry(f) o p1, p2> : a*b -> c^b * b
        TermPtr curry_x_id =
            t_pair(ab, cb, b, t_comp(ab, a, cb, t_curry(a, b, c, f), t_p1(a, b)),
                   t_p2(a, b));
        p.eqs.push_back(Equation{t_comp(ab, cbb, c, t_ev(b, c), curry_x_id), f,
                                 {{"f", map_sort_o(ab, c)}}});
        TermPtr g = term_var("g", map_sort_o(a, cb));
        TermPtr g_x_id = t_pair(ab, cb, b, t_comp(ab, a, cb, g, t_p1(a, b)), t_p2(a, b));
        p.eqs.push_back(Equation{
            t_curry(a, b, c, t_comp(ab, cbb, c, t_ev(b, c), g_x_id)), g,
            {{"g", map_sort_o(a, cb)}}});
      }
  return p;
}

FinAlgebra ccc_to_algebra(const CCStructure& s, const std::vector<std::string>& sorts,
                          const std::map<std::string, std::size_t>& sortmap,
                          std::size_t maxdepth) {
  std::vector<ObjPtr> os = enumerate_objects(sorts, maxdepth);
  auto within = [&](const ObjPtr& o) { return obj_depth(o) <= maxdepth; };
  const FinCategory& c = s.base;

  std::vector<std::size_t> tr;
  for (const auto& o : os) tr.push_back(translate_object(s, sortmap, o));
  auto hom = [&](std::size_t i, std::size_t j) { return c.hom_set(tr[i], tr[j]); };
  auto pos_in = [&](const std::vector<std::size_t>& lst, std::size_t m) {
    for (std::size_t i = 0; i < lst.size(); ++i)
      if (lst[i] == m) return i;
    throw InputError("ccc_to_algebra: morphism outside its hom-set");
  };

  FinAlgebra alg;
  for (std::size_t i = 0; i < os.size(); ++i)
    for (std::size_t j = 0; j < os.size(); ++j)
      alg.carrier[map_sort_o(os[i], os[j])] = hom(i, j).size();

  for (std::size_t i = 0; i < os.size(); ++i)
    for (std::size_t j = 0; j < os.size(); ++j)
      for (std::size_t k = 0; k < os.size(); ++k) {
        auto hj = hom(j, k), hi = hom(i, j), hk = hom(i, k);
        std::vector<std::size_t> t;
        for (std::size_t g : hj)
          for (std::size_t f : hi) t.push_back(pos_in(hk, c.compose(g, f)));
        alg.table[op_o("comp", {os[i], os[j], os[k]})] = t;
      }
  for (std::size_t i = 0; i < os.size(); ++i) {
    alg.table[op_o("id", {os[i]})] = {pos_in(hom(i, i), c.identity_of(tr[i]))};
    std::size_t unit_idx = 0;
    for (std::size_t j = 0; j < os.size(); ++j)
      if (os[j]->kind == ObjExpr::Kind::unit) unit_idx = j;
    alg.table[op_o("bang", {os[i]})] = {pos_in(hom(i, unit_idx), s.bang(tr[i]))};
  }
  auto find_obj = [&](const ObjPtr& o) {
    for (std::size_t i = 0; i < os.size(); ++i)
      if (obj_equal(os[i], o)) return i;
    throw InputError("ccc_to_algebra: object expression outside the enumeration");
  };
  for (std::size_t i = 0; i < os.size(); ++i)
    for (std::size_t j = 0; j < os.size(); ++j) {
      ObjPtr ab = obj_prod(os[i], os[j]);
      if (!within(ab)) continue;
      std::size_t abi = find_obj(ab);
      const ProductCone& cone = s.product(tr[i], tr[j]);
      alg.table[op_o("p1", {os[i], os[j]})] = {pos_in(hom(abi, i), cone.p1)};
      alg.table[op_o("p2", {os[i], os[j]})] = {pos_in(hom(abi, j), cone.p2)};
    }
  for (std::size_t y = 0; y < os.size(); ++y)
    for (std::size_t z = 0; z < os.size(); ++z) {
      ObjPtr zy = obj_exp(os[z], os[y]);
      if (!within(zy)) continue;
      ObjPtr dom = obj_prod(zy, os[y]);
      if (!within(dom)) continue;
      std::size_t di = find_obj(dom);
      alg.table[op_o("ev", {os[y], os[z]})] = {
          pos_in(hom(di, z), s.exponential(tr[y], tr[z]).ev)};
    }
  for (std::size_t a = 0; a < os.size(); ++a)
    for (std::size_t b = 0; b < os.size(); ++b)
      for (std::size_t cc = 0; cc < os.size(); ++cc) {
        ObjPtr bc = obj_prod(os[b], os[cc]);
        if (within(bc)) {
          std::size_t bci = find_obj(bc);
          auto hb = hom(a, b), hc = hom(a, cc), hbc = hom(a, bci);
          std::vector<std::size_t> t;
          for (std::size_t f : hb)
            for (std::size_t g : hc) t.push_back(pos_in(hbc, pairing(s, f, g)));
          alg.table[op_o("pair", {os[a], os[b], os[cc]})] = t;
        }
        ObjPtr ab = obj_prod(os[a], os[b]), cb = obj_exp(os[cc], os[b]);
        if (within(ab) && within(cb)) {
          std::size_t abi = find_obj(ab), cbi = find_obj(cb);
          auto hf = hom(abi, cc), hr = hom(a, cbi);
          std::vector<std::size_t> t;
          for (std::size_t f : hf)
            t.push_back(pos_in(hr, lambda_of(s, tr[a], tr[b], tr[cc], f)));
          alg.table[op_o("curry", {os[a], os[b], os[cc]})] = t;
        }
      }
  return alg;
}

}  // namespace catcoh
