#include "catcoh/specfile.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace catcoh {

std::optional<std::size_t> SpecFile::Axioms::find(const std::string& eq_name) const {
  for (std::size_t i = 0; i < eq_names.size(); ++i)
    if (eq_names[i] == eq_name) return i;
  return std::nullopt;
}

const SpecFile::Category* SpecFile::find_category(const std::string& name) const {
  for (const auto& e : categories)
    if (e.name == name) return &e;
  return nullptr;
}
const SpecFile::Natsys* SpecFile::find_natsys(const std::string& name) const {
  for (const auto& e : natsystems)
    if (e.name == name) return &e;
  return nullptr;
}
const SpecFile::Sig* SpecFile::find_signature(const std::string& name) const {
  for (const auto& e : signatures)
    if (e.name == name) return &e;
  return nullptr;
}
const SpecFile::Axioms* SpecFile::find_axioms(const std::string& name) const {
  for (const auto& e : axiom_sets)
    if (e.name == name) return &e;
  return nullptr;
}
const SpecFile::ProofBlock* SpecFile::find_proof(const std::string& name) const {
  for (const auto& e : proofs)
    if (e.name == name) return &e;
  return nullptr;
}
const SpecFile::CCSig* SpecFile::find_ccsig(const std::string& name) const {
  for (const auto& e : ccsigs)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

struct SpecError {
  std::size_t line, col;
  std::string msg;
};

// Cursor over one already-comment-stripped line.
struct Cur {
  const std::string& s;
  std::size_t line;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) {
    ws();
    throw SpecError{line, pos + 1, msg};
  }
  [[noreturn]] void fail_at(std::size_t p, const std::string& msg) const {
    throw SpecError{line, p + 1, msg};
  }
  void ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool at_end() {
    ws();
    return pos >= s.size();
  }
  bool peek_lit(const std::string& lit) {
    ws();
    return s.compare(pos, lit.size(), lit) == 0;
  }
  bool try_lit(const std::string& lit) {
    ws();
    if (s.compare(pos, lit.size(), lit) == 0) {
      pos += lit.size();
      return true;
    }
    return false;
  }
  void expect_lit(const std::string& lit) {
    if (!try_lit(lit)) fail("expected '" + lit + "'");
  }
  static bool idstart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool idchar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident(const std::string& what) {
    ws();
    if (pos >= s.size() || !idstart(s[pos])) fail("expected " + what);
    std::size_t b = pos;
    while (pos < s.size() && idchar(s[pos])) ++pos;
    return s.substr(b, pos - b);
  }
  std::optional<std::string> try_ident() {
    ws();
    if (pos < s.size() && idstart(s[pos])) return ident("identifier");
    return std::nullopt;
  }
  Int integer() {
    ws();
    std::size_t b = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
      pos = b;
      fail("expected an integer");
    }
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return Int(s.substr(b, pos - b));
  }
  std::size_t small_nonneg() {
    ws();
    std::size_t p0 = pos;
    Int v = integer();
    if (v < 0 || v > 1000000) fail_at(p0, "integer out of range here");
    return static_cast<std::size_t>(v.get_ui());
  }
  std::string rest() {
    ws();
    std::string r = s.substr(pos);
    pos = s.size();
    while (!r.empty() && (r.back() == ' ' || r.back() == '\t')) r.pop_back();
    return r;
  }
  void end() {
    if (!at_end()) fail("unexpected trailing input");
  }
};

using MatRows = std::vector<std::vector<Int>>;

MatRows matrix_rows(Cur& c) {
  c.expect_lit("[");
  MatRows rows;
  if (c.try_lit("]")) return rows;
  for (;;) {
    std::vector<Int> row;
    while (!c.at_end() && !c.peek_lit(";") && !c.peek_lit("]")) row.push_back(c.integer());
    rows.push_back(std::move(row));
    if (c.try_lit(";")) continue;
    c.expect_lit("]");
    break;
  }
  return rows;
}

// Matrix with both dimensions dictated by context; [] stands for any matrix
// without entries.
IntMatrix fixed_matrix(const MatRows& rows, std::size_t er, std::size_t ec,
                       std::size_t line, std::size_t col) {
  if (rows.empty()) {
    if (er != 0 && ec != 0)
      throw SpecError{line, col,
                      "matrix [] where a " + std::to_string(er) + " x " +
                          std::to_string(ec) + " matrix is expected"};
    return IntMatrix(er, ec);
  }
  if (rows.size() != er)
    throw SpecError{line, col,
                    "matrix has " + std::to_string(rows.size()) + " rows, expected " +
                        std::to_string(er)};
  IntMatrix m(er, ec);
  for (std::size_t i = 0; i < er; ++i) {
    if (rows[i].size() != ec)
      throw SpecError{line, col,
                      "matrix row " + std::to_string(i + 1) + " has " +
                          std::to_string(rows[i].size()) + " entries, expected " +
                          std::to_string(ec)};
    for (std::size_t j = 0; j < ec; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

// Relation matrix: the row count is the generator count, columns are free.
IntMatrix relation_matrix(const MatRows& rows, std::size_t ngens, std::size_t line,
                          std::size_t col) {
  if (rows.empty()) return IntMatrix(ngens, 0);
  std::size_t ec = rows[0].size();
  return fixed_matrix(rows, ngens, ec, line, col);
}

FPAbelianGroup group_lit(Cur& c) {
  c.expect_lit("Z");
  c.expect_lit("^");
  std::size_t n = c.small_nonneg();
  IntMatrix rel(n, 0);
  if (c.try_lit("/")) {
    c.ws();
    std::size_t col = c.pos + 1;
    MatRows rows = matrix_rows(c);
    rel = relation_matrix(rows, n, c.line, col);
  }
  return FPAbelianGroup(n, rel);
}

std::string group_str(const FPAbelianGroup& g) {
  std::string s = "Z^" + std::to_string(g.ngens) + " / ";
  const IntMatrix& m = g.relations;
  if (m.rows() == 0 || m.cols() == 0) return s + "[]";
  s += "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += " ";
      s += m.at(i, j).get_str();
    }
  }
  return s + "]";
}

std::string matrix_str(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return "[]";
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += " ";
      s += m.at(i, j).get_str();
    }
  }
  return s + "]";
}

// Terms of the equational fragment. Variables in equations are bare names
// resolved through the context; variables in proof-level terms carry an
// explicit `name:sort` annotation.
TermPtr parse_eqterm(Cur& c, const std::map<std::string, std::string>* ctx) {
  c.ws();
  std::size_t p0 = c.pos;
  std::string name = c.ident("a term");
  if (c.try_lit("(")) {
    std::vector<TermPtr> args;
    if (!c.try_lit(")")) {
      do {
        args.push_back(parse_eqterm(c, ctx));
      } while (c.try_lit(","));
      c.expect_lit(")");
    }
    return term_app(name, std::move(args));
  }
  if (ctx) {
    auto it = ctx->find(name);
    if (it == ctx->end())
      c.fail_at(p0, "variable '" + name + "' is not in the context");
    return term_var(name, it->second);
  }
  c.expect_lit(":");
  std::string sort = c.ident("a sort name");
  return term_var(name, sort);
}

std::vector<std::pair<std::string, std::string>> parse_context(Cur& c) {
  std::vector<std::pair<std::string, std::string>> ctx;
  c.expect_lit("[");
  if (c.try_lit("]")) return ctx;
  do {
    std::string v = c.ident("a variable name");
    c.expect_lit(":");
    std::string s = c.ident("a sort name");
    ctx.emplace_back(v, s);
  } while (c.try_lit(","));
  c.expect_lit("]");
  return ctx;
}

ProofPtr parse_pexpr(Cur& c, const SpecFile::Axioms& ax,
                     const std::map<std::string, ProofPtr>& lets) {
  c.ws();
  std::size_t p0 = c.pos;
  std::string kw = c.ident("a proof expression");
  if (kw == "axiom") {
    std::size_t p1 = c.pos;
    std::string nm = c.ident("an axiom name");
    auto idx = ax.find(nm);
    if (!idx) c.fail_at(p1, "unknown axiom '" + nm + "'");
    return proof_axiom(*idx);
  }
  if (kw == "refl") return proof_refl(parse_eqterm(c, nullptr));
  if (kw == "sym") {
    c.expect_lit("(");
    ProofPtr p = parse_pexpr(c, ax, lets);
    c.expect_lit(")");
    return proof_sym(std::move(p));
  }
  if (kw == "trans") {
    c.expect_lit("(");
    ProofPtr a = parse_pexpr(c, ax, lets);
    c.expect_lit(",");
    ProofPtr b = parse_pexpr(c, ax, lets);
    c.expect_lit(")");
    return proof_trans(std::move(a), std::move(b));
  }
  if (kw == "subst") {
    c.expect_lit("(");
    ProofPtr p = parse_pexpr(c, ax, lets);
    c.expect_lit(";");
    Substitution sub;
    if (!c.peek_lit(")")) {
      do {
        std::size_t p1 = c.pos;
        std::string v = c.ident("a variable name");
        c.expect_lit(":=");
        if (sub.count(v)) c.fail_at(p1, "variable '" + v + "' substituted twice");
        sub[v] = parse_eqterm(c, nullptr);
      } while (c.try_lit(","));
    }
    c.expect_lit(")");
    return proof_subst(std::move(p), std::move(sub));
  }
  if (kw == "cong") {
    std::string op = c.ident("an operation name");
    c.expect_lit("(");
    std::vector<ProofPtr> subs;
    if (!c.try_lit(")")) {
      do {
        subs.push_back(parse_pexpr(c, ax, lets));
      } while (c.try_lit(","));
      c.expect_lit(")");
    }
    return proof_cong(op, std::move(subs));
  }
  auto it = lets.find(kw);
  if (it != lets.end()) return it->second;
  c.fail_at(p0, "unknown proof expression '" + kw + "'");
}

std::string pterm_str(const TermPtr& t) {
  if (t->kind == Term::Kind::var) return t->name + ":" + t->sort;
  std::string s = t->name + "(";
  for (std::size_t i = 0; i < t->args.size(); ++i)
    s += (i ? ", " : "") + pterm_str(t->args[i]);
  return s + ")";
}

std::string pexpr_str(const ProofPtr& p, const SpecFile::Axioms& ax) {
  switch (p->rule) {
    case Proof::Rule::axiom:
      return "axiom " + ax.eq_names[p->index];
    case Proof::Rule::refl:
      return "refl " + pterm_str(p->t);
    case Proof::Rule::sym:
      return "sym(" + pexpr_str(p->subs[0], ax) + ")";
    case Proof::Rule::trans:
      return "trans(" + pexpr_str(p->subs[0], ax) + ", " + pexpr_str(p->subs[1], ax) + ")";
    case Proof::Rule::subst: {
      std::string s = "subst(" + pexpr_str(p->subs[0], ax) + ";";
      bool first = true;
      for (const auto& [v, t] : p->sub_map) {
        s += first ? " " : ", ";
        s += v + " := " + pterm_str(t);
        first = false;
      }
      return s + ")";
    }
    case Proof::Rule::cong: {
      std::string s = "cong " + p->op + "(";
      for (std::size_t i = 0; i < p->subs.size(); ++i)
        s += (i ? ", " : "") + pexpr_str(p->subs[i], ax);
      return s + ")";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------

struct Parser {
  SpecFile out;
  std::string filename;

  enum class Sect { none, category, structure, natsys, signature, axioms, proof, ccsig };
  Sect sect = Sect::none;

  // category block buffer
  struct CatBuf {
    std::string name;
    std::size_t header_line = 0;
    bool have_objects = false;
    std::vector<std::string> objects;
    std::size_t objects_line = 0;
    struct M {
      std::string id, src, tgt;
      std::size_t line;
    };
    std::vector<M> mors;
    struct I {
      std::string obj, mor;
      std::size_t line;
    };
    std::vector<I> idents;
    struct Cp {
      std::string g, f, h;
      std::size_t line;
    };
    std::vector<Cp> comps;
  } cat;

  // natsys block buffer
  struct NatBuf {
    std::string name, over;
    std::size_t header_line = 0;
    std::size_t cat_index = 0;
    std::optional<FPAbelianGroup> constant;
    std::size_t constant_line = 0;
    std::map<std::size_t, FPAbelianGroup> groups;  // morphism -> group
    struct MapLine {
      bool is_pre;
      std::size_t a, f;  // resolved morphisms
      MatRows rows;
      std::size_t line, col;
    };
    std::vector<MapLine> maps;
  } nat;

  // signature block
  SpecFile::Sig sig;
  std::size_t sig_header_line = 0;

  // axioms block
  SpecFile::Axioms ax;
  std::size_t ax_sig_index = 0;

  // proof block
  SpecFile::ProofBlock prf;
  std::size_t prf_header_line = 0;
  std::size_t prf_ax_index = 0;
  bool prf_have_goal = false;
  std::map<std::string, ProofPtr> prf_lets;
  std::vector<std::string> prf_let_order;

  // ccsig block
  SpecFile::CCSig ccs;
  std::size_t ccs_header_line = 0;

  void finish_current() {
    switch (sect) {
      case Sect::none:
      case Sect::structure:
        break;
      case Sect::category:
        finish_category();
        break;
      case Sect::natsys:
        finish_natsys();
        break;
      case Sect::signature:
        finish_signature();
        break;
      case Sect::axioms:
        out.axiom_sets.push_back(std::move(ax));
        ax = {};
        break;
      case Sect::proof:
        finish_proof();
        break;
      case Sect::ccsig:
        finish_ccsig();
        break;
    }
    sect = Sect::none;
  }

  void finish_category() {
    std::size_t hl = cat.header_line;
    if (!cat.have_objects || cat.objects.empty())
      throw SpecError{hl, 1, "category must have >=1 object"};
    std::set<std::string> objset;
    for (const auto& o : cat.objects)
      if (!objset.insert(o).second)
        throw SpecError{cat.objects_line, 1, "duplicate object '" + o + "'"};
    FinCategory c;
    for (const auto& o : cat.objects) c.add_object(o);
    std::set<std::string> morset;
    for (const auto& m : cat.mors) {
      if (!morset.insert(m.id).second)
        throw SpecError{m.line, 1, "duplicate morphism '" + m.id + "'"};
      if (!objset.count(m.src))
        throw SpecError{m.line, 1, "unknown object '" + m.src + "'"};
      if (!objset.count(m.tgt))
        throw SpecError{m.line, 1, "unknown object '" + m.tgt + "'"};
      c.add_morphism(m.id, m.src, m.tgt);
    }
    std::set<std::string> ided;
    for (const auto& i : cat.idents) {
      if (!objset.count(i.obj)) throw SpecError{i.line, 1, "unknown object '" + i.obj + "'"};
      if (!morset.count(i.mor))
        throw SpecError{i.line, 1, "unknown morphism '" + i.mor + "'"};
      if (!ided.insert(i.obj).second)
        throw SpecError{i.line, 1, "duplicate identity line for '" + i.obj + "'"};
      std::size_t mi = c.morphism_index(i.mor), oi = c.object_index(i.obj);
      if (c.src(mi) != oi || c.tgt(mi) != oi)
        throw SpecError{i.line, 1,
                        "identity of '" + i.obj + "' must be an endomorphism of it"};
      c.set_identity(i.obj, i.mor);
    }
    for (const auto& o : cat.objects) {
      if (ided.count(o)) continue;
      std::string auto_id = "id_" + o;
      if (morset.count(auto_id))
        throw SpecError{hl, 1,
                        "morphism name '" + auto_id +
                            "' collides with the implicit identity of '" + o +
                            "'; add an identity line"};
      c.add_morphism(auto_id, o, o);
      c.set_identity(o, auto_id);
      morset.insert(auto_id);
    }
    std::set<std::pair<std::string, std::string>> compset;
    for (const auto& cp : cat.comps) {
      for (const std::string* nm : {&cp.g, &cp.f, &cp.h})
        if (!morset.count(*nm))
          throw SpecError{cp.line, 1, "unknown morphism '" + *nm + "'"};
      std::size_t g = c.morphism_index(cp.g), f = c.morphism_index(cp.f),
                  h = c.morphism_index(cp.h);
      if (c.tgt(f) != c.src(g))
        throw SpecError{cp.line, 1,
                        "morphisms '" + cp.g + "' and '" + cp.f + "' are not composable"};
      if (c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g))
        throw SpecError{cp.line, 1, "composite '" + cp.h + "' has the wrong endpoints"};
      if (!compset.insert({cp.g, cp.f}).second)
        throw SpecError{cp.line, 1,
                        "duplicate compose line for '" + cp.g + "' after '" + cp.f + "'"};
      c.set_compose(cp.g, cp.f, cp.h);
    }
    try {
      c.finalize();
    } catch (const InputError& e) {
      throw SpecError{hl, 1, e.what()};
    }
    if (out.find_category(cat.name))
      throw SpecError{hl, 1, "duplicate category name '" + cat.name + "'"};
    out.categories.push_back({cat.name, std::move(c), std::nullopt});
    cat = {};
  }

  void finish_natsys() {
    std::size_t hl = nat.header_line;
    const FinCategory& c = out.categories[nat.cat_index].cat;
    NaturalSystem sys;
    if (nat.constant) {
      if (!nat.groups.empty() || !nat.maps.empty())
        throw SpecError{nat.constant_line, 1,
                        "constant: cannot be combined with group/pre/post lines"};
      sys = constant_system(c, *nat.constant);
    } else {
      for (std::size_t m = 0; m < c.nmor(); ++m)
        if (!nat.groups.count(m))
          throw SpecError{hl, 1,
                          "no group line for morphism '" + c.morphism_id(m) + "'"};
      sys.base = c;
      sys.value.resize(c.nmor());
      for (auto& [m, g] : nat.groups) sys.value[m] = g;
      for (const auto& ml : nat.maps) {
        if (ml.is_pre) {
          std::size_t fa = c.compose(ml.f, ml.a);
          IntMatrix m = fixed_matrix(ml.rows, sys.value[fa].ngens,
                                     sys.value[ml.f].ngens, ml.line, ml.col);
          if (!sys.pre.emplace(std::make_pair(ml.a, ml.f), std::move(m)).second)
            throw SpecError{ml.line, 1, "duplicate pre line"};
        } else {
          std::size_t bf = c.compose(ml.a, ml.f);
          IntMatrix m = fixed_matrix(ml.rows, sys.value[bf].ngens,
                                     sys.value[ml.f].ngens, ml.line, ml.col);
          if (!sys.post.emplace(std::make_pair(ml.a, ml.f), std::move(m)).second)
            throw SpecError{ml.line, 1, "duplicate post line"};
        }
      }
      // identity pre/post maps are forced by the functor laws; fill them in
      for (std::size_t f = 0; f < c.nmor(); ++f) {
        std::size_t ia = c.identity_of(c.src(f)), ib = c.identity_of(c.tgt(f));
        sys.pre.emplace(std::make_pair(ia, f), IntMatrix::identity(sys.value[f].ngens));
        sys.post.emplace(std::make_pair(ib, f), IntMatrix::identity(sys.value[f].ngens));
      }
      for (std::size_t a = 0; a < c.nmor(); ++a)
        for (std::size_t f = 0; f < c.nmor(); ++f) {
          if (c.tgt(a) == c.src(f) && !sys.pre.count({a, f}))
            throw SpecError{hl, 1,
                            "missing pre map for '" + c.morphism_id(a) + "' on '" +
                                c.morphism_id(f) + "'"};
          if (c.src(a) == c.tgt(f) && !sys.post.count({a, f}))
            throw SpecError{hl, 1,
                            "missing post map for '" + c.morphism_id(a) + "' on '" +
                                c.morphism_id(f) + "'"};
        }
    }
    if (out.find_natsys(nat.name))
      throw SpecError{hl, 1, "duplicate natsys name '" + nat.name + "'"};
    out.natsystems.push_back({nat.name, nat.over, std::move(sys)});
    nat = {};
  }

  void finish_signature() {
    try {
      validate_eqsignature(sig.sig);
    } catch (const InputError& e) {
      throw SpecError{sig_header_line, 1, e.what()};
    }
    if (out.find_signature(sig.name))
      throw SpecError{sig_header_line, 1, "duplicate signature name '" + sig.name + "'"};
    out.signatures.push_back(std::move(sig));
    sig = {};
  }

  void finish_proof() {
    if (!prf_have_goal) throw SpecError{prf_header_line, 1, "proof has no goal line"};
    if (!prf.proof) throw SpecError{prf_header_line, 1, "proof has no by line"};
    if (out.find_proof(prf.name))
      throw SpecError{prf_header_line, 1, "duplicate proof name '" + prf.name + "'"};
    out.proofs.push_back(std::move(prf));
    prf = {};
    prf_have_goal = false;
    prf_lets.clear();
    prf_let_order.clear();
  }

  void finish_ccsig() {
    try {
      validate_signature(ccs.sig);
    } catch (const InputError& e) {
      throw SpecError{ccs_header_line, 1, e.what()};
    }
    if (out.find_ccsig(ccs.name))
      throw SpecError{ccs_header_line, 1, "duplicate ccsig name '" + ccs.name + "'"};
    out.ccsigs.push_back(std::move(ccs));
    ccs = {};
  }

  // one construct per line
  void line(Cur& c) {
    c.ws();
    std::size_t kw_pos = c.pos;
    auto kw_opt = c.try_ident();
    if (!kw_opt) c.fail("expected a keyword");
    const std::string& kw = *kw_opt;

    // section headers
    if (kw == "category") {
      finish_current();
      cat.name = c.ident("a category name");
      cat.header_line = c.line;
      c.end();
      sect = Sect::category;
      return;
    }
    if (kw == "structure") {
      if (sect != Sect::category)
        c.fail_at(kw_pos, "'structure' must directly follow a category block");
      finish_current();
      c.end();
      auto& entry = out.categories.back();
      if (entry.structure) c.fail_at(kw_pos, "duplicate structure block");
      entry.structure.emplace();
      entry.structure->base = entry.cat;
      sect = Sect::structure;
      return;
    }
    if (kw == "natsys") {
      finish_current();
      nat.name = c.ident("a natsys name");
      if (c.ident("'over'") != "over") c.fail("expected 'over'");
      std::size_t p0 = c.pos;
      nat.over = c.ident("a category name");
      c.end();
      nat.header_line = c.line;
      const SpecFile::Category* ce = out.find_category(nat.over);
      if (!ce) c.fail_at(p0, "unknown category '" + nat.over + "'");
      nat.cat_index = static_cast<std::size_t>(ce - out.categories.data());
      sect = Sect::natsys;
      return;
    }
    if (kw == "signature") {
      finish_current();
      sig.name = c.ident("a signature name");
      sig_header_line = c.line;
      c.end();
      sect = Sect::signature;
      return;
    }
    if (kw == "equations") {
      finish_current();
      ax.name = c.ident("an equation-set name");
      if (c.ident("'over'") != "over") c.fail("expected 'over'");
      std::size_t p0 = c.pos;
      ax.over = c.ident("a signature name");
      c.end();
      const SpecFile::Sig* se = out.find_signature(ax.over);
      if (!se) c.fail_at(p0, "unknown signature '" + ax.over + "'");
      ax_sig_index = static_cast<std::size_t>(se - out.signatures.data());
      if (out.find_axioms(ax.name))
        c.fail_at(kw_pos, "duplicate equation-set name '" + ax.name + "'");
      sect = Sect::axioms;
      return;
    }
    if (kw == "proof") {
      finish_current();
      prf.name = c.ident("a proof name");
      prf_header_line = c.line;
      if (c.ident("'over'") != "over") c.fail("expected 'over'");
      std::size_t p0 = c.pos;
      prf.over = c.ident("an equation-set name");
      c.end();
      const SpecFile::Axioms* ae = out.find_axioms(prf.over);
      if (!ae) c.fail_at(p0, "unknown equation set '" + prf.over + "'");
      prf_ax_index = static_cast<std::size_t>(ae - out.axiom_sets.data());
      sect = Sect::proof;
      return;
    }
    if (kw == "ccsig") {
      finish_current();
      ccs.name = c.ident("a ccsig name");
      ccs_header_line = c.line;
      c.end();
      sect = Sect::ccsig;
      return;
    }

    switch (sect) {
      case Sect::category:
        category_line(c, kw, kw_pos);
        return;
      case Sect::structure:
        structure_line(c, kw, kw_pos);
        return;
      case Sect::natsys:
        natsys_line(c, kw, kw_pos);
        return;
      case Sect::signature:
        signature_line(c, kw, kw_pos);
        return;
      case Sect::axioms:
        axioms_line(c, kw, kw_pos);
        return;
      case Sect::proof:
        proof_line(c, kw, kw_pos);
        return;
      case Sect::ccsig:
        ccsig_line(c, kw, kw_pos);
        return;
      case Sect::none:
        c.fail_at(kw_pos, "'" + kw + "' outside any block");
    }
  }

  void category_line(Cur& c, const std::string& kw, std::size_t kw_pos) {
    if (kw == "objects") {
      c.expect_lit(":");
      if (cat.have_objects) c.fail_at(kw_pos, "duplicate objects line");
      cat.have_objects = true;
      cat.objects_line = c.line;
      while (auto o = c.try_ident()) cat.objects.push_back(*o);
      c.end();
      if (cat.objects.empty()) throw SpecError{c.line, 1, "category must have >=1 object"};
      return;
    }
    if (kw == "mor") {
      std::string id = c.ident("a morphism name");
      c.expect_lit(":");
      std::string src = c.ident("an object name");
      c.expect_lit("->");
      std::string tgt = c.ident("an object name");
      c.end();
      cat.mors.push_back({id, src, tgt, c.line});
      return;
    }
    if (kw == "identity") {
      std::string obj = c.ident("an object name");
      c.expect_lit("=");
      std::string mor = c.ident("a morphism name");
      c.end();
      cat.idents.push_back({obj, mor, c.line});
      return;
    }
    if (kw == "compose") {
      std::string g = c.ident("a morphism name");
      std::string f = c.ident("a morphism name");
      c.expect_lit("=");
      std::string h = c.ident("a morphism name");
      c.end();
      cat.comps.push_back({g, f, h, c.line});
      return;
    }
    c.fail_at(kw_pos, "unexpected '" + kw + "' in a category block");
  }

  void structure_line(Cur& c, const std::string& kw, std::size_t kw_pos) {
    CCStructure& st = *out.categories.back().structure;
    const FinCategory& cc = out.categories.back().cat;
    auto obj = [&](const std::string& what) {
      std::size_t p0 = c.pos;
      std::string id = c.ident(what);
      if (!cc.has_object(id)) c.fail_at(p0, "unknown object '" + id + "'");
      return cc.object_index(id);
    };
    auto mor = [&](const std::string& what) {
      std::size_t p0 = c.pos;
      std::string id = c.ident(what);
      if (!cc.has_morphism(id)) c.fail_at(p0, "unknown morphism '" + id + "'");
      return cc.morphism_index(id);
    };
    if (kw == "terminal") {
      c.expect_lit(":");
      if (st.terminal) c.fail_at(kw_pos, "duplicate terminal line");
      st.terminal = obj("an object name");
      c.end();
      return;
    }
    if (kw == "product") {
      std::size_t a = obj("an object name"), b = obj("an object name");
      c.expect_lit("=");
      std::size_t p = obj("an object name");
      c.expect_lit("with");
      c.expect_lit("p1");
      c.expect_lit("=");
      std::size_t m1 = mor("a morphism name");
      c.expect_lit(",");
      c.expect_lit("p2");
      c.expect_lit("=");
      std::size_t m2 = mor("a morphism name");
      c.end();
      if (st.products.count({a, b})) c.fail_at(kw_pos, "duplicate product line");
      st.products[{a, b}] = ProductCone{p, m1, m2};
      return;
    }
    if (kw == "exp") {
      std::size_t y = obj("an object name"), z = obj("an object name");
      c.expect_lit("=");
      std::size_t e = obj("an object name");
      c.expect_lit("with");
      c.expect_lit("ev");
      c.expect_lit("=");
      std::size_t m = mor("a morphism name");
      c.end();
      if (st.exponentials.count({y, z})) c.fail_at(kw_pos, "duplicate exp line");
      st.exponentials[{y, z}] = ExpCone{e, m};
      return;
    }
    c.fail_at(kw_pos, "unexpected '" + kw + "' in a structure block");
  }

  void natsys_line(Cur& c, const std::string& kw, std::size_t kw_pos) {
    const FinCategory& cc = out.categories[nat.cat_index].cat;
    auto mor = [&](const std::string& what) {
      std::size_t p0 = c.pos;
      std::string id = c.ident(what);
      if (!cc.has_morphism(id)) c.fail_at(p0, "unknown morphism '" + id + "'");
      return cc.morphism_index(id);
    };
    if (kw == "constant") {
      c.expect_lit(":");
      if (nat.constant) c.fail_at(kw_pos, "duplicate constant line");
      nat.constant = group_lit(c);
      nat.constant_line = c.line;
      c.end();
      return;
    }
    if (kw == "group") {
      std::size_t m = mor("a morphism name");
      c.expect_lit("=");
      FPAbelianGroup g = group_lit(c);
      c.end();
      if (nat.groups.count(m)) c.fail_at(kw_pos, "duplicate group line");
      nat.groups.emplace(m, std::move(g));
      return;
    }
    if (kw == "pre" || kw == "post") {
      std::size_t a = mor("a morphism name");
      if (c.ident("'on'") != "on") c.fail("expected 'on'");
      std::size_t ppos = c.pos;
      std::size_t f = mor("a morphism name");
      c.expect_lit("=");
      c.ws();
      std::size_t col = c.pos + 1;
      MatRows rows = matrix_rows(c);
      c.end();
      if (kw == "pre" && cc.tgt(a) != cc.src(f))
        c.fail_at(ppos, "'" + cc.morphism_id(a) + "' does not precompose with '" +
                            cc.morphism_id(f) + "'");
      if (kw == "post" && cc.src(a) != cc.tgt(f))
        c.fail_at(ppos, "'" + cc.morphism_id(a) + "' does not postcompose with '" +
                            cc.morphism_id(f) + "'");
      nat.maps.push_back({kw == "pre", a, f, std::move(rows), c.line, col});
      return;
    }
    c.fail_at(kw_pos, "unexpected '" + kw + "' in a natsys block");
  }

  void signature_line(Cur& c, const std::string& kw, std::size_t kw_pos) {
    if (kw == "sort") {
      sig.sig.sorts.push_back(c.ident("a sort name"));
      c.end();
      return;
    }
    if (kw == "op") {
      Signature::Op op;
      op.name = c.ident("an operation name");
      c.expect_lit(":");
      while (!c.peek_lit("->")) op.argsorts.push_back(c.ident("a sort name"));
      c.expect_lit("->");
      op.ressort = c.ident("a sort name");
      c.end();
      sig.sig.ops.push_back(std::move(op));
      return;
    }
    c.fail_at(kw_pos, "unexpected '" + kw + "' in a signature block");
  }

  void axioms_line(Cur& c, const std::string& kw, std::size_t kw_pos) {
    const Signature& s = out.signatures[ax_sig_index].sig;
    if (kw == "eq") {
      std::size_t p0 = c.pos;
      std::string name = c.ident("an equation name");
      if (ax.find(name)) c.fail_at(p0, "duplicate equation name '" + name + "'");
      Equation eq;
      eq.context = parse_context(c);
      std::map<std::string, std::string> ctx;
      for (const auto& [v, so] : eq.context) ctx[v] = so;
      c.expect_lit(":");
      eq.lhs = parse_eqterm(c, &ctx);
      c.expect_lit("~");
      eq.rhs = parse_eqterm(c, &ctx);
      c.end();
      try {
        validate_equation(s, eq);
      } catch (const InputError& e) {
        throw SpecError{c.line, 1, e.what()};
      }
      ax.eq_names.push_back(name);
      ax.eqs.push_back(std::move(eq));
      return;
    }
    c.fail_at(kw_pos, "unexpected '" + kw + "' in an equations block");
  }

  void proof_line(Cur& c, const std::string& kw, std::size_t kw_pos) {
    const SpecFile::Axioms& axs = out.axiom_sets[prf_ax_index];
    const Signature& s = out.find_signature(axs.over)->sig;
    if (kw == "goal") {
      if (prf_have_goal) c.fail_at(kw_pos, "duplicate goal line");
      Equation eq;
      eq.context = parse_context(c);
      std::map<std::string, std::string> ctx;
      for (const auto& [v, so] : eq.context) ctx[v] = so;
      c.expect_lit(":");
      eq.lhs = parse_eqterm(c, &ctx);
      c.expect_lit("~");
      eq.rhs = parse_eqterm(c, &ctx);
      c.end();
      try {
        validate_equation(s, eq);
      } catch (const InputError& e) {
        throw SpecError{c.line, 1, e.what()};
      }
      prf.goal = std::move(eq);
      prf_have_goal = true;
      return;
    }
    if (kw == "let") {
      std::size_t p0 = c.pos;
      std::string name = c.ident("a name");
      if (prf_lets.count(name)) c.fail_at(p0, "duplicate let name '" + name + "'");
      c.expect_lit("=");
      ProofPtr p = parse_pexpr(c, axs, prf_lets);
      c.end();
      prf_lets[name] = std::move(p);
      prf_let_order.push_back(name);
      return;
    }
    if (kw == "by") {
      if (prf.proof) c.fail_at(kw_pos, "duplicate by line");
      prf.proof = parse_pexpr(c, axs, prf_lets);
      c.end();
      return;
    }
    c.fail_at(kw_pos, "unexpected '" + kw + "' in a proof block");
  }

  void ccsig_line(Cur& c, const std::string& kw, std::size_t kw_pos) {
    if (kw == "sorts") {
      while (auto s = c.try_ident()) ccs.sig.sorts.push_back(*s);
      c.end();
      return;
    }
    if (kw == "gen") {
      std::string name = c.ident("a generator name");
      c.expect_lit(":");
      std::string restline = c.rest();
      std::size_t arrow = restline.find("->");
      if (arrow == std::string::npos) c.fail("expected 'SRC -> TGT'");
      if (restline.find("->", arrow + 2) != std::string::npos)
        c.fail("expected exactly one '->'");
      std::string srct = restline.substr(0, arrow);
      std::string tgtt = restline.substr(arrow + 2);
      try {
        ObjPtr src = parse_object(srct);
        ObjPtr tgt = parse_object(tgtt);
        ccs.sig.generators.push_back({name, src, tgt});
      } catch (const InputError& e) {
        throw SpecError{c.line, 1, std::string("in the type of '") + name + "': " + e.what()};
      }
      return;
    }
    if (kw == "term") {
      std::string name = c.ident("a term name");
      for (const auto& [n, t] : ccs.terms)
        if (n == name) c.fail_at(kw_pos, "duplicate term name '" + name + "'");
      c.expect_lit("=");
      std::string text = c.rest();
      try {
        validate_signature(ccs.sig);
        MorPtr t = parse_term(ccs.sig, text);
        ccs.terms.emplace_back(name, std::move(t));
      } catch (const InputError& e) {
        throw SpecError{c.line, 1, std::string("in term '") + name + "': " + e.what()};
      }
      return;
    }
    c.fail_at(kw_pos, "unexpected '" + kw + "' in a ccsig block");
  }
};

}  // namespace

SpecFile parse_spec(const std::string& text, const std::string& filename) {
  Parser p;
  p.filename = filename;
  std::size_t lineno = 0;
  try {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineno;
      std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      bool blank = true;
      for (char ch : raw)
        if (ch != ' ' && ch != '\t') blank = false;
      if (blank) continue;
      Cur c{raw, lineno};
      try {
        p.line(c);
      } catch (const InputError& e) {
        throw SpecError{lineno, 1, e.what()};
      }
    }
    try {
      p.finish_current();
    } catch (const InputError& e) {
      throw SpecError{lineno == 0 ? 1 : lineno, 1, e.what()};
    }
  } catch (const SpecError& e) {
    throw InputError(filename + ":" + std::to_string(e.line) + ":" +
                     std::to_string(e.col) + ": " + e.msg);
  }
  return p.out;
}

std::string print_spec(const SpecFile& f) {
  std::ostringstream o;
  bool first = true;
  auto sep = [&]() {
    if (!first) o << "\n";
    first = false;
  };
  for (const auto& ce : f.categories) {
    sep();
    const FinCategory& c = ce.cat;
    o << "category " << ce.name << "\n";
    o << "objects:";
    for (std::size_t x = 0; x < c.nobj(); ++x) o << " " << c.object_id(x);
    o << "\n";
    for (std::size_t m = 0; m < c.nmor(); ++m)
      o << "mor " << c.morphism_id(m) << " : " << c.object_id(c.src(m)) << " -> "
        << c.object_id(c.tgt(m)) << "\n";
    for (std::size_t x = 0; x < c.nobj(); ++x)
      o << "identity " << c.object_id(x) << " = " << c.morphism_id(c.identity_of(x))
        << "\n";
    for (std::size_t g = 0; g < c.nmor(); ++g)
      for (std::size_t m = 0; m < c.nmor(); ++m) {
        if (c.is_identity(g) || c.is_identity(m)) continue;
        if (!c.composable(g, m)) continue;
        o << "compose " << c.morphism_id(g) << " " << c.morphism_id(m) << " = "
          << c.morphism_id(c.compose(g, m)) << "\n";
      }
    if (ce.structure) {
      const CCStructure& st = *ce.structure;
      o << "structure\n";
      if (st.terminal) o << "terminal: " << c.object_id(*st.terminal) << "\n";
      for (const auto& [key, cone] : st.products)
        o << "product " << c.object_id(key.first) << " " << c.object_id(key.second)
          << " = " << c.object_id(cone.object) << " with p1=" << c.morphism_id(cone.p1)
          << ", p2=" << c.morphism_id(cone.p2) << "\n";
      for (const auto& [key, cone] : st.exponentials)
        o << "exp " << c.object_id(key.first) << " " << c.object_id(key.second) << " = "
          << c.object_id(cone.object) << " with ev=" << c.morphism_id(cone.ev) << "\n";
    }
  }
  for (const auto& ne : f.natsystems) {
    sep();
    const FinCategory& c = ne.sys.base;
    o << "natsys " << ne.name << " over " << ne.over << "\n";
    for (std::size_t m = 0; m < c.nmor(); ++m)
      o << "group " << c.morphism_id(m) << " = " << group_str(ne.sys.value[m]) << "\n";
    for (const auto& [key, mat] : ne.sys.pre) {
      if (c.is_identity(key.first)) continue;
      o << "pre " << c.morphism_id(key.first) << " on " << c.morphism_id(key.second)
        << " = " << matrix_str(mat) << "\n";
    }
    for (const auto& [key, mat] : ne.sys.post) {
      if (c.is_identity(key.first)) continue;
      o << "post " << c.morphism_id(key.first) << " on " << c.morphism_id(key.second)
        << " = " << matrix_str(mat) << "\n";
    }
  }
  for (const auto& se : f.signatures) {
    sep();
    o << "signature " << se.name << "\n";
    for (const auto& s : se.sig.sorts) o << "sort " << s << "\n";
    for (const auto& op : se.sig.ops) {
      o << "op " << op.name << " :";
      for (const auto& a : op.argsorts) o << " " << a;
      o << " -> " << op.ressort << "\n";
    }
  }
  for (const auto& ae : f.axiom_sets) {
    sep();
    o << "equations " << ae.name << " over " << ae.over << "\n";
    for (std::size_t i = 0; i < ae.eqs.size(); ++i) {
      o << "eq " << ae.eq_names[i] << " [";
      const auto& ctx = ae.eqs[i].context;
      for (std::size_t j = 0; j < ctx.size(); ++j) {
        if (j) o << ", ";
        o << ctx[j].first << ":" << ctx[j].second;
      }
      o << "] : " << term_to_string(ae.eqs[i].lhs) << " ~ "
        << term_to_string(ae.eqs[i].rhs) << "\n";
    }
  }
  for (const auto& pe : f.proofs) {
    sep();
    const SpecFile::Axioms* ax = f.find_axioms(pe.over);
    o << "proof " << pe.name << " over " << pe.over << "\n";
    o << "goal [";
    for (std::size_t j = 0; j < pe.goal.context.size(); ++j) {
      if (j) o << ", ";
      o << pe.goal.context[j].first << ":" << pe.goal.context[j].second;
    }
    o << "] : " << term_to_string(pe.goal.lhs) << " ~ " << term_to_string(pe.goal.rhs)
      << "\n";
    o << "by " << pexpr_str(pe.proof, *ax) << "\n";
  }
  for (const auto& cs : f.ccsigs) {
    sep();
    o << "ccsig " << cs.name << "\n";
    if (!cs.sig.sorts.empty()) {
      o << "sorts";
      for (const auto& s : cs.sig.sorts) o << " " << s;
      o << "\n";
    }
    for (const auto& g : cs.sig.generators)
      o << "gen " << g.name << " : " << obj_to_string(g.src) << " -> "
        << obj_to_string(g.tgt) << "\n";
    for (const auto& [name, t] : cs.terms)
      o << "term " << name << " = " << mor_to_string(t) << "\n";
  }
  return o.str();
}

}  // namespace catcoh
