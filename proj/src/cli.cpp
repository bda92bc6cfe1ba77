#include "catcoh/cli.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "catcoh/bwcoh.hpp"
#include "catcoh/der.hpp"
#include "catcoh/families.hpp"
#include "catcoh/freeccc.hpp"
#include "catcoh/linext.hpp"
#include "catcoh/specfile.hpp"
#include "json.hpp"

namespace catcoh {

namespace {

using json = nlohmann::ordered_json;

struct Reporter {
  std::ostream& out;
  bool json_mode = false;

  void line(const std::string& text, const json& record) {
    if (json_mode)
      out << record.dump() << "\n";
    else
      out << text << "\n";
  }
};

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path);
}

const SpecFile::Natsys& pick_natsys(const SpecFile& f, const std::string& name) {
  if (!name.empty()) {
    const SpecFile::Natsys* n = f.find_natsys(name);
    if (!n) throw InputError("no natsys named '" + name + "' in the file");
    return *n;
  }
  if (f.natsystems.empty()) throw InputError("the file defines no natsys");
  if (f.natsystems.size() > 1)
    throw InputError("the file defines several natsys blocks; pick one with --natsys");
  return f.natsystems[0];
}

const SpecFile::CCSig& pick_ccsig(const SpecFile& f, const std::string& name) {
  if (!name.empty()) {
    const SpecFile::CCSig* n = f.find_ccsig(name);
    if (!n) throw InputError("no ccsig named '" + name + "' in the file");
    return *n;
  }
  if (f.ccsigs.empty()) throw InputError("the file defines no ccsig");
  if (f.ccsigs.size() > 1)
    throw InputError("the file defines several ccsig blocks; pick one with --ccsig");
  return f.ccsigs[0];
}

const CCStructure& structure_of(const SpecFile& f, const SpecFile::Natsys& n) {
  const SpecFile::Category* c = f.find_category(n.over);
  if (!c || !c->structure)
    throw InputError("category '" + n.over + "' has no structure block");
  return *c->structure;
}

std::string mors_str(const FinCategory& c, const std::vector<std::size_t>& mors) {
  std::string s;
  for (std::size_t m : mors) {
    if (!s.empty()) s += ", ";
    s += m < c.nmor() ? c.morphism_id(m) : c.object_id(m);
  }
  return s;
}

int cmd_validate(const std::string& path, Reporter& rep) {
  SpecFile f = load_spec(path);
  bool ok = true;
  auto report = [&](const std::string& kind, const std::string& name, bool good,
                    const std::string& detail) {
    std::string text = kind + " " + name + ": " + (good ? "ok" : "FAIL");
    if (!good && !detail.empty()) text += " (" + detail + ")";
    rep.line(text, json{{"event", "validate"},
                        {"kind", kind},
                        {"name", name},
                        {"ok", good},
                        {"detail", detail}});
    ok = ok && good;
  };
  for (const auto& ce : f.categories) {
    auto v = validate_category(ce.cat);
    report("category", ce.name, !v,
           v ? v->detail + " [" + mors_str(ce.cat, v->mors) + "]" : "");
    if (ce.structure) {
      auto sv = validate_structure(*ce.structure);
      report("structure", ce.name, !sv, sv ? sv->where + ": " + sv->detail : "");
    }
  }
  for (const auto& ne : f.natsystems) {
    auto v = validate_natsys(ne.sys);
    report("natsys", ne.name, !v,
           v ? v->law + " [" + mors_str(ne.sys.base, v->mors) + "] " + v->detail : "");
  }
  for (const auto& se : f.signatures) report("signature", se.name, true, "");
  for (const auto& ae : f.axiom_sets) report("equations", ae.name, true, "");
  for (const auto& cs : f.ccsigs) {
    // terms already typechecked at parse; report their types
    report("ccsig", cs.name, true, "");
    for (const auto& [name, t] : cs.terms) {
      auto [src, tgt] = typecheck(cs.sig, t);
      report("term", name, true, obj_to_string(src) + " -> " + obj_to_string(tgt));
    }
  }
  return ok ? 0 : 2;
}

int cmd_cohomology(const std::string& path, const std::string& natsys_name,
                   std::size_t degree, Reporter& rep) {
  SpecFile f = load_spec(path);
  const SpecFile::Natsys& n = pick_natsys(f, natsys_name);
  std::vector<FPAbelianGroup> hs = bw_cohomology_range(n.sys, degree);
  for (std::size_t i = 0; i <= degree; ++i) {
    std::string g = format_group(hs[i]);
    rep.line("H^" + std::to_string(i) + " = " + g,
             json{{"event", "cohomology"},
                  {"natsys", n.name},
                  {"degree", i},
                  {"group", g}});
  }
  return 0;
}

int cmd_derivations(const std::string& path, const std::string& natsys_name,
                    const std::string& flavor_name, Reporter& rep) {
  SpecFile f = load_spec(path);
  const SpecFile::Natsys& n = pick_natsys(f, natsys_name);
  DerFlavor flavor = DerFlavor::plain;
  if (flavor_name == "lawvere") flavor = DerFlavor::lawvere;
  if (flavor_name == "ccc") flavor = DerFlavor::ccc;
  const CCStructure* s = nullptr;
  if (flavor != DerFlavor::plain) s = &structure_of(f, n);
  DerivationSpace der = derivations(n.sys, flavor, s);
  std::string g = format_group(der.solutions);
  rep.line("Der = " + g, json{{"event", "derivations"},
                              {"natsys", n.name},
                              {"flavor", flavor_name},
                              {"group", g}});
  return 0;
}

int cmd_classify(const std::string& path, const std::string& natsys_name, Reporter& rep) {
  SpecFile f = load_spec(path);
  const SpecFile::Natsys& n = pick_natsys(f, natsys_name);
  ClassifyResult r = classify(n.sys);
  rep.line("classes = " + std::to_string(r.classes),
           json{{"event", "classify"},
                {"natsys", n.name},
                {"classes", r.classes},
                {"cocycles", r.cocycles},
                {"coboundaries", r.coboundaries}});
  return 0;
}

int cmd_natsys_check(const std::string& path, const std::string& natsys_name,
                     bool closed, Reporter& rep) {
  SpecFile f = load_spec(path);
  const SpecFile::Natsys& n = pick_natsys(f, natsys_name);
  const CCStructure& s = structure_of(f, n);
  CartesianReport r = closed ? is_cartesian_closed(n.sys, s) : is_cartesian(n.sys, s);
  std::string prop = closed ? "cartesian-closed" : "cartesian";
  std::string detail;
  if (!r.overall) {
    if (r.precondition_failed) detail = "the system is not cartesian";
    if (const CartesianCheck* cc = r.first_failure()) {
      if (!detail.empty()) detail += "; ";
      detail += cc->detail;
    }
  }
  rep.line(prop + ": " + (r.overall ? "yes" : "no") +
               (detail.empty() ? "" : " (" + detail + ")"),
           json{{"event", "check"},
                {"natsys", n.name},
                {"property", prop},
                {"ok", r.overall},
                {"detail", detail}});
  return r.overall ? 0 : 1;
}

int cmd_normalize(const std::string& path, const std::string& ccsig_name,
                  const std::string& term_text, Reporter& rep) {
  CCSignature sig;
  SpecFile f;
  if (!path.empty()) {
    f = load_spec(path);
    sig = pick_ccsig(f, ccsig_name).sig;
  }
  MorPtr t = parse_term(sig, term_text);
  NormalForm nf = normalize(sig, t);
  std::string m = mor_to_string(nf.term);
  std::string src = obj_to_string(nf.src), tgt = obj_to_string(nf.tgt);
  rep.line(m + " : " + src + " -> " + tgt, json{{"event", "normalize"},
                                                {"term", m},
                                                {"src", src},
                                                {"tgt", tgt}});
  return 0;
}

int cmd_prove_check(const std::string& path, const std::string& proof_name,
                    Reporter& rep) {
  SpecFile f = load_spec(path);
  std::vector<const SpecFile::ProofBlock*> todo;
  if (!proof_name.empty()) {
    const SpecFile::ProofBlock* p = f.find_proof(proof_name);
    if (!p) throw InputError("no proof named '" + proof_name + "' in the file");
    todo.push_back(p);
  } else {
    for (const auto& p : f.proofs) todo.push_back(&p);
    if (todo.empty()) throw InputError("the file defines no proof");
  }
  bool all_valid = true;
  for (const SpecFile::ProofBlock* p : todo) {
    const SpecFile::Axioms* ax = f.find_axioms(p->over);
    const Signature& sig = f.find_signature(ax->over)->sig;
    std::string why;
    bool valid = check_proof(sig, ax->eqs, p->proof, p->goal, &why);
    rep.line("proof " + p->name + ": " + (valid ? "valid" : "invalid at " + why),
             json{{"event", "prove-check"},
                  {"name", p->name},
                  {"valid", valid},
                  {"why", why}});
    all_valid = all_valid && valid;
  }
  return all_valid ? 0 : 1;
}

int cmd_selftest(unsigned long seed, Reporter& rep) {
  std::mt19937_64 rng(seed);
  bool all_ok = true;
  auto check = [&](const std::string& name, bool good, const std::string& detail = "") {
    rep.line("selftest " + name + ": " + (good ? "ok" : "FAIL") +
                 (good || detail.empty() ? "" : " (" + detail + ")"),
             json{{"event", "selftest"}, {"name", name}, {"ok", good}, {"detail", detail}});
    all_ok = all_ok && good;
  };

  // Smith normal form: U A V = S with unimodular transforms, on random input.
  {
    bool good = true;
    std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
    for (int trial = 0; trial < 30 && good; ++trial) {
      IntMatrix a(dim(rng), dim(rng));
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
      SmithResult s = smith_normal_form(a);
      good = good && mul(mul(s.u, a), s.v).to_string() == s.s.to_string();
      Int du = determinant(s.u), dv = determinant(s.v);
      good = good && (du == 1 || du == -1) && (dv == 1 || dv == -1);
    }
    check("smith-normal-form", good);
  }

  // Random natural systems on the catalog satisfy the functor laws and give
  // complexes with d o d = 0 (checked inside the builder).
  {
    bool good = true;
    std::string detail;
    auto cats = small_category_catalog();
    for (int trial = 0; trial < 6 && good; ++trial) {
      const FinCategory& c = cats[trial % cats.size()];
      NaturalSystem d = random_natural_system(c, rng);
      auto v = validate_natsys(d);
      if (v) {
        good = false;
        detail = v->law;
      } else {
        bw_complex(d, 2);
      }
    }
    check("random-natural-systems", good, detail);
  }

  // Cohomology of the cyclic group of order two with constant coefficients.
  {
    NaturalSystem d = constant_system(cyclic_group_category(2), free_abelian_group(1));
    auto hs = bw_cohomology_range(d, 4);
    std::vector<std::string> expect = {"Z", "0", "Z/2", "0", "Z/2"};
    bool good = true;
    for (std::size_t i = 0; i < expect.size(); ++i)
      good = good && format_group(hs[i]) == expect[i];
    check("bc2-constant-z", good);
  }

  // Extension classes of BC2 with constant Z/2 coefficients match |H^2|.
  {
    NaturalSystem d = constant_system(cyclic_group_category(2), cyclic_group(2));
    ClassifyResult r = classify(d);
    InvariantFactors h2 = invariant_factors(bw_cohomology(d, 2));
    bool good = r.classes == 2 && h2.is_finite() && h2.order() == 2;
    check("bc2-classify", good);
  }

  return all_ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Baues-Wirsching cohomology of finite categories, exactly"};
  app.name("catcoh");
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format: text or json-lines")
      ->check(CLI::IsMember({"text", "json-lines"}));

  std::string file, natsys_name, ccsig_name, proof_name, term_text;
  std::size_t degree = 2;
  std::string flavor = "plain";
  bool flag_cartesian = false, flag_closed = false;
  unsigned long seed = 20240915;

  CLI::App* c_validate = app.add_subcommand("validate", "check every block of a file");
  c_validate->add_option("file", file, "spec file")->required();

  CLI::App* c_coh = app.add_subcommand("cohomology", "Baues-Wirsching cohomology");
  c_coh->add_option("file", file, "spec file")->required();
  c_coh->add_option("--degree", degree, "highest degree to compute")->required();
  c_coh->add_option("--natsys", natsys_name, "coefficient system name");

  CLI::App* c_der = app.add_subcommand("derivations", "derivation group of a system");
  c_der->add_option("file", file, "spec file")->required();
  c_der->add_option("--flavor", flavor, "plain, lawvere or ccc")
      ->check(CLI::IsMember({"plain", "lawvere", "ccc"}));
  c_der->add_option("--natsys", natsys_name, "coefficient system name");

  CLI::App* c_ext = app.add_subcommand("extensions", "linear extensions");
  c_ext->require_subcommand(1);
  CLI::App* c_cls = c_ext->add_subcommand("classify", "count extensions up to equivalence");
  c_cls->add_option("file", file, "spec file")->required();
  c_cls->add_option("--natsys", natsys_name, "coefficient system name");

  CLI::App* c_nat = app.add_subcommand("natsys", "natural-system conditions");
  c_nat->require_subcommand(1);
  CLI::App* c_chk = c_nat->add_subcommand("check", "cartesian / cartesian-closed check");
  c_chk->add_option("file", file, "spec file")->required();
  c_chk->add_option("--natsys", natsys_name, "coefficient system name");
  c_chk->add_flag("--cartesian", flag_cartesian, "check the cartesian condition");
  c_chk->add_flag("--cartesian-closed", flag_closed, "check the cartesian-closed condition");

  CLI::App* c_norm = app.add_subcommand("normalize", "normal form of a surface term");
  c_norm->add_option("file", file, "spec file with a ccsig block");
  c_norm->add_option("--term", term_text, "term in the surface grammar")->required();
  c_norm->add_option("--ccsig", ccsig_name, "signature name");

  CLI::App* c_prv = app.add_subcommand("prove-check", "check the proofs of a file");
  c_prv->add_option("file", file, "spec file")->required();
  c_prv->add_option("--proof", proof_name, "check only this proof");

  CLI::App* c_self = app.add_subcommand("selftest", "seeded property smoke test");
  c_self->add_option("--seed", seed, "random seed");

  std::vector<const char*> argv;
  argv.push_back("catcoh");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Reporter rep{out, format == "json-lines"};
  try {
    if (app.got_subcommand(c_validate)) return cmd_validate(file, rep);
    if (app.got_subcommand(c_coh)) return cmd_cohomology(file, natsys_name, degree, rep);
    if (app.got_subcommand(c_der)) return cmd_derivations(file, natsys_name, flavor, rep);
    if (app.got_subcommand(c_ext)) return cmd_classify(file, natsys_name, rep);
    if (app.got_subcommand(c_nat)) {
      if (flag_cartesian == flag_closed)
        throw InputError("choose exactly one of --cartesian / --cartesian-closed");
      return cmd_natsys_check(file, natsys_name, flag_closed, rep);
    }
    if (app.got_subcommand(c_norm)) return cmd_normalize(file, ccsig_name, term_text, rep);
    if (app.got_subcommand(c_prv)) return cmd_prove_check(file, proof_name, rep);
    if (app.got_subcommand(c_self)) return cmd_selftest(seed, rep);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const LimitError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace catcoh
