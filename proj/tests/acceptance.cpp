// Acceptance battery. Each criterion prints one PASS/FAIL line; the process
// exits nonzero when any criterion fails. Unlike the unit suites, every check
// here is end to end: categories and coefficient systems are built through the
// public constructors, cohomology through the full complex, and the frozen
// values are the independently computed ones.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catcoh/abelian.hpp"
#include "catcoh/bwcoh.hpp"
#include "catcoh/ccstruct.hpp"
#include "catcoh/der.hpp"
#include "catcoh/eqlogic.hpp"
#include "catcoh/families.hpp"
#include "catcoh/fincat.hpp"
#include "catcoh/freeccc.hpp"
#include "catcoh/intmat.hpp"
#include "catcoh/linext.hpp"
#include "catcoh/natsys.hpp"
#include "ccc_random.hpp"
#include "chain_systems.hpp"

using namespace catcoh;
using namespace catcoh_tests;

namespace {

int failures = 0;

void run(int n, const char* label, const std::function<std::string()>& body) {
  std::string detail;
  try {
    detail = body();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (detail.empty()) {
    std::printf("PASS criterion %d: %s\n", n, label);
  } else {
    std::printf("FAIL criterion %d: %s -- %s\n", n, label, detail.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// The group of order two as a one-object category.
FinCategory c2_category() {
  FinCategory c;
  c.add_object("x");
  c.add_morphism("s", "x", "x");
  c.add_morphism("id_x", "x", "x");
  c.set_identity("x", "id_x");
  c.set_compose("s", "s", "id_x");
  c.finalize();
  return c;
}

// Random free categories on small acyclic multigraphs together with a valid
// twisted cyclic coefficient system; shared between the vanishing and the
// decomposition criteria.
struct FreeRun {
  FreeCategory fc;
  NaturalSystem d;
};

std::vector<FreeRun> make_free_runs(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const long orders[] = {2, 3, 4, 5, 0};
  std::vector<FreeRun> runs;
  while (runs.size() < count) {
    std::uniform_int_distribution<std::size_t> nd(2, 5);
    std::size_t nobj = nd(rng);
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < nobj; ++i)
      for (std::size_t j = i + 1; j < nobj; ++j) {
        candidates.push_back({i, j});
        candidates.push_back({i, j});
      }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::uniform_int_distribution<std::size_t> ed(1, 8);
    std::size_t nedges = std::min(ed(rng), candidates.size());
    candidates.resize(nedges);
    FreeCategory fc = free_dag_category(nobj, candidates);
    if (fc.cat.nmor() > 24) continue;  // keep the nerve small
    long order = orders[runs.size() % 5];
    NaturalSystem d = constant_system(fc.cat, cyclic_group(order));
    d = unimodular_twist(d, rng);
    runs.push_back(FreeRun{std::move(fc), std::move(d)});
  }
  return runs;
}

// ---- degree-two classification helpers -------------------------------------

std::string check_classify_matches_h2(const NaturalSystem& d, const std::string& who) {
  auto t0 = std::chrono::steady_clock::now();
  ClassifyResult r = classify(d);
  double secs = seconds_since(t0);
  if (secs >= 10.0)
    return who + ": classification took " + std::to_string(secs) + "s, budget 10s";
  InvariantFactors h2 = invariant_factors(bw_cohomology(d, 2));
  if (!h2.is_finite()) return who + ": H^2 = " + format_group(h2) + " is not finite";
  if (Int(static_cast<unsigned long>(r.classes)) != h2.order())
    return who + ": " + std::to_string(r.classes) + " classes but |H^2| = " +
           h2.order().get_str();
  if (r.cocycles != r.classes * r.coboundaries)
    return who + ": cocycle count " + std::to_string(r.cocycles) +
           " != classes * coboundaries";
  return "";
}

// ---- abelian-group presentation and finite models --------------------------

Signature abelian_signature() {
  Signature sig;
  sig.sorts = {"g"};
  sig.ops.push_back({"plus", {"g", "g"}, "g"});
  sig.ops.push_back({"neg", {"g"}, "g"});
  sig.ops.push_back({"zero", {}, "g"});
  return sig;
}

std::vector<Equation> abelian_axioms() {
  TermPtr x = term_var("x", "g"), y = term_var("y", "g"), z = term_var("z", "g");
  std::vector<Equation> E;
  Equation assoc;
  assoc.lhs = term_app("plus", {term_app("plus", {x, y}), z});
  assoc.rhs = term_app("plus", {x, term_app("plus", {y, z})});
  assoc.context = {{"x", "g"}, {"y", "g"}, {"z", "g"}};
  E.push_back(assoc);
  Equation comm;
  comm.lhs = term_app("plus", {x, y});
  comm.rhs = term_app("plus", {y, x});
  comm.context = {{"x", "g"}, {"y", "g"}};
  E.push_back(comm);
  Equation unitr;
  unitr.lhs = term_app("plus", {x, term_app("zero", {})});
  unitr.rhs = x;
  unitr.context = {{"x", "g"}};
  E.push_back(unitr);
  Equation invr;
  invr.lhs = term_app("plus", {x, term_app("neg", {x})});
  invr.rhs = term_app("zero", {});
  invr.context = {{"x", "g"}};
  E.push_back(invr);
  return E;
}

FinAlgebra cyclic_algebra(std::size_t n) {
  FinAlgebra a;
  a.carrier["g"] = n;
  std::vector<std::size_t> plus(n * n), neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    neg[i] = (n - i) % n;
    for (std::size_t j = 0; j < n; ++j) plus[i * n + j] = (i + j) % n;
  }
  a.table["plus"] = plus;
  a.table["neg"] = neg;
  a.table["zero"] = {0};
  return a;
}

FinAlgebra klein_algebra() {
  FinAlgebra a;
  a.carrier["g"] = 4;
  std::vector<std::size_t> plus(16), neg(4);
  for (std::size_t i = 0; i < 4; ++i) {
    neg[i] = i;
    for (std::size_t j = 0; j < 4; ++j) plus[i * 4 + j] = i ^ j;
  }
  a.table["plus"] = plus;
  a.table["neg"] = neg;
  a.table["zero"] = {0};
  return a;
}

void collect_vars(const TermPtr& t, std::map<std::string, std::string>& out) {
  if (t->kind == Term::Kind::var) {
    out[t->name] = t->sort;
    return;
  }
  for (const TermPtr& a : t->args) collect_vars(a, out);
}

Equation goal_of(const TermPtr& l, const TermPtr& r) {
  Equation goal;
  goal.lhs = l;
  goal.rhs = r;
  std::map<std::string, std::string> fv;
  collect_vars(l, fv);
  collect_vars(r, fv);
  for (const auto& [v, s] : fv) goal.context.push_back({v, s});
  return goal;
}

}  // namespace

int main() {
  std::vector<FreeRun> free_runs;

  run(1, "order-two group, constant Z: H^0..H^4 with the sign-module cross-check", [] {
    FinCategory c = c2_category();
    NaturalSystem d = constant_system(c, cyclic_group(0));
    auto t0 = std::chrono::steady_clock::now();
    std::vector<FPAbelianGroup> h = bw_cohomology_range(d, 4);
    double secs = seconds_since(t0);
    const char* want[] = {"Z", "0", "Z/2", "0", "Z/2"};
    for (int i = 0; i <= 4; ++i)
      if (format_group(h[i]) != want[i])
        return "H^" + std::to_string(i) + " = " + format_group(h[i]) + ", expected " +
               want[i];
    if (secs >= 5.0) return "computation took " + std::to_string(secs) + "s, budget 5s";

    NaturalSystem sgn = from_group_module(c, cyclic_group(0),
                                          {{"s", IntMatrix::from_rows({{-1}})}});
    std::vector<FPAbelianGroup> hs = bw_cohomology_range(sgn, 3);
    const char* wants[] = {"0", "Z/2", "0", "Z/2"};
    for (int i = 0; i <= 3; ++i) {
      if (format_group(hs[i]) != wants[i])
        return "sign module H^" + std::to_string(i) + " = " + format_group(hs[i]) +
               ", expected " + wants[i];
      InvariantFactors closed =
          cyclic_group_cohomology(2, cyclic_group(0), IntMatrix::from_rows({{-1}}), i);
      if (format_group(closed) != wants[i])
        return "closed form H^" + std::to_string(i) + " = " + format_group(closed) +
               " disagrees";
    }
    return std::string();
  });

  run(2, "degree-two classification counts agree with |H^2| on small instances", [] {
    FinCategory c = c2_category();
    NaturalSystem dz2 = constant_system(c, cyclic_group(2));
    ClassifyResult r = classify(dz2);
    if (r.classes != 2)
      return "order-two group with Z/2: " + std::to_string(r.classes) +
             " classes, expected 2";
    if (std::string err = check_classify_matches_h2(dz2, "order-two group with Z/2");
        !err.empty())
      return err;

    std::mt19937_64 rng(20240915);
    std::vector<FinCategory> catalog = small_category_catalog();
    std::size_t instances = 1;
    for (std::size_t ci = 0; ci < catalog.size(); ++ci)
      for (long order : {2L, 3L, 4L}) {
        NaturalSystem d = constant_system(catalog[ci], cyclic_group(order));
        if (instances % 2 == 0) d = unimodular_twist(d, rng);
        if (auto v = validate_natsys(d)) return "instance invalid: " + v->detail;
        std::string who = "catalog " + std::to_string(ci) + ", Z/" + std::to_string(order) +
                          (instances % 2 == 0 ? " twisted" : "");
        if (std::string err = check_classify_matches_h2(d, who); !err.empty()) return err;
        ++instances;
      }
    if (instances < 10) return "only " + std::to_string(instances) + " instances";
    return std::string();
  });

  run(3, "free categories on acyclic graphs have vanishing H^2 and H^3", [&free_runs] {
    free_runs = make_free_runs(20, 616);
    for (std::size_t i = 0; i < free_runs.size(); ++i) {
      const NaturalSystem& d = free_runs[i].d;
      if (auto v = validate_natsys(d))
        return "run " + std::to_string(i) + ": invalid system: " + v->detail;
      std::vector<FPAbelianGroup> h = bw_cohomology_range(d, 3);
      for (int n : {2, 3})
        if (!invariant_factors(h[n]).is_trivial())
          return "run " + std::to_string(i) + ": H^" + std::to_string(n) + " = " +
                 format_group(h[n]) + ", expected 0";
    }
    return std::string();
  });

  run(4, "ker delta^1 splits as derivations plus generator-vanishing classes",
      [&free_runs] {
        if (free_runs.empty()) return std::string("no free categories generated");
        for (std::size_t i = 0; i < free_runs.size(); ++i) {
          DecompositionReport rep =
              ker_delta1_decomposition(free_runs[i].d, free_runs[i].fc.generators);
          if (!rep.ok)
            return "run " + std::to_string(i) + ": intersection trivial: " +
                   (rep.intersection_trivial ? "yes" : "no") + ", spans: " +
                   (rep.spans ? "yes" : "no") + ", summands contained: " +
                   (rep.summands_contained ? "yes" : "no");
        }
        return std::string();
      });

  run(5, "cohomology is invariant under pullback along the clone equivalence", [] {
    FinFunctor f = group_clone_inclusion(2, 2);
    if (!is_equivalence(f)) return std::string("clone inclusion is not an equivalence");
    NaturalSystem dz2 = constant_system(f.dst, cyclic_group(2));
    EquivalenceInvarianceReport rep = equivalence_invariance_check(f, dz2, 3);
    if (!rep.equal) {
      for (std::size_t n = 0; n < rep.original.size(); ++n)
        if (!(rep.original[n] == rep.pulled_back[n]))
          return "constant Z/2: H^" + std::to_string(n) + " differs: " +
                 format_group(rep.original[n]) + " vs " + format_group(rep.pulled_back[n]);
      return std::string("constant Z/2: mismatch");
    }
    for (std::size_t n = 0; n <= 3; ++n)
      if (format_group(rep.original[n]) != "Z/2")
        return "constant Z/2: H^" + std::to_string(n) + " = " +
               format_group(rep.original[n]) + ", expected Z/2";

    std::mt19937_64 rng(77);
    NaturalSystem dz4 = unimodular_twist(constant_system(f.dst, cyclic_group(4)), rng);
    EquivalenceInvarianceReport rep4 = equivalence_invariance_check(f, dz4, 3);
    if (!rep4.equal) return std::string("twisted Z/4: invariant factors differ");
    return std::string();
  });

  run(6, "randomized systems satisfy the functor laws and delta o delta = 0", [] {
    std::mt19937_64 rng(101);
    std::size_t pairs = 0;
    for (const FinCategory& c : small_category_catalog())
      for (int k = 0; k < 17; ++k) {
        NaturalSystem d = random_natural_system(c, rng);
        if (auto v = validate_natsys(d))
          return "random system violates " + v->law + ": " + v->detail;
        bw_complex(d, 3);  // throws when some composite differential is nonzero
        ++pairs;
      }
    if (pairs < 100) return "only " + std::to_string(pairs) + " randomized systems";
    return std::string();
  });

  run(7, "condition checks accept the zero system and pinpoint each engineered failure", [] {
    CCStructure heyt = chain_heyting_ccc(3);
    NaturalSystem zero = zero_system(heyt.base);
    if (!is_cartesian(zero, heyt).overall)
      return std::string("zero system rejected by the cartesian check");
    if (!is_cartesian_closed(zero, heyt).overall)
      return std::string("zero system rejected by the cartesian-closed check");

    // Nullary: a constant system is nonzero on morphisms into the terminal.
    NaturalSystem cz = constant_system(heyt.base, cyclic_group(0));
    CartesianReport r1 = is_cartesian(cz, heyt);
    const CartesianCheck* f1 = r1.first_failure();
    if (r1.overall || !f1) return std::string("constant Z passed the cartesian check");
    if (f1->what != CartesianCheck::nullary ||
        f1->mor != heyt.base.morphism_index("le_0_2"))
      return "constant Z: first failure at '" + heyt.base.morphism_id(f1->mor) +
             "', expected nullary at 'le_0_2'";

    // Binary: adding the (v0, v1) cone makes the comparison at le_0_0 the
    // diagonal into a direct sum, which is not invertible.
    CCStructure s = chain3_top_structure();
    const FinCategory& c = s.base;
    s.products[{0, 1}] = ProductCone{0, c.morphism_index("le_0_0"),
                                     c.morphism_index("le_0_1")};
    if (auto v = validate_structure(s))
      return "augmented structure invalid: " + v->where + ": " + v->detail;
    NaturalSystem tr = chain3_truncated_constant(cyclic_group(0));
    CartesianReport r2 = is_cartesian(tr, s);
    const CartesianCheck* f2 = r2.first_failure();
    if (r2.overall || !f2) return std::string("diagonal comparison not rejected");
    if (f2->what != CartesianCheck::binary || f2->mor != c.morphism_index("le_0_0") ||
        f2->cone != std::pair<std::size_t, std::size_t>(0, 1))
      return "binary failure at '" + c.morphism_id(f2->mor) + "', expected 'le_0_0'";

    // Exponential: doubling the identity-indexed pre map on D_{le_0_1} scales
    // exactly the exponential comparison at le_0_1.
    NaturalSystem bad = chain3_corrupted_exponential(cyclic_group(0));
    CCStructure top = chain3_top_structure();
    if (!is_cartesian(bad, top).overall)
      return std::string("corruption is visible to the cartesian check");
    CartesianReport r3 = is_cartesian_closed(bad, top);
    const CartesianCheck* f3 = r3.first_failure();
    if (r3.overall || !f3) return std::string("corrupted exponential not rejected");
    if (r3.precondition_failed)
      return std::string("cartesian precondition reported failed");
    if (f3->what != CartesianCheck::exponential ||
        f3->mor != top.base.morphism_index("le_0_1"))
      return "exponential failure at '" + top.base.morphism_id(f3->mor) +
             "', expected 'le_0_1'";
    if (f3->detail.find("not an isomorphism") == std::string::npos)
      return "unexpected detail: " + f3->detail;
    return std::string();
  });

  run(8, "chosen structure lifts to the trivial extension iff the system is cartesian closed", [] {
    CCStructure s = chain3_top_structure();
    NaturalSystem good = chain3_truncated_constant(cyclic_group(2));
    if (!is_cartesian_closed(good, s).overall)
      return std::string("truncated Z/2 system should be cartesian closed");
    LiftResult lift = cc_structure_lift(trivial_extension(good.base, good), s);
    if (!lift.structure)
      return "lift failed: " + lift.failure->where + ": " + lift.failure->detail;
    if (auto v = validate_products(*lift.structure))
      return "lifted products invalid: " + v->where + ": " + v->detail;
    if (auto v = validate_exponentials(*lift.structure))
      return "lifted exponentials invalid: " + v->where + ": " + v->detail;

    NaturalSystem bad = chain3_corrupted_exponential(cyclic_group(2));
    LiftResult lb = cc_structure_lift(trivial_extension(bad.base, bad), s);
    if (lb.structure) return std::string("corrupted system lifted anyway");
    if (lb.failure->where.find("exponential") == std::string::npos)
      return "failure reported at '" + lb.failure->where + "', expected the exponential";

    CCStructure heyt = chain_heyting_ccc(3);
    NaturalSystem zero = zero_system(heyt.base);
    LiftResult lz = cc_structure_lift(trivial_extension(zero.base, zero), heyt);
    if (!lz.structure)
      return "zero system lift failed: " + lz.failure->where + ": " + lz.failure->detail;
    if (auto v = validate_structure(*lz.structure))
      return "zero lift invalid: " + v->where + ": " + v->detail;
    return std::string();
  });

  run(9, "free-CCC schemata, normalization idempotence, interpretation soundness", [] {
    CCSignature sig = schemata_signature();
    std::mt19937_64 rng(424242);
    std::vector<TypedTerm> pool = build_term_pool(sig, rng, 400);
    SchemaStats st = check_ccc_schemata(sig, pool, 120);
    if (st.checked < 200)
      return "only " + std::to_string(st.checked) + " schema instantiations";
    if (st.failed) return "schema failure: " + st.first_failure;

    for (const TypedTerm& t : pool) {
      NormalForm n1 = normalize(sig, t.t);
      NormalForm n2 = normalize(sig, n1.term);
      if (!mor_equal(n1.term, n2.term))
        return "normalization not idempotent on " + mor_to_string(t.t);
    }

    // Soundness in the 3-chain Heyting algebra: generators land on actual
    // inequalities, and every term must agree with its normal form.
    CCStructure heyt = chain_heyting_ccc(3);
    CCSignature csig;
    csig.sorts = {"A", "B", "C"};
    ObjPtr a = obj_sort("A"), b = obj_sort("B"), cc = obj_sort("C");
    csig.generators.push_back({"a1", a, b});
    csig.generators.push_back({"b1", b, cc});
    csig.generators.push_back({"a2", a, cc});
    csig.generators.push_back({"p", obj_unit(), cc});
    std::map<std::string, std::size_t> objmap = {{"A", 0}, {"B", 1}, {"C", 2}};
    std::map<std::string, std::size_t> genmap = {
        {"a1", heyt.base.morphism_index("le_0_1")},
        {"b1", heyt.base.morphism_index("le_1_2")},
        {"a2", heyt.base.morphism_index("le_0_2")},
        {"p", heyt.base.morphism_index("le_2_2")}};
    std::mt19937_64 rng2(31337);
    std::size_t sound = 0;
    for (int round = 0; round < 5 && sound < 200; ++round) {
      std::vector<TypedTerm> pool2 = build_term_pool(csig, rng2, 300);
      for (const TypedTerm& t : pool2) {
        NormalForm nf = normalize(csig, t.t);
        std::size_t lhs = interpret(csig, heyt, objmap, genmap, t.t);
        std::size_t rhs = interpret(csig, heyt, objmap, genmap, nf.term);
        if (lhs != rhs)
          return "interpretation changed under normalization on " + mor_to_string(t.t);
        ++sound;
      }
    }
    if (sound < 200) return "only " + std::to_string(sound) + " soundness pairs";

    // The three symbolic identities.
    ObjPtr x = obj_sort("X"), y = obj_sort("Y"), z = obj_sort("Z");
    if (!equal(sig, mor_pair(mor_proj1(x, y), mor_proj2(x, y)), mor_id(obj_prod(x, y))))
      return std::string("<p1, p2> != id");
    MorPtr g = mor_gen("c");  // c : X -> Z^Y
    MorPtr body = mor_comp(mor_ev(y, z), mor_pair(mor_comp(g, mor_proj1(x, y)),
                                                  mor_proj2(x, y)));
    if (!equal(sig, mor_curry(body), g))
      return std::string("curry(ev o (c x id)) != c");
    if (!equal(sig, mor_comp(mor_bang(y), mor_gen("f")), mor_bang(x)))
      return std::string("bang o f != bang");
    return std::string();
  });

  run(10, "derived equations hold in every finite model; presentation round-trips", [] {
    Signature sig = abelian_signature();
    validate_eqsignature(sig);
    std::vector<Equation> E = abelian_axioms();
    for (const Equation& eq : E) validate_equation(sig, eq);

    std::vector<FinAlgebra> models = {cyclic_algebra(2), cyclic_algebra(3),
                                      cyclic_algebra(4), cyclic_algebra(5),
                                      klein_algebra()};
    for (std::size_t i = 0; i < models.size(); ++i)
      if (!satisfies_all(sig, models[i], E))
        return "model " + std::to_string(i) + " fails the axioms";

    struct Thm {
      ProofPtr p;
      TermPtr l, r;
    };
    std::vector<Thm> thms;
    for (std::size_t i = 0; i < E.size(); ++i)
      thms.push_back({proof_axiom(i), E[i].lhs, E[i].rhs});

    std::mt19937_64 rng(991);
    const char* vars[] = {"x", "y", "z"};
    std::function<TermPtr(int)> rnd_term = [&](int depth) -> TermPtr {
      std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 2);
      switch (pick(rng)) {
        case 0:
        case 1: {
          std::uniform_int_distribution<int> v(0, 2);
          return term_var(vars[v(rng)], "g");
        }
        case 2:
          return term_app("zero", {});
        case 3:
          return term_app("neg", {rnd_term(depth - 1)});
        default:
          return term_app("plus", {rnd_term(depth - 1), rnd_term(depth - 1)});
      }
    };

    std::uniform_int_distribution<int> op(0, 5);
    std::uniform_int_distribution<std::size_t> coin(0, 1);
    while (thms.size() < E.size() + 50) {
      std::uniform_int_distribution<std::size_t> ti(0, thms.size() - 1);
      const Thm t = thms[ti(rng)];
      switch (op(rng)) {
        case 0:
          thms.push_back({proof_sym(t.p), t.r, t.l});
          break;
        case 1:
          thms.push_back({proof_trans(t.p, proof_sym(t.p)), t.l, t.l});
          break;
        case 2:
          thms.push_back({proof_trans(proof_refl(t.l), t.p), t.l, t.r});
          break;
        case 3: {
          Substitution sub;
          for (const char* v : vars)
            if (coin(rng)) sub[v] = rnd_term(2);
          if (sub.empty()) sub["x"] = rnd_term(2);
          thms.push_back({proof_subst(t.p, sub), apply_subst(t.l, sub),
                          apply_subst(t.r, sub)});
          break;
        }
        case 4:
          thms.push_back({proof_cong("neg", {t.p}), term_app("neg", {t.l}),
                          term_app("neg", {t.r})});
          break;
        default: {
          TermPtr w = rnd_term(2);
          if (coin(rng))
            thms.push_back({proof_cong("plus", {t.p, proof_refl(w)}),
                            term_app("plus", {t.l, w}), term_app("plus", {t.r, w})});
          else
            thms.push_back({proof_cong("plus", {proof_refl(w), t.p}),
                            term_app("plus", {w, t.l}), term_app("plus", {w, t.r})});
          break;
        }
      }
    }

    std::size_t derived = 0;
    for (std::size_t i = 0; i < thms.size(); ++i) {
      Equation goal = goal_of(thms[i].l, thms[i].r);
      std::string why;
      if (!check_proof(sig, E, thms[i].p, goal, &why))
        return "generated proof " + std::to_string(i) + " rejected: " + why;
      for (std::size_t m = 0; m < models.size(); ++m)
        if (!satisfies(sig, models[m], goal))
          return "model " + std::to_string(m) + " violates derived equation " +
                 equation_to_string(goal);
      if (i >= E.size()) ++derived;
    }
    if (derived < 50) return "only " + std::to_string(derived) + " derived equations";

    // A model of the one-object category presentation is exactly a monoid;
    // the order-two group model round-trips into a valid category.
    FinAlgebra m2;
    m2.carrier["hom(x,x)"] = 2;
    m2.table["comp(x,x,x)"] = {0, 1, 1, 0};
    m2.table["id(x)"] = {0};
    Presentation catp = canned_cat_presentation({"x"});
    if (!satisfies_all(catp.sig, m2, catp.eqs))
      return std::string("order-two model fails the category presentation");
    FinCategory cat = algebra_to_category({"x"}, m2);
    if (auto v = validate_category(cat)) return "round-trip category invalid: " + v->detail;
    if (cat.nobj() != 1 || cat.nmor() != 2)
      return std::string("round-trip category has the wrong size");

    // A proof with one corrupted node is rejected at that node's path.
    ProofPtr badnode = proof_trans(proof_axiom(0), proof_axiom(2));
    ProofPtr wrapped = proof_cong("neg", {badnode});
    Equation dummy = goal_of(term_app("neg", {E[0].lhs}), term_app("neg", {E[2].rhs}));
    std::string why;
    if (check_proof(sig, E, wrapped, dummy, &why))
      return std::string("corrupted proof accepted");
    if (why.rfind("root.1", 0) != 0)
      return "corrupted proof rejected at '" + why + "', expected path root.1";
    return std::string();
  });

  run(11, "Smith normal form invariants and the doubling complex", [] {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    std::uniform_int_distribution<long> entry(-9, 9);
    for (int trial = 0; trial < 500; ++trial) {
      std::size_t r = dim(rng), c = dim(rng);
      IntMatrix a(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a.at(i, j) = entry(rng);
      SmithResult s = smith_normal_form(a);
      std::string who = "trial " + std::to_string(trial);
      if (mul(mul(s.u, a), s.v) != s.s) return who + ": U A V != S";
      Int du = determinant(s.u), dv = determinant(s.v);
      if (du != 1 && du != -1) return who + ": det U = " + du.get_str();
      if (dv != 1 && dv != -1) return who + ": det V = " + dv.get_str();
      if (mul(s.u, s.uinv) != IntMatrix::identity(r)) return who + ": U Uinv != I";
      if (mul(s.v, s.vinv) != IntMatrix::identity(c)) return who + ": V Vinv != I";
      std::vector<Int> diag = s.diagonal();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if (i != j && s.s.at(i, j) != 0) return who + ": S not diagonal";
      for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] < 0) return who + ": negative diagonal entry";
        bool zero = diag[i] == 0;
        if (zero != (i >= s.rank)) return who + ": rank does not match the diagonal";
        if (i + 1 < diag.size() && diag[i] != 0 && diag[i + 1] != 0 &&
            diag[i + 1] % diag[i] != 0)
          return who + ": " + diag[i].get_str() + " does not divide " +
                 diag[i + 1].get_str();
      }
    }

    FPAbelianGroup z = free_abelian_group(1);
    GroupHom two = make_hom(z, z, IntMatrix::from_rows({{2}}));
    CochainComplex cx = make_complex({z, z}, {two});
    if (!invariant_factors(cohomology_at(cx, 0)).is_trivial())
      return "doubling complex: H^0 = " + format_group(cohomology_at(cx, 0)) +
             ", expected 0";
    if (format_group(cohomology_at(cx, 1)) != "Z/2")
      return "doubling complex: H^1 = " + format_group(cohomology_at(cx, 1)) +
             ", expected Z/2";
    return std::string();
  });

  if (failures == 0) {
    std::printf("acceptance: all 11 criteria pass\n");
    return 0;
  }
  std::printf("acceptance: %d of 11 criteria failing\n", failures);
  return 1;
}
