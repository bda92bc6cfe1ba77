#include "doctest.h"

#include <map>
#include <random>
#include <string>

#include "catcoh/families.hpp"
#include "catcoh/freeccc.hpp"
#include "ccc_random.hpp"

using namespace catcoh;
using catcoh_tests::build_term_pool;
using catcoh_tests::check_ccc_schemata;
using catcoh_tests::schemata_signature;
using catcoh_tests::TypedTerm;

TEST_SUITE("freeccc") {

TEST_CASE("object expressions print and compare structurally") {
  ObjPtr x = obj_sort("X"), y = obj_sort("Y"), z = obj_sort("Z");
  CHECK(obj_to_string(obj_prod(obj_prod(x, y), z)) == "X * Y * Z");
  CHECK(obj_to_string(obj_exp(z, obj_prod(x, y))) == "Z ^ (X * Y)");
  CHECK(obj_equal(obj_prod(x, y), obj_prod(obj_sort("X"), obj_sort("Y"))));
  CHECK_FALSE(obj_equal(obj_prod(x, y), obj_prod(y, x)));
  CHECK(obj_equal(parse_object("X * Y * Z"), obj_prod(obj_prod(x, y), z)));
  CHECK(obj_equal(parse_object("Z ^ Y ^ X"), obj_exp(z, obj_exp(y, x))));
  // ^ binds tighter than *.
  CHECK(obj_equal(parse_object("X * Z ^ Y"), obj_prod(x, obj_exp(z, y))));
}

TEST_CASE("typechecking is syntax-directed and reports mismatches") {
  CCSignature sig = schemata_signature();
  ObjPtr x = obj_sort("X"), y = obj_sort("Y");

  auto [s1, t1] = typecheck(sig, mor_id(obj_unit()));
  CHECK(obj_equal(s1, obj_unit()));
  CHECK(obj_equal(t1, obj_unit()));

  auto [s2, t2] = typecheck(sig, mor_comp(mor_proj1(x, y), mor_id(obj_prod(x, y))));
  CHECK(obj_equal(s2, obj_prod(x, y)));
  CHECK(obj_equal(t2, x));

  auto [s3, t3] = typecheck(sig, mor_ev(y, x));
  CHECK(obj_equal(s3, obj_prod(obj_exp(x, y), y)));
  CHECK(obj_equal(t3, x));

  CHECK_THROWS_WITH_AS((void)typecheck(sig, mor_comp(mor_proj1(x, y), mor_id(x))),
                       doctest::Contains("composition mismatch"), InputError);
  CHECK_THROWS_WITH_AS((void)typecheck(sig, mor_gen("nope")),
                       doctest::Contains("unknown generator"), InputError);
  CHECK_THROWS_WITH_AS((void)typecheck(sig, mor_curry(mor_gen("f"))),
                       doctest::Contains("is not a product"), InputError);
}

TEST_CASE("hand-picked equalities of the free cartesian closed category") {
  CCSignature sig = schemata_signature();
  ObjPtr x = obj_sort("X"), y = obj_sort("Y"), z = obj_sort("Z");
  MorPtr f = mor_gen("f"), g = mor_gen("g"), h = mor_gen("h"), c = mor_gen("c");

  // <p1, p2> = id.
  CHECK(equal(sig, mor_pair(mor_proj1(x, y), mor_proj2(x, y)), mor_id(obj_prod(x, y))));
  // Projection of a pairing.
  CHECK(equal(sig, mor_comp(mor_proj1(y, y), mor_pair(f, mor_gen("k"))), f));
  // Terminal uniqueness: bang o f = bang.
  CHECK(equal(sig, mor_comp(mor_bang(y), f), mor_bang(x)));
  // curry beta for the generator h : X * Y -> Z.
  MorPtr beta = mor_comp(
      mor_ev(y, z),
      mor_pair(mor_comp(mor_curry(h), mor_proj1(x, y)), mor_proj2(x, y)));
  CHECK(equal(sig, beta, h));
  // curry eta for the generator c : X -> Z^Y.
  MorPtr eta = mor_curry(mor_comp(
      mor_ev(y, z), mor_pair(mor_comp(c, mor_proj1(x, y)), mor_proj2(x, y))));
  CHECK(equal(sig, eta, c));
  // Distinct generators stay distinct, and projections differ.
  CHECK_FALSE(equal(sig, f, mor_gen("k")));
  CHECK_FALSE(equal(sig, mor_proj1(x, x), mor_proj2(x, x)));
  // Parallel requirement: comparing different types is an input error.
  CHECK_THROWS_WITH_AS((void)equal(sig, f, g),
                       doctest::Contains("different types"), InputError);
}

TEST_CASE("normal forms are canonical and normalization is idempotent") {
  CCSignature sig = schemata_signature();
  ObjPtr x = obj_sort("X"), y = obj_sort("Y");
  MorPtr lhs = mor_pair(mor_proj1(x, y), mor_proj2(x, y));
  MorPtr rhs = mor_id(obj_prod(x, y));
  NormalForm n1 = normalize(sig, lhs), n2 = normalize(sig, rhs);
  CHECK(mor_equal(n1.term, n2.term));
  CHECK(obj_equal(n1.src, obj_prod(x, y)));
  CHECK(obj_equal(n1.tgt, obj_prod(x, y)));
  NormalForm again = normalize(sig, n1.term);
  CHECK(mor_equal(again.term, n1.term));

  std::mt19937_64 rng(11);
  std::vector<TypedTerm> pool = build_term_pool(sig, rng, 120);
  std::size_t done = 0;
  for (const TypedTerm& t : pool) {
    if (done >= 40) break;
    if (catcoh_tests::term_size(t.t) > 14) continue;
    ++done;
    NormalForm nf = normalize(sig, t.t);
    CHECK(obj_equal(nf.src, t.src));
    CHECK(obj_equal(nf.tgt, t.tgt));
    CHECK(mor_equal(normalize(sig, nf.term).term, nf.term));
  }
  CHECK(done == 40);
}

TEST_CASE("the equational schemata hold on randomly generated terms") {
  CCSignature sig = schemata_signature();
  std::mt19937_64 rng(5);
  std::vector<TypedTerm> pool = build_term_pool(sig, rng, 200);
  catcoh_tests::SchemaStats st = check_ccc_schemata(sig, pool, 40);
  INFO(st.first_failure);
  CHECK(st.failed == 0);
  CHECK(st.checked >= 200);
}

TEST_CASE("normalization refuses to build an oversized normal form") {
  CCSignature sig = schemata_signature();
  ObjPtr x = obj_sort("X"), y = obj_sort("Y");
  MorPtr t = mor_id(obj_prod(obj_prod(x, y), obj_prod(x, y)));
  CHECK_THROWS_WITH_AS((void)normalize(sig, t, 3),
                       doctest::Contains("size cap"), LimitError);
}

TEST_CASE("interpretation into the Heyting chain is type-sound") {
  CCStructure s = chain_heyting_ccc(3);
  CCSignature sig;
  sig.sorts = {"X", "Y"};
  ObjPtr x = obj_sort("X"), y = obj_sort("Y");
  sig.generators.push_back({"f", x, y});
  sig.generators.push_back({"m", obj_prod(x, y), y});
  std::map<std::string, std::size_t> objmap = {{"X", 0}, {"Y", 1}};
  std::map<std::string, std::size_t> genmap = {
      {"f", s.base.morphism_index("le_0_1")},
      // X * Y translates to the meet v0, so m must start at v0.
      {"m", s.base.morphism_index("le_0_1")}};

  CHECK(translate_object(s, objmap, obj_unit()) == 2);
  CHECK(translate_object(s, objmap, obj_prod(x, y)) == 0);
  // Y ^ X is the Heyting implication X -> Y, the top object here.
  CHECK(translate_object(s, objmap, obj_exp(y, x)) == 2);

  CHECK(interpret(sig, s, objmap, genmap, mor_id(x)) ==
        s.base.morphism_index("le_0_0"));
  CHECK(interpret(sig, s, objmap, genmap, mor_gen("f")) ==
        s.base.morphism_index("le_0_1"));

  std::mt19937_64 rng(3);
  std::vector<TypedTerm> pool = build_term_pool(sig, rng, 150);
  std::size_t done = 0;
  for (const TypedTerm& t : pool) {
    std::size_t m = interpret(sig, s, objmap, genmap, t.t);
    CHECK(s.base.src(m) == translate_object(s, objmap, t.src));
    CHECK(s.base.tgt(m) == translate_object(s, objmap, t.tgt));
    ++done;
  }
  CHECK(done == pool.size());

  std::map<std::string, std::size_t> badmap = {
      {"f", s.base.morphism_index("le_1_2")},
      {"m", s.base.morphism_index("le_0_1")}};
  CHECK_THROWS_WITH_AS((void)interpret(sig, s, objmap, badmap, mor_gen("f")),
                       doctest::Contains("does not match"), InputError);
  CHECK_THROWS_WITH_AS(
      (void)interpret(sig, s, objmap, {{"m", 0}}, mor_gen("f")),
      doctest::Contains("no morphism assigned"), InputError);
}

TEST_CASE("printing and parsing round-trip") {
  CCSignature sig = schemata_signature();
  ObjPtr x = obj_sort("X"), y = obj_sort("Y");

  // Right-nested composition keeps its grouping through print and parse.
  MorPtr nested = mor_comp(mor_gen("g"), mor_comp(mor_gen("f"), mor_id(x)));
  MorPtr back = parse_term(sig, mor_to_string(nested));
  CHECK(mor_equal(back, nested));
  MorPtr nested2 = mor_comp(mor_comp(mor_gen("g"), mor_gen("f")), mor_id(x));
  CHECK(mor_equal(parse_term(sig, mor_to_string(nested2)), nested2));
  CHECK_FALSE(mor_equal(nested, nested2));  // syntactically distinct trees

  std::mt19937_64 rng(17);
  std::vector<TypedTerm> pool = build_term_pool(sig, rng, 150);
  for (const TypedTerm& t : pool) {
    MorPtr rt = parse_term(sig, mor_to_string(t.t));
    CHECK(mor_equal(rt, t.t));
  }

  // Annotations are inferred where the context determines them.
  MorPtr inferred = parse_term(sig, "p1 . <f, k>");
  auto [si, ti] = typecheck(sig, inferred);
  CHECK(obj_equal(si, x));
  CHECK(obj_equal(ti, y));
  CHECK(equal(sig, inferred, mor_gen("f")));

  CHECK_THROWS_WITH_AS((void)parse_term(sig, "f . q"),
                       doctest::Contains("unknown generator 'q' at column 5"),
                       InputError);
  CHECK_THROWS_WITH_AS((void)parse_object("X *"),
                       doctest::Contains("at column"), InputError);
  CHECK_THROWS_WITH_AS((void)parse_term(sig, "curry f"),
                       doctest::Contains("'('"), InputError);
}

}  // TEST_SUITE
