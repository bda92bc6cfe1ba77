#include "doctest.h"

#include <algorithm>

#include "catcoh/families.hpp"
#include "catcoh/fincat.hpp"

using namespace catcoh;

namespace {

// One object, morphisms e (identity), a, b with a.a = b, a.b = e, b.a = a,
// b.b = b: units hold but (a.a).a = b.a = a while a.(a.a) = a.b = e.
FinCategory broken_associativity() {
  FinCategory c;
  c.add_object("x");
  c.add_morphism("e", "x", "x");
  c.add_morphism("a", "x", "x");
  c.add_morphism("b", "x", "x");
  c.set_identity("x", "e");
  for (const char* m : {"e", "a", "b"}) {
    c.set_compose("e", m, m);
    c.set_compose(m, "e", m);
  }
  c.set_compose("a", "a", "b");
  c.set_compose("a", "b", "e");
  c.set_compose("b", "a", "a");
  c.set_compose("b", "b", "b");
  c.finalize();
  return c;
}

FinCategory arrow_category() {
  FinCategory c;
  c.add_object("a");
  c.add_object("b");
  c.add_morphism("ida", "a", "a");
  c.add_morphism("idb", "b", "b");
  c.add_morphism("f", "a", "b");
  c.set_identity("a", "ida");
  c.set_identity("b", "idb");
  c.set_compose("ida", "ida", "ida");
  c.set_compose("idb", "idb", "idb");
  c.set_compose("f", "ida", "f");
  c.set_compose("idb", "f", "f");
  c.finalize();
  return c;
}

}  // namespace

TEST_SUITE("fincat") {

TEST_CASE("category axioms hold on the stock families") {
  CHECK_FALSE(validate_category(terminal_category()).has_value());
  // BC2: 2 morphisms, 8 associativity triples.
  CHECK_FALSE(validate_category(cyclic_group_category(2)).has_value());
  CHECK_FALSE(validate_category(chain_poset(4)).has_value());
  CHECK_FALSE(validate_category(arrow_category()).has_value());
}

TEST_CASE("an inconsistent composition table fails associativity") {
  FinCategory c = broken_associativity();
  auto v = validate_category(c);
  REQUIRE(v.has_value());
  CHECK(v->kind == CategoryViolation::associativity);
  // The offending triple is (a, a, a).
  std::size_t a = c.morphism_index("a");
  CHECK(v->mors == std::vector<std::size_t>{a, a, a});
}

TEST_CASE("missing composites and identity typing are reported") {
  FinCategory c;
  c.add_object("x");
  c.add_morphism("e", "x", "x");
  c.add_morphism("s", "x", "x");
  c.set_identity("x", "e");
  c.set_compose("e", "e", "e");
  c.set_compose("e", "s", "s");
  c.set_compose("s", "e", "s");
  // s o s left undefined.
  c.finalize();
  auto v = validate_category(c);
  REQUIRE(v.has_value());
  CHECK(v->kind == CategoryViolation::missing_composite);

  FinCategory d;
  d.add_object("x");
  d.add_object("y");
  d.add_morphism("f", "x", "y");
  d.add_morphism("idy", "y", "y");
  d.set_identity("x", "f");  // not an endomorphism of x
  d.set_identity("y", "idy");
  d.set_compose("idy", "idy", "idy");
  d.set_compose("idy", "f", "f");
  d.finalize();
  auto w = validate_category(d);
  REQUIRE(w.has_value());
  CHECK(w->kind == CategoryViolation::identity_typing);
}

TEST_CASE("lookup helpers") {
  FinCategory c = cyclic_group_category(2);
  CHECK(c.nobj() == 1);
  CHECK(c.nmor() == 2);
  CHECK(c.has_morphism("s") == false);
  CHECK(c.has_morphism("g1"));
  CHECK(c.is_identity(c.identity_of(0)));
  CHECK(c.compose(c.morphism_index("g1"), c.morphism_index("g1")) ==
        c.morphism_index("e"));
  CHECK(c.hom_set(0, 0).size() == 2);
  CHECK_THROWS_AS(c.morphism_index("nope"), InputError);
  FinCategory ch = chain_poset(2);
  CHECK(ch.hom_set(0, 1).size() == 1);
  CHECK(ch.hom_set(1, 0).empty());
  CHECK_THROWS_AS(
      ch.compose(ch.morphism_index("le_0_1"), ch.morphism_index("le_0_1")), InputError);
  // morphisms_by_id is id-sorted.
  const auto& order = ch.morphisms_by_id();
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    CHECK(ch.morphism_id(order[i]) < ch.morphism_id(order[i + 1]));
}

TEST_CASE("factorization category of the terminal category is terminal") {
  FactorizationCategory fc = factorization_category(terminal_category());
  CHECK(fc.cat.nobj() == 1);
  CHECK(fc.cat.nmor() == 1);
  CHECK_FALSE(validate_category(fc.cat).has_value());
}

TEST_CASE("factorization category of the arrow category") {
  // Objects = 3 morphisms; a morphism f -> g is a pair (a, b) with b f a = g.
  // Each object carries its identity pair, and the only non-identity pairs
  // are id_a -> f via (id_a, f) and id_b -> f via (f, id_b): 5 in total.
  FactorizationCategory fc = factorization_category(arrow_category());
  CHECK(fc.cat.nobj() == 3);
  CHECK(fc.cat.nmor() == 5);
  CHECK_FALSE(validate_category(fc.cat).has_value());
  // Arrow data is consistent with the base.
  FinCategory base = arrow_category();
  for (std::size_t m = 0; m < fc.cat.nmor(); ++m) {
    const auto& ar = fc.arrows[m];
    std::size_t bfa = base.compose(ar.b, base.compose(ar.from, ar.a));
    CHECK(bfa == ar.to);
    CHECK(fc.object_to_base[fc.cat.src(m)] == ar.from);
    CHECK(fc.object_to_base[fc.cat.tgt(m)] == ar.to);
  }
}

TEST_CASE("factorization category of the cyclic group of order two") {
  // 2 objects (the morphisms of BC2); each ordered pair of objects has 4
  // factorizations (2 choices of a times 2 of b): 8 morphisms total.
  FactorizationCategory fc = factorization_category(cyclic_group_category(2));
  CHECK(fc.cat.nobj() == 2);
  CHECK(fc.cat.nmor() == 8);
  CHECK_FALSE(validate_category(fc.cat).has_value());
}

TEST_CASE("nerve counts") {
  FinCategory pt = terminal_category();
  for (std::size_t n = 0; n <= 4; ++n) CHECK(nerve(pt, n).size() == 1);
  FinCategory bc2 = cyclic_group_category(2);
  for (std::size_t n = 0; n <= 4; ++n)
    CHECK(nerve(bc2, n).size() == std::size_t(1) << n);
  // Arrow category: composable pairs are (ida,ida), (f,ida), (idb,f), (idb,idb).
  FinCategory ar = arrow_category();
  CHECK(nerve(ar, 0).size() == 2);
  CHECK(nerve(ar, 1).size() == 3);
  CHECK(nerve(ar, 2).size() == 4);
  // Composites recorded on the tuples are the actual composites.
  for (const NerveTuple& t : nerve(ar, 2)) {
    REQUIRE(t.mors.size() == 2);
    CHECK(ar.compose(t.mors[0], t.mors[1]) == t.composite);
  }
  // Degree-0 tuples carry identities.
  for (const NerveTuple& t : nerve(ar, 0)) CHECK(ar.is_identity(t.composite));
  // Tuples are sorted lexicographically by morphism id.
  auto deg2 = nerve(ar, 2);
  auto key = [&](const NerveTuple& t) {
    return std::make_pair(ar.morphism_id(t.mors[0]), ar.morphism_id(t.mors[1]));
  };
  for (std::size_t i = 0; i + 1 < deg2.size(); ++i)
    CHECK(key(deg2[i]) < key(deg2[i + 1]));
  CHECK_THROWS_AS(nerve(cyclic_group_category(4), 12, 1000), LimitError);
}

TEST_CASE("functor validation and equivalence predicates") {
  FinFunctor inc = group_clone_inclusion(2, 2);
  CHECK_FALSE(validate_functor(inc).has_value());
  CHECK(is_full(inc));
  CHECK(is_faithful(inc));
  CHECK(is_essentially_surjective(inc));
  CHECK(is_equivalence(inc));

  // Collapse BC2 onto the terminal category: full and essentially surjective
  // but not faithful.
  FinFunctor collapse;
  collapse.src = cyclic_group_category(2);
  collapse.dst = terminal_category();
  collapse.omap = {0};
  collapse.mmap = {0, 0};
  CHECK_FALSE(validate_functor(collapse).has_value());
  CHECK(is_full(collapse));
  CHECK_FALSE(is_faithful(collapse));
  CHECK(is_essentially_surjective(collapse));
  CHECK_FALSE(is_equivalence(collapse));

  // Sending the identity to g1 is not a functor.
  FinFunctor broken;
  broken.src = cyclic_group_category(2);
  broken.dst = cyclic_group_category(2);
  broken.omap = {0};
  broken.mmap = {1, 0};
  CHECK(validate_functor(broken).has_value());
}

}  // TEST_SUITE
