#include "doctest.h"

#include <random>

#include "catcoh/abelian.hpp"

using namespace catcoh;

TEST_SUITE("abelian") {

TEST_CASE("invariant factors of basic presentations") {
  CHECK(invariant_factors(free_abelian_group(1)) == InvariantFactors{1, {}});
  CHECK(invariant_factors(cyclic_group(Int(2))) == InvariantFactors{0, {Int(2)}});
  // Z^2 / <2 e1> = Z + Z/2.
  FPAbelianGroup g(2, IntMatrix::from_rows({{2}, {0}}));
  CHECK(invariant_factors(g) == InvariantFactors{1, {Int(2)}});
  CHECK(invariant_factors(zero_group()).is_trivial());
  CHECK(invariant_factors(cyclic_group(Int(0))) == InvariantFactors{1, {}});
  // Relations need not be in normal form: Z^2 / <(2,4), (6,8)> has SNF diag(2,4).
  FPAbelianGroup h(2, IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(invariant_factors(h) == InvariantFactors{0, {Int(2), Int(4)}});
  CHECK(invariant_factors(h).order() == 8);
}

TEST_CASE("group formatting") {
  CHECK(format_group(zero_group()) == "0");
  CHECK(format_group(free_abelian_group(1)) == "Z");
  CHECK(format_group(free_abelian_group(3)) == "Z^3");
  CHECK(format_group(cyclic_group(Int(2))) == "Z/2");
  CHECK(format_group(FPAbelianGroup(2, IntMatrix::from_rows({{2}, {0}}))) == "Z + Z/2");
  CHECK(format_group(FPAbelianGroup(2, IntMatrix::from_rows({{2, 0}, {0, 4}}))) ==
        "Z/2 + Z/4");
}

TEST_CASE("hom well-definedness and isomorphism tests") {
  FPAbelianGroup z = free_abelian_group(1);
  FPAbelianGroup z4 = cyclic_group(Int(4));
  CHECK(hom_well_defined(z4, z4, IntMatrix::identity(1)));
  // x2 : Z -> Z is a well-defined hom but not onto: cokernel Z/2.
  GroupHom twice = make_hom(z, z, IntMatrix::from_rows({{2}}));
  CHECK_FALSE(is_isomorphism(twice));
  // x3 : Z/4 -> Z/4 is invertible (3 is a unit mod 4); brute force: 3*3 = 9 = 1.
  GroupHom triple = make_hom(z4, z4, IntMatrix::from_rows({{3}}));
  CHECK(is_isomorphism(triple));
  GroupHom inv = hom_inverse(triple);
  CHECK(hom_equal(compose(inv, triple), identity_hom(z4)));
  CHECK(hom_equal(compose(triple, inv), identity_hom(z4)));
  // Z -> Z/2 by 1 is not well defined in the reverse direction: Z/2 -> Z by 1
  // sends the relation 2 to 2 which is not a relation of Z.
  CHECK_FALSE(hom_well_defined(cyclic_group(Int(2)), z, IntMatrix::identity(1)));
  CHECK(hom_well_defined(z, cyclic_group(Int(2)), IntMatrix::identity(1)));
  CHECK_THROWS_AS(make_hom(cyclic_group(Int(2)), z, IntMatrix::identity(1)), InputError);
}

TEST_CASE("hom equality is modulo target relations") {
  FPAbelianGroup z2 = cyclic_group(Int(2));
  GroupHom a = make_hom(z2, z2, IntMatrix::from_rows({{1}}));
  GroupHom b = make_hom(z2, z2, IntMatrix::from_rows({{3}}));
  CHECK(hom_equal(a, b));
  CHECK(is_zero_hom(make_hom(z2, z2, IntMatrix::from_rows({{2}}))));
  CHECK(hom_equal(add(a, a), zero_hom(z2, z2)));
  CHECK(hom_equal(negate_hom(a), a));
}

TEST_CASE("direct sums") {
  DirectSum empty = direct_sum({});
  CHECK(invariant_factors(empty.group).is_trivial());
  DirectSum s = direct_sum({free_abelian_group(1), cyclic_group(Int(2))});
  CHECK(s.group.ngens == 2);
  CHECK(invariant_factors(s.group) == InvariantFactors{1, {Int(2)}});
  DirectSum t =
      direct_sum({cyclic_group(Int(2)), cyclic_group(Int(2)), free_abelian_group(1)});
  CHECK(invariant_factors(t.group) == InvariantFactors{1, {Int(2), Int(2)}});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      GroupHom pi = compose(t.projections[i], t.inclusions[j]);
      if (i == j)
        CHECK(hom_equal(pi, identity_hom(t.projections[i].dst)));
      else
        CHECK(is_zero_hom(pi));
    }
}

TEST_CASE("cohomology of the multiplication-by-two complex") {
  FPAbelianGroup z = free_abelian_group(1);
  CochainComplex cx =
      make_complex({z, z}, {make_hom(z, z, IntMatrix::from_rows({{2}}))});
  CHECK(format_group(cohomology_at(cx, 0)) == "0");
  CHECK(format_group(cohomology_at(cx, 1)) == "Z/2");
  CHECK(format_group(cohomology_at(cx, 2)) == "0");
}

TEST_CASE("cohomology of zero complexes and exact complexes") {
  CochainComplex zcx = make_complex({zero_group(), zero_group()},
                                    {zero_hom(zero_group(), zero_group())});
  CHECK(invariant_factors(cohomology_at(zcx, 0)).is_trivial());
  CHECK(invariant_factors(cohomology_at(zcx, 1)).is_trivial());
  // 0 -> Z --(1,-1)^T--> Z^2 --(1,1)--> Z -> 0 is exact.
  FPAbelianGroup z = free_abelian_group(1), z2 = free_abelian_group(2);
  CochainComplex ex = make_complex(
      {z, z2, z}, {make_hom(z, z2, IntMatrix::from_rows({{1}, {-1}})),
                   make_hom(z2, z, IntMatrix::from_rows({{1, 1}}))});
  CHECK(invariant_factors(cohomology_at(ex, 0)).is_trivial());
  CHECK(invariant_factors(cohomology_at(ex, 1)).is_trivial());
  CHECK(invariant_factors(cohomology_at(ex, 2)).is_trivial());
}

TEST_CASE("make_complex rejects non-complexes") {
  FPAbelianGroup z = free_abelian_group(1);
  CHECK_THROWS_AS(make_complex({z, z, z}, {identity_hom(z), identity_hom(z)}),
                  InputError);
}

TEST_CASE("subquotient presentations") {
  // span{e1, e2} / span{2 e1} inside Z^2.
  FPAbelianGroup q = subquotient_presentation(IntMatrix::identity(2),
                                              IntMatrix::from_rows({{2}, {0}}));
  CHECK(invariant_factors(q) == InvariantFactors{1, {Int(2)}});
  // kill outside the span is rejected.
  CHECK_THROWS_AS(subquotient_presentation(IntMatrix::from_rows({{2}, {0}}),
                                           IntMatrix::from_rows({{0}, {1}})),
                  InputError);
  // span{2e1} / span{4e1} = Z/2.
  FPAbelianGroup r = subquotient_presentation(IntMatrix::from_rows({{2}}),
                                              IntMatrix::from_rows({{4}}));
  CHECK(invariant_factors(r) == InvariantFactors{0, {Int(2)}});
}

TEST_CASE("group enumeration") {
  FPAbelianGroup z4 = cyclic_group(Int(4));
  GroupEnumeration e(z4);
  CHECK(e.order() == 4);
  CHECK(e.torsion_slots() == 1);
  for (std::size_t i = 0; i < 4; ++i) CHECK(e.index_of(e.element(i)) == i);
  auto a = e.element(1), b = e.element(3);
  CHECK(e.is_zero(e.add(a, b)));
  CHECK(e.add(e.negate(a), a) == e.zero_elem());
  CHECK(e.sub(a, a) == e.zero_elem());
  // reduce o lift is the identity on canonical coordinates.
  for (std::size_t i = 0; i < 4; ++i) CHECK(e.reduce(e.lift(e.element(i))) == e.element(i));
  // Z/2 + Z/4 out of a scrambled presentation.
  FPAbelianGroup g(2, IntMatrix::from_rows({{2, 4}, {6, 8}}));
  GroupEnumeration ge(g);
  CHECK(ge.order() == 8);
  CHECK(ge.torsion_slots() == 2);
  CHECK_THROWS_AS(GroupEnumeration(free_abelian_group(1)), InputError);
  CHECK_THROWS_AS(GroupEnumeration(cyclic_group(Int(1) << 21), 1000000), LimitError);
}

TEST_CASE("apply_hom in canonical coordinates") {
  FPAbelianGroup z4 = cyclic_group(Int(4));
  GroupEnumeration e(z4);
  GroupHom triple = make_hom(z4, z4, IntMatrix::from_rows({{3}}));
  for (std::size_t i = 0; i < 4; ++i) {
    auto x = e.element(i);
    auto y = apply_hom(e, e, triple, x);
    auto expect = e.add(e.add(x, x), x);
    CHECK(y == expect);
  }
}

}  // TEST_SUITE
