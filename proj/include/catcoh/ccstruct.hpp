#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catcoh/fincat.hpp"

namespace catcoh {

// Chosen product cone for an ordered pair (A, B).
struct ProductCone {
  std::size_t object;  // A x B
  std::size_t p1, p2;  // projections
};

// Chosen exponential for (Y, Z): object Z^Y with ev : (Z^Y x Y) -> Z.
struct ExpCone {
  std::size_t object;
  std::size_t ev;
};

// Chosen terminal / product / exponential structure on a finite category.
// The structure is data; validate_* verify the universal properties by brute
// force over the finite hom-sets.
struct CCStructure {
  FinCategory base;
  std::optional<std::size_t> terminal;
  std::map<std::pair<std::size_t, std::size_t>, ProductCone> products;
  std::map<std::pair<std::size_t, std::size_t>, ExpCone> exponentials;

  bool has_product(std::size_t a, std::size_t b) const {
    return products.count({a, b}) != 0;
  }
  const ProductCone& product(std::size_t a, std::size_t b) const;
  bool has_exponential(std::size_t y, std::size_t z) const {
    return exponentials.count({y, z}) != 0;
  }
  const ExpCone& exponential(std::size_t y, std::size_t z) const;
  // The unique morphism x -> terminal; throws InputError when the terminal is
  // missing or the hom-set is not a singleton.
  std::size_t bang(std::size_t x) const;
};

struct StructureViolation {
  std::string where;   // which cone or object failed
  std::string detail;  // what went wrong, naming exact morphisms
};

std::optional<StructureViolation> validate_terminal(const CCStructure& s);
std::optional<StructureViolation> validate_products(const CCStructure& s);
std::optional<StructureViolation> validate_exponentials(const CCStructure& s);
// All three in order; first failure wins.
std::optional<StructureViolation> validate_structure(const CCStructure& s);

// Unique h with p1 o h = f1 and p2 o h = f2 into the chosen product of
// (tgt f1, tgt f2); throws InputError if the cone is missing or h is not
// unique (i.e. the recorded cone is not actually a product).
std::size_t pairing(const CCStructure& s, std::size_t f1, std::size_t f2);
// f x g = <f o p1, g o p2> : A x B -> A' x B' for f : A -> A', g : B -> B'.
std::size_t product_of_morphisms(const CCStructure& s, std::size_t f, std::size_t g);
// Unique h : X -> Z^Y with ev o (h x id_Y) = f, for f : X x Y -> Z given with
// its product decomposition (x, y) and target z.
std::size_t lambda_of(const CCStructure& s, std::size_t x, std::size_t y, std::size_t z,
                      std::size_t f);

}  // namespace catcoh
