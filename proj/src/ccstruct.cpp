#include "catcoh/ccstruct.hpp"

namespace catcoh {

const ProductCone& CCStructure::product(std::size_t a, std::size_t b) const {
  auto it = products.find({a, b});
  if (it == products.end())
    throw InputError("no chosen product for (" + base.object_id(a) + ", " +
                     base.object_id(b) + ")");
  return it->second;
}

const ExpCone& CCStructure::exponential(std::size_t y, std::size_t z) const {
  auto it = exponentials.find({y, z});
  if (it == exponentials.end())
    throw InputError("no chosen exponential for (" + base.object_id(y) + ", " +
                     base.object_id(z) + ")");
  return it->second;
}

std::size_t CCStructure::bang(std::size_t x) const {
  if (!terminal) throw InputError("no chosen terminal object");
  const auto& hs = base.hom_set(x, *terminal);
  if (hs.size() != 1)
    throw InputError("hom(" + base.object_id(x) + ", terminal) is not a singleton");
  return hs[0];
}

std::optional<StructureViolation> validate_terminal(const CCStructure& s) {
  if (!s.terminal) return std::nullopt;  // nothing chosen, nothing to check
  std::size_t t = *s.terminal;
  for (std::size_t x = 0; x < s.base.nobj(); ++x) {
    const auto& hs = s.base.hom_set(x, t);
    if (hs.size() != 1)
      return StructureViolation{
          "terminal " + s.base.object_id(t),
          "hom(" + s.base.object_id(x) + ", " + s.base.object_id(t) + ") has " +
              std::to_string(hs.size()) + " elements, expected 1"};
  }
  return std::nullopt;
}

std::optional<StructureViolation> validate_products(const CCStructure& s) {
  const FinCategory& c = s.base;
  for (const auto& [key, cone] : s.products) {
    auto [a, b] = key;
    std::string where = "product (" + c.object_id(a) + ", " + c.object_id(b) + ")";
    if (c.src(cone.p1) != cone.object || c.tgt(cone.p1) != a)
      return StructureViolation{where, "projection '" + c.morphism_id(cone.p1) +
                                           "' has wrong endpoints"};
    if (c.src(cone.p2) != cone.object || c.tgt(cone.p2) != b)
      return StructureViolation{where, "projection '" + c.morphism_id(cone.p2) +
                                           "' has wrong endpoints"};
    for (std::size_t w = 0; w < c.nobj(); ++w)
      for (std::size_t f1 : c.hom_set(w, a))
        for (std::size_t f2 : c.hom_set(w, b)) {
          std::size_t count = 0;
          for (std::size_t h : c.hom_set(w, cone.object))
            if (c.compose(cone.p1, h) == f1 && c.compose(cone.p2, h) == f2) ++count;
          if (count != 1)
            return StructureViolation{
                where, "cone ('" + c.morphism_id(f1) + "', '" + c.morphism_id(f2) +
                           "') from " + c.object_id(w) + " has " + std::to_string(count) +
                           " mediating morphisms, expected 1"};
        }
  }
  return std::nullopt;
}

std::optional<StructureViolation> validate_exponentials(const CCStructure& s) {
  const FinCategory& c = s.base;
  for (const auto& [key, cone] : s.exponentials) {
    auto [y, z] = key;
    std::string where =
        "exponential (" + c.object_id(y) + ", " + c.object_id(z) + ")";
    if (!s.has_product(cone.object, y))
      return StructureViolation{where, "no chosen product (" + c.object_id(cone.object) +
                                           ", " + c.object_id(y) + ") to type ev"};
    const ProductCone& ey = s.product(cone.object, y);
    if (c.src(cone.ev) != ey.object || c.tgt(cone.ev) != z)
      return StructureViolation{
          where, "ev '" + c.morphism_id(cone.ev) + "' has wrong endpoints"};
    for (std::size_t x = 0; x < c.nobj(); ++x) {
      if (!s.has_product(x, y))
        return StructureViolation{where, "no chosen product (" + c.object_id(x) + ", " +
                                             c.object_id(y) + ") needed for the check"};
      const ProductCone& xy = s.product(x, y);
      for (std::size_t f : c.hom_set(xy.object, z)) {
        std::size_t count = 0;
        for (std::size_t h : c.hom_set(x, cone.object)) {
          // h x id_Y via the chosen product (Z^Y, Y).
          std::size_t hx = pairing(s, c.compose(h, xy.p1), xy.p2);
          if (c.compose(cone.ev, hx) == f) ++count;
        }
        if (count != 1)
          return StructureViolation{
              where, "morphism '" + c.morphism_id(f) + "' from " +
                         c.object_id(xy.object) + " has " + std::to_string(count) +
                         " exponential transposes, expected 1"};
      }
    }
  }
  return std::nullopt;
}

std::optional<StructureViolation> validate_structure(const CCStructure& s) {
  if (auto v = validate_terminal(s)) return v;
  if (auto v = validate_products(s)) return v;
  return validate_exponentials(s);
}

std::size_t pairing(const CCStructure& s, std::size_t f1, std::size_t f2) {
  const FinCategory& c = s.base;
  if (c.src(f1) != c.src(f2)) throw InputError("pairing: sources differ");
  const ProductCone& cone = s.product(c.tgt(f1), c.tgt(f2));
  std::size_t found = FinCategory::npos;
  for (std::size_t h : c.hom_set(c.src(f1), cone.object))
    if (c.compose(cone.p1, h) == f1 && c.compose(cone.p2, h) == f2) {
      if (found != FinCategory::npos)
        throw InputError("pairing: mediating morphism not unique for ('" +
                         c.morphism_id(f1) + "', '" + c.morphism_id(f2) + "')");
      found = h;
    }
  if (found == FinCategory::npos)
    throw InputError("pairing: no mediating morphism for ('" + c.morphism_id(f1) +
                     "', '" + c.morphism_id(f2) + "')");
  return found;
}

std::size_t product_of_morphisms(const CCStructure& s, std::size_t f, std::size_t g) {
  const FinCategory& c = s.base;
  const ProductCone& src = s.product(c.src(f), c.src(g));
  return pairing(s, c.compose(f, src.p1), c.compose(g, src.p2));
}

std::size_t lambda_of(const CCStructure& s, std::size_t x, std::size_t y, std::size_t z,
                      std::size_t f) {
  const FinCategory& c = s.base;
  const ProductCone& xy = s.product(x, y);
  if (c.src(f) != xy.object || c.tgt(f) != z)
    throw InputError("lambda_of: morphism endpoints do not match the given typing");
  const ExpCone& e = s.exponential(y, z);
  std::size_t found = FinCategory::npos;
  for (std::size_t h : c.hom_set(x, e.object)) {
    std::size_t hx = pairing(s, c.compose(h, xy.p1), xy.p2);
    if (c.compose(e.ev, hx) == f) {
      if (found != FinCategory::npos)
        throw InputError("lambda_of: transpose not unique for '" + c.morphism_id(f) + "'");
      found = h;
    }
  }
  if (found == FinCategory::npos)
    throw InputError("lambda_of: no transpose for '" + c.morphism_id(f) + "'");
  return found;
}

}  // namespace catcoh
