#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "catcoh/ccstruct.hpp"

namespace catcoh {

// Object expressions of the free cartesian closed category on a sorted
// signature: sorts, the unit, binary products, exponentials exp(z, y) = z^y.
struct ObjExpr;
using ObjPtr = std::shared_ptr<const ObjExpr>;

struct ObjExpr {
  enum class Kind { sort, unit, prod, exp };
  Kind kind;
  std::string name;  // sort
  ObjPtr a, b;       // prod(a, b); exp: a = base, b = exponent
};

ObjPtr obj_sort(const std::string& name);
ObjPtr obj_unit();
ObjPtr obj_prod(ObjPtr a, ObjPtr b);
ObjPtr obj_exp(ObjPtr base, ObjPtr exponent);
bool obj_equal(const ObjPtr& a, const ObjPtr& b);
std::string obj_to_string(const ObjPtr& o);

// Morphism terms; id/bang/proj/ev carry explicit object annotations so
// typechecking is syntax-directed.
struct MorExpr;
using MorPtr = std::shared_ptr<const MorExpr>;

struct MorExpr {
  enum class Kind { gen, id, bang, proj1, proj2, ev, comp, pair, curry };
  Kind kind;
  std::string name;  // gen
  ObjPtr ta, tb;     // id/bang: ta; proj: (ta, tb); ev: Y = ta, Z = tb
  MorPtr x, y;       // comp: x after y (x o y); pair: <x, y>; curry: x
};

MorPtr mor_gen(const std::string& name);
MorPtr mor_id(ObjPtr a);
MorPtr mor_bang(ObjPtr a);
MorPtr mor_proj1(ObjPtr a, ObjPtr b);
MorPtr mor_proj2(ObjPtr a, ObjPtr b);
MorPtr mor_ev(ObjPtr y, ObjPtr z);
MorPtr mor_comp(MorPtr outer, MorPtr inner);
MorPtr mor_pair(MorPtr f, MorPtr g);
MorPtr mor_curry(MorPtr f);
bool mor_equal(const MorPtr& a, const MorPtr& b);
std::string mor_to_string(const MorPtr& m);

struct CCSignature {
  std::vector<std::string> sorts;
  struct Gen {
    std::string name;
    ObjPtr src, tgt;
  };
  std::vector<Gen> generators;

  const Gen* find(const std::string& name) const;
};

// Throws InputError on duplicate generator names or unknown sorts.
void validate_signature(const CCSignature& sig);

// Unique typing of a term, or InputError.
std::pair<ObjPtr, ObjPtr> typecheck(const CCSignature& sig, const MorPtr& e);

struct NormalForm {
  MorPtr term;
  ObjPtr src, tgt;
};

// Eta-long beta-normal representative, computed through the simply typed
// lambda-calculus with unit and binary products; equal morphisms of the free
// CCC receive syntactically identical normal forms.
NormalForm normalize(const CCSignature& sig, const MorPtr& e,
                     std::size_t size_cap = 10000);

bool equal(const CCSignature& sig, const MorPtr& e1, const MorPtr& e2,
           std::size_t size_cap = 10000);

// Object of a finite CCC denoted by an object expression: sorts through
// objmap, unit/prod/exp through the chosen structure.
std::size_t translate_object(const CCStructure& s,
                             const std::map<std::string, std::size_t>& objmap,
                             const ObjPtr& o);

// Interpretation into a finite CCC through its chosen structure.
std::size_t interpret(const CCSignature& sig, const CCStructure& s,
                      const std::map<std::string, std::size_t>& objmap,
                      const std::map<std::string, std::size_t>& genmap,
                      const MorPtr& e);

// Surface syntax. Objects: `1`, sorts, `A * B` (left-assoc), `Z ^ Y`
// (right-assoc, binds tighter). Terms: `f . g`, `<f, g>`, `curry(f)`,
// `ev[Y,Z]`, `p1[A,B]`, `p2[A,B]`, `id[A]`, `bang[A]`; annotations may be
// omitted when inferable from context.
ObjPtr parse_object(const std::string& text);
MorPtr parse_term(const CCSignature& sig, const std::string& text);

}  // namespace catcoh
