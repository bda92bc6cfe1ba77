#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "catcoh/fincat.hpp"
#include "catcoh/freeccc.hpp"

namespace catcoh {

// Many-sorted equational logic: signatures, terms, proof objects for the
// six-rule provability relation, and satisfaction in finite algebras.

struct Signature {
  std::vector<std::string> sorts;
  struct Op {
    std::string name;
    std::vector<std::string> argsorts;
    std::string ressort;
  };
  std::vector<Op> ops;

  const Op* find_op(const std::string& name) const;
  bool has_sort(const std::string& s) const;
};

void validate_eqsignature(const Signature& sig);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { var, app };
  Kind kind;
  std::string name;  // variable or operation name
  std::string sort;  // var only
  std::vector<TermPtr> args;
};

TermPtr term_var(const std::string& name, const std::string& sort);
TermPtr term_app(const std::string& op, std::vector<TermPtr> args);
bool term_equal(const TermPtr& a, const TermPtr& b);
std::string term_to_string(const TermPtr& t);

// Sort of a well-formed term; throws InputError on arity/sort violations.
std::string sort_of(const Signature& sig, const TermPtr& t);

struct Equation {
  TermPtr lhs, rhs;
  std::vector<std::pair<std::string, std::string>> context;  // (var, sort)
};

void validate_equation(const Signature& sig, const Equation& eq);
std::string equation_to_string(const Equation& eq);

using Substitution = std::map<std::string, TermPtr>;
TermPtr apply_subst(const TermPtr& t, const Substitution& sub);

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

struct Proof {
  enum class Rule { axiom, refl, sym, trans, subst, cong };
  Rule rule;
  std::size_t index = 0;  // axiom
  TermPtr t;              // refl
  std::vector<ProofPtr> subs;
  Substitution sub_map;   // subst
  std::string op;         // cong
};

ProofPtr proof_axiom(std::size_t index);
ProofPtr proof_refl(TermPtr t);
ProofPtr proof_sym(ProofPtr p);
ProofPtr proof_trans(ProofPtr p1, ProofPtr p2);
ProofPtr proof_subst(ProofPtr p, Substitution sub);
ProofPtr proof_cong(const std::string& op, std::vector<ProofPtr> subs);

// True iff p derives goal from E; on failure, *why names the failing node by
// its path from the root.
bool check_proof(const Signature& sig, const std::vector<Equation>& E,
                 const ProofPtr& p, const Equation& goal,
                 std::string* why = nullptr);

struct FinAlgebra {
  std::map<std::string, std::size_t> carrier;            // sort -> cardinality
  std::map<std::string, std::vector<std::size_t>> table; // row-major, first arg most significant
};

void validate_algebra(const Signature& sig, const FinAlgebra& a);
std::size_t interpret_term(const Signature& sig, const FinAlgebra& a, const TermPtr& t,
                           const std::map<std::string, std::size_t>& valuation);
bool satisfies(const Signature& sig, const FinAlgebra& a, const Equation& eq);
bool satisfies_all(const Signature& sig, const FinAlgebra& a,
                   const std::vector<Equation>& eqs);

struct Presentation {
  Signature sig;
  std::vector<Equation> eqs;
};

// Sorts hom(X,Y), composition and identity operations, and the category laws.
Presentation canned_cat_presentation(const std::vector<std::string>& objects);

// A model of the category presentation, as a category; throws InputError
// naming the first failed equation.
FinCategory algebra_to_category(const std::vector<std::string>& objects,
                                const FinAlgebra& a);

// Finite-product-theory presentation over words of length <= maxlen, and the
// cartesian closed presentation over object expressions of depth <= maxdepth.
Presentation canned_law_presentation(const std::vector<std::string>& sorts,
                                     std::size_t maxlen);
Presentation canned_ccc_presentation(const std::vector<std::string>& sorts,
                                     std::size_t maxdepth);

// Object expressions over the given sorts with depth <= maxdepth, in the
// deterministic order used by canned_ccc_presentation.
std::vector<ObjPtr> enumerate_objects(const std::vector<std::string>& sorts,
                                      std::size_t maxdepth);

// The finite CCC as an algebra for canned_ccc_presentation: carriers are
// hom-sets, operations are composition/pairing/currying of chosen structure.
FinAlgebra ccc_to_algebra(const CCStructure& s, const std::vector<std::string>& sorts,
                          const std::map<std::string, std::size_t>& sortmap,
                          std::size_t maxdepth);

}  // namespace catcoh
