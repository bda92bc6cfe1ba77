#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catcoh/ccstruct.hpp"
#include "catcoh/eqlogic.hpp"
#include "catcoh/fincat.hpp"
#include "catcoh/freeccc.hpp"
#include "catcoh/natsys.hpp"

namespace catcoh {

// Parsed artifact file: a line-oriented description of finite categories with
// optional chosen terminal/product/exponential structure, natural systems
// over them, equational signatures with axiom sets and proofs, and cartesian
// closed signatures with named terms.
//
// Grammar (one construct per line, '#' starts a comment):
//   category NAME
//   objects: a b c
//   mor f : a -> b
//   identity a = e              (optional; otherwise id_<object> is created)
//   compose g f = h             (g o f = h; identity composites are implicit)
//   structure                   (attaches to the preceding category)
//   terminal: a
//   product a b = p with p1=m, p2=m
//   exp y z = e with ev=m       (e = z^y, ev : e x y -> z)
//   natsys NAME over CATNAME
//   constant: Z^r / [rows]      (shorthand: every group equal, all maps identity)
//   group f = Z^r / [rows]      (rows of the relation matrix, one per generator)
//   pre a on f = [rows]         (a^* : D_f -> D_{f o a}; identity a implicit)
//   post b on f = [rows]        (b_* : D_f -> D_{b o f}; identity b implicit)
//   signature NAME
//   sort s
//   op name : s1 s2 -> s3       (nullary: `op name : -> s`)
//   equations NAME over SIGNAME
//   eq NAME [x:s, y:t] : TERM ~ TERM
//   proof NAME over EQSNAME
//   goal [x:s] : TERM ~ TERM
//   let NAME = PROOFEXPR
//   by PROOFEXPR
//   ccsig NAME
//   sorts X Y Z
//   gen f : OBJ -> OBJ          (OBJ in the surface object grammar)
//   term NAME = TERM            (TERM in the surface term grammar)
// Proof expressions:
//   axiom NAME | refl TERM | sym(P) | trans(P, P)
//   | subst(P; x := TERM, ...) | cong op(P, ..., P) | LETNAME
// where proof-level TERMs annotate variables as `x:s`.
struct SpecFile {
  struct Category {
    std::string name;
    FinCategory cat;
    std::optional<CCStructure> structure;
  };
  struct Natsys {
    std::string name;
    std::string over;  // category name
    NaturalSystem sys;
  };
  struct Sig {
    std::string name;
    Signature sig;
  };
  struct Axioms {
    std::string name;
    std::string over;  // signature name
    std::vector<std::string> eq_names;
    std::vector<Equation> eqs;

    std::optional<std::size_t> find(const std::string& eq_name) const;
  };
  struct ProofBlock {
    std::string name;
    std::string over;  // axiom-set name
    Equation goal;
    ProofPtr proof;
  };
  struct CCSig {
    std::string name;
    CCSignature sig;
    std::vector<std::pair<std::string, MorPtr>> terms;
  };

  std::vector<Category> categories;
  std::vector<Natsys> natsystems;
  std::vector<Sig> signatures;
  std::vector<Axioms> axiom_sets;
  std::vector<ProofBlock> proofs;
  std::vector<CCSig> ccsigs;

  const Category* find_category(const std::string& name) const;
  const Natsys* find_natsys(const std::string& name) const;
  const Sig* find_signature(const std::string& name) const;
  const Axioms* find_axioms(const std::string& name) const;
  const ProofBlock* find_proof(const std::string& name) const;
  const CCSig* find_ccsig(const std::string& name) const;
};

// Total parse with position-reporting errors: every InputError message starts
// with "filename:line:col:".
SpecFile parse_spec(const std::string& text, const std::string& filename = "<input>");

// Canonical printing; parse_spec(print_spec(f)) reproduces f. Identities and
// all composition-map entries are printed explicitly.
std::string print_spec(const SpecFile& f);

}  // namespace catcoh
