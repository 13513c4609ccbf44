#pragma once

// The classified normalized LR triples, built as matrices in an (A,B)-basis.
//
//   nbg   NBG_d(F; q)                  nonbipartite, d >= 2
//   nbg1  NBG_d(F; 1)                  nonbipartite, d >= 2
//   nbng  NBNG_d(F; t)                 nonbipartite, d >= 4 even
//   bdt   B_d(F; t, r0, r1, r2)        bipartite, d >= 4 even
//   bd1   B_d(F; 1, r0, r1, r2)        bipartite, d >= 4 even
//   b2    B_2(F; r0, r1, r2)           bipartite, d = 2

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lrtriple/lrcore.hpp"

namespace lrt {

enum class Family { NBGq, NBG1, NBNG, Bdt, Bd1, B2 };

struct FamilySpec {
    Family family = Family::NBG1;
    std::size_t d = 2;
    Field field;
    // q for NBGq, t for NBNG and Bdt.
    std::optional<Element> param;
    // rho_0, rho'_0, rho''_0 for the bipartite families.
    std::array<std::optional<Element>, 3> rho;

    bool bipartite() const { return family == Family::Bdt || family == Family::Bd1 || family == Family::B2; }
    // Canonical spec string, e.g. "nbg:d=3,q=2" or "bdt:d=4,t=2,r0=1,r1=1,r2=-1/2".
    std::string str() const;
    // Human-readable name, e.g. "NBG_3(Q;2)".
    std::string display_name() const;
};

std::string family_keyword(Family f);

// "q", "gf:P", "ratfunc:VAR", "ratfunc:VAR/gf:P". Throws InvalidSpec.
Field parse_field(const std::string& text);
std::string field_descriptor(const Field& f);

// Parses "nbg:d=3,q=2" and similar over field. Parameters are elements in the
// field grammar; a missing rho is solved from the product constraint (all
// three missing means r0 = r1 = 1). Throws InvalidSpec or ParseError.
FamilySpec parse_spec(const std::string& text, const Field& field);

// Violated constraints, empty iff the spec is constructible.
std::vector<std::string> validate_spec(const FamilySpec& spec);

// which = 0, 1, 2 selects phi, phi', phi''. Throws InvalidSpec.
Element closed_form_phi(const FamilySpec& spec, int which, std::size_t i);
// Throws InvalidSpec, or NoClosedForm for beta without a printed formula.
Element closed_form_alpha(const FamilySpec& spec, int which, std::size_t i);
Element closed_form_beta(const FamilySpec& spec, int which, std::size_t i);
bool has_closed_form_beta(const FamilySpec& spec);

// Entries of A, B, C in the (A,B)-basis.
std::array<Matrix, 3> family_matrices(const FamilySpec& spec);
// Builds and analyzes the triple, checking it against the closed forms.
// Throws InvalidSpec or ConstructionInconsistent.
LRTripleData construct(const FamilySpec& spec);

}  // namespace lrt
