#pragma once

// The tridiagonal space X of an LR triple: all maps tridiagonal with respect
// to the (A,B), (B,C) and (C,A) decompositions, i.e. E_r X E_s = 0 whenever
// |r - s| > 1 for each of the three idempotent sequences.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lrtriple/families.hpp"

namespace lrt {

struct TridiagSpace {
    std::size_t dimension = 0;
    // Canonical nullspace basis of the constraint system on the row-major
    // flattening of X: basis[f] has entry 1 at its free coordinate and 0 at
    // every other free coordinate. Both solvers return the same list.
    std::vector<Matrix> basis;
    std::shared_ptr<const LRTripleData> triple;
};

// Full solver, (d+1)^2 unknowns. Throws VerificationFailed if one of the ten
// words I, A, B, C, ABC, BCA, CAB, ACB, CBA, BAC is missing from the result.
TridiagSpace tridiagonal_space(const LRTripleData& t);
// X = P Y P^{-1} with P an (A,B)-basis and Y tridiagonal: 3d+1 unknowns.
TridiagSpace tridiagonal_space_reduced(const LRTripleData& t);

// Direct test of the defining conditions.
bool is_tridiagonal_for_triple(const LRTripleData& t, const Matrix& x);
bool membership(const TridiagSpace& space, const Matrix& x);
// Coefficients c with x = sum c_i basis[i]. Throws DependentBasis or NotInSpan.
Vector express_in_basis(const Matrix& x, const std::vector<Matrix>& basis);

// Products of I, J, A, B, C spelled as letters, optionally followed by
// "(I-J)"; "I-J" alone is I - J. J requires a bipartite triple.
// Examples: "ABC", "ACBJ", "ABC(I-J)". Throws InvalidSpec.
Matrix word(const LRTripleData& t, const std::string& label);
const std::vector<std::string>& contained_words();

struct VerificationReport {
    std::string check;
    std::string spec;
    std::size_t dimension = 0;
    std::size_t expected = 0;
    bool basis_ok = false;
    // Word label -> coefficients over the declared basis, in table order.
    std::vector<std::pair<std::string, Vector>> word_coefficients;
    // Named scalars: determinants, kernel and image dimensions.
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

// Throws VerificationFailed carrying the first failure.
void require_passed(const VerificationReport& report);

// The verify_* functions return a report whose failures list each violated
// claim; preconditions on the family kind or d throw InvalidSpec.
VerificationReport verify_theorem_nonbipartite(const FamilySpec& spec);
VerificationReport verify_theorem_bipartite(const FamilySpec& spec);
VerificationReport verify_theorem(const FamilySpec& spec);
VerificationReport verify_proof_matrices(const FamilySpec& spec);
VerificationReport verify_appendix1(const FamilySpec& spec);
VerificationReport verify_appendix2(const FamilySpec& spec);
VerificationReport verify_vanishing_lemma(const FamilySpec& spec);

// Printed coefficient tables, evaluated at the spec's parameters.
struct CoefficientTable {
    std::vector<std::string> basis;
    std::vector<std::pair<std::string, Vector>> rows;
};
CoefficientTable appendix1_table(const FamilySpec& spec);
// Rows expressed over J, AJ, BJ, ACBJ.
CoefficientTable appendix2_table_J(const FamilySpec& spec);
// Rows expressed over I-J, A(I-J), B(I-J), ABC(I-J).
CoefficientTable appendix2_table_IJ(const FamilySpec& spec);

// Coefficient matrices of the independence proofs, as displayed.
Matrix proof_matrix_nonbipartite(const FamilySpec& spec, const LRTripleData& t);
Element proof_determinant_nonbipartite(const FamilySpec& spec);
std::pair<Matrix, Matrix> proof_matrices_bipartite(const LRTripleData& t);

}  // namespace lrt
