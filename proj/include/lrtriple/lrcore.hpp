#pragma once

// LR pairs and LR triples given by raw matrices.
//
// Letters are indexed A = 0, B = 1, C = 2. Rotation k of a triple is the
// triple (X_k, X_{k+1}, X_{k+2}) with indices mod 3, so the primed objects of a
// triple are the unprimed objects of rotation 1 and the double-primed objects
// those of rotation 2. Pair k is (X_k, X_{k+1}); its idempotents are E^(k), its
// parameter sequence phi^(k); T^(k) is the transition matrix from an
// (X_{k+2}, X_{k+1})-basis to a compatible (X_{k+2}, X_k)-basis.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lrtriple/matrix.hpp"

namespace lrt {

struct LRPairData {
    Matrix A;  // lowering
    Matrix B;  // raising
    std::size_t d = 0;
    // Columns form the (A,B)-basis grown from the canonical seed: v_0 spans
    // ker A with first nonzero coordinate 1, and A v_i = v_{i-1}.
    VectorSpaceBasis basis{Matrix()};
    Matrix basis_inverse;
    // phi_values[i-1] = phi_i for 1 <= i <= d.
    Vector phi_values;
    std::vector<Matrix> idempotents;

    // phi_0 = phi_{d+1} = 0; defined for every integer i.
    Element phi(long i) const;
    const Matrix& E(std::size_t r) const { return idempotents.at(r); }
};

// Throws NotLRPair naming the failed condition.
LRPairData analyze_pair(const Matrix& A, const Matrix& B);

// The (A,B)-basis with v_0 = seed; throws NotInV0 unless seed spans ker A.
VectorSpaceBasis ab_basis(const LRPairData& pair, const Vector& seed);
VectorSpaceBasis ab_basis(const LRPairData& pair);
VectorSpaceBasis inverted_ab_basis(const LRPairData& pair);

// One of the 12 bases: an (X,Y)-basis or its inversion.
struct BasisType {
    int lower = 0;
    int raise = 1;
    bool inverted = false;

    std::string name() const;
    friend bool operator==(const BasisType&, const BasisType&) = default;
};

// (A,B), inv.(A,B), (B,A), inv.(B,A), (B,C), ..., inv.(A,C): the row order of
// the idempotent tables.
std::vector<BasisType> all_basis_types();
// Parses "(A,B)" or "inv.(A,B)"; throws InvalidSpec.
BasisType parse_basis_type(const std::string& text);

struct LRTripleData {
    Field field;
    std::size_t d = 0;
    std::array<Matrix, 3> X;  // A, B, C
    // pairs[k] = (X_k, X_{k+1}); reversed[k] = (X_{k+1}, X_k).
    std::array<LRPairData, 3> pairs;
    std::array<LRPairData, 3> reversed;
    // trace[k][i] = tr(X_{k+2} E^(k)_i).
    std::array<Vector, 3> trace;
    std::array<Matrix, 3> T;
    std::array<Vector, 3> alpha;
    std::array<Vector, 3> beta;
    bool bipartite = false;
    std::optional<Matrix> J;

    const Matrix& A() const { return X[0]; }
    const Matrix& B() const { return X[1]; }
    const Matrix& C() const { return X[2]; }
    const Matrix& E(int k, std::size_t r) const { return pairs[mod3(k)].E(r); }
    Element phi(int k, long i) const { return pairs[mod3(k)].phi(i); }
    const Element& a(int k, std::size_t i) const { return trace[mod3(k)].at(i); }
    // Zero outside 0..d.
    Element alpha_at(int k, long i) const;
    Element beta_at(int k, long i) const;
    // Pair data of the ordered pair (lower, raise).
    const LRPairData& pair(int lower, int raise) const;
    // Diagonal matrix with (i,i)-entry phi^(k)_1 ... phi^(k)_i.
    Matrix D(int k) const;
    Matrix I() const { return Matrix::identity(field, d + 1); }

    static int mod3(int k) { return ((k % 3) + 3) % 3; }
};

// Throws NotLRTriple naming the failing pair; JInconsistent on an internal
// disagreement between the three expressions of J.
LRTripleData analyze_triple(const Matrix& A, const Matrix& B, const Matrix& C);

// Columns of the returned matrix are the basis vectors, built from the
// canonical seed of the lowering map.
Matrix basis_matrix(const LRTripleData& t, const BasisType& type);

// Exact transition matrix P_from^{-1} P_to between canonical-seed bases.
Matrix transition_matrix(const LRTripleData& t, const BasisType& from, const BasisType& to);

// The tabulated product (I, Z, DZ, D, T', ...) for the rows of the three
// transition tables; std::nullopt for pairs the tables do not list.
std::optional<Matrix> tabulated_transition(const LRTripleData& t, const BasisType& from, const BasisType& to);
// Every (from, to) pair for which tabulated_transition returns a value.
std::vector<std::pair<BasisType, BasisType>> tabulated_transition_rows();

// Toeplitz parameters after checking alpha_0 = beta_0 = 1 and beta_1 = -alpha_1.
struct ToeplitzData {
    std::array<Vector, 3> alpha;
    std::array<Vector, 3> beta;
};
ToeplitzData toeplitz_data(const LRTripleData& t);

// Matrix representing E^(k)_r with respect to the given basis.
Matrix idempotent_in_basis(const LRTripleData& t, int k, std::size_t r, const BasisType& type);
// Closed-form (i,j)-entry of that matrix.
Element idempotent_entry_closed_form(const LRTripleData& t, int k, std::size_t r, const BasisType& type,
                                     std::size_t i, std::size_t j);
bool idempotent_entry_check(const LRTripleData& t, int k, const BasisType& type, std::size_t r);

// alpha A, beta B, gamma C. Throws ZeroScalar.
LRTripleData scale_triple(const LRTripleData& t, const Element& a, const Element& b, const Element& c);

struct OutInSplit {
    std::array<Matrix, 3> out;
    std::array<Matrix, 3> in;
};
// X_out = X J, X_in = J X. Throws NotBipartite.
OutInSplit out_in_split(const LRTripleData& t);
// alpha A_out + A_in, beta B_out + B_in, gamma C_out + C_in.
LRTripleData biassociate(const LRTripleData& t, const Element& a, const Element& b, const Element& c);

// (q AB - q^{-1} BA) / (q - q^{-1}) = I. Throws InvalidQ when q = 0 or q^2 = 1.
bool is_q_weyl_pair(const Matrix& A, const Matrix& B, const Element& q);

// alpha_1 = alpha'_1 = alpha''_1 = 1 (nonbipartite) or alpha_2 = alpha'_2 = alpha''_2 = 1 (bipartite).
bool is_normalized(const LRTripleData& t);

}  // namespace lrt
