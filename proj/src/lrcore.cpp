#include "lrtriple/lrcore.hpp"

#include <stdexcept>

namespace lrt {

namespace {

const char* const kLetters = "ABC";

std::string pair_name(int lower, int raise) {
    return std::string("(") + kLetters[lower] + "," + kLetters[raise] + ")";
}

Vector normalize_vector(Vector v) {
    for (const auto& x : v) {
        if (!x.is_zero()) {
            const Element inv = x.inv();
            for (auto& y : v) y *= inv;
            return v;
        }
    }
    return v;
}

bool is_zero_vector(const Vector& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

// c with y = c x, x nonzero; nullopt when y is not a multiple of x.
std::optional<Element> vector_ratio(const Vector& x, const Vector& y) {
    std::size_t k = 0;
    while (k < x.size() && x[k].is_zero()) ++k;
    if (k == x.size()) return std::nullopt;
    const Element c = y[k] / x[k];
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (c * x[i] != y[i]) return std::nullopt;
    }
    return c;
}

Matrix outer(const Vector& col, const Vector& row) {
    Matrix m(col[0].field(), col.size(), row.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (col[i].is_zero()) continue;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_zero()) m(i, j) = col[i] * row[j];
        }
    }
    return m;
}

Matrix reverse_columns(const Matrix& p) {
    Matrix q(p.field(), p.rows(), p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) q(i, j) = p(i, p.cols() - 1 - j);
    }
    return q;
}

Element sequence_at(const Vector& s, long i, const Field& f) {
    if (i < 0 || static_cast<std::size_t>(i) >= s.size()) return f.zero();
    return s[static_cast<std::size_t>(i)];
}

}  // namespace

// ---- pairs --------------------------------------------------------------------

Element LRPairData::phi(long i) const {
    if (i < 1 || static_cast<std::size_t>(i) > d) return A.field().zero();
    return phi_values[static_cast<std::size_t>(i - 1)];
}

LRPairData analyze_pair(const Matrix& A, const Matrix& B) {
    if (A.field() != B.field()) throw ContextMismatch("pair over " + A.field().name() + " and " + B.field().name());
    if (!A.is_square() || !B.is_square() || A.rows() != B.rows() || A.rows() == 0) {
        throw NotLRPair("maps must be square of one common nonzero size");
    }
    const Field& f = A.field();
    const std::size_t n = A.rows();
    const auto kernel = nullspace(A);
    if (kernel.size() != 1) {
        throw NotLRPair("kernel of the lowering map has dimension " + std::to_string(kernel.size()) + ", expected 1");
    }
    std::vector<Vector> w{normalize_vector(kernel[0])};
    for (std::size_t i = 1; i < n; ++i) {
        w.push_back(B * w.back());
        if (is_zero_vector(w.back())) {
            throw NotLRPair("raising fails: B^" + std::to_string(i) + " kills the kernel of the lowering map");
        }
    }
    if (!is_zero_vector(B * w.back())) throw NotLRPair("raising fails: B does not vanish on V_d");
    const Matrix W = Matrix::from_columns(f, n, w);
    if (rank(W) != n) throw NotLRPair("raising fails: the subspaces B^i V_0 are not independent");

    LRPairData out;
    out.A = A;
    out.B = B;
    out.d = n - 1;
    std::vector<Vector> v{w[0]};
    Element scale = f.one();
    for (std::size_t i = 1; i < n; ++i) {
        const auto c = vector_ratio(w[i - 1], A * w[i]);
        if (!c) throw NotLRPair("lowering fails: A V_" + std::to_string(i) + " is not contained in V_" + std::to_string(i - 1));
        if (c->is_zero()) throw NotLRPair("zero phi: phi_" + std::to_string(i) + " = 0");
        out.phi_values.push_back(*c);
        scale *= *c;
        Vector vi = w[i];
        const Element inv = scale.inv();
        for (auto& x : vi) x *= inv;
        v.push_back(std::move(vi));
    }
    out.basis = VectorSpaceBasis(Matrix::from_columns(f, n, v));
    out.basis_inverse = inverse(out.basis.P);
    for (std::size_t r = 0; r < n; ++r) out.idempotents.push_back(outer(v[r], out.basis_inverse.row(r)));
    return out;
}

VectorSpaceBasis ab_basis(const LRPairData& pair) { return pair.basis; }

VectorSpaceBasis ab_basis(const LRPairData& pair, const Vector& seed) {
    const Vector v0 = pair.basis.vector(0);
    if (seed.size() != v0.size()) throw NotInV0("seed of wrong length");
    const auto c = vector_ratio(v0, seed);
    if (!c || c->is_zero()) throw NotInV0("seed does not span V_0");
    return VectorSpaceBasis(pair.basis.P * *c);
}

VectorSpaceBasis inverted_ab_basis(const LRPairData& pair) { return pair.basis.inverted(); }

// ---- basis types ----------------------------------------------------------------

std::string BasisType::name() const { return (inverted ? "inv." : "") + pair_name(lower, raise); }

std::vector<BasisType> all_basis_types() {
    std::vector<BasisType> out;
    for (int k = 0; k < 3; ++k) {
        const int x0 = k, x1 = (k + 1) % 3;
        out.push_back({x0, x1, false});
        out.push_back({x0, x1, true});
        out.push_back({x1, x0, false});
        out.push_back({x1, x0, true});
    }
    return out;
}

BasisType parse_basis_type(const std::string& text) {
    for (const auto& b : all_basis_types()) {
        if (b.name() == text) return b;
    }
    throw InvalidSpec("unknown basis type '" + text + "'");
}

// ---- triples ----------------------------------------------------------------------

Element LRTripleData::alpha_at(int k, long i) const { return sequence_at(alpha[mod3(k)], i, field); }
Element LRTripleData::beta_at(int k, long i) const { return sequence_at(beta[mod3(k)], i, field); }

const LRPairData& LRTripleData::pair(int lower, int raise) const {
    lower = mod3(lower);
    raise = mod3(raise);
    if (raise == mod3(lower + 1)) return pairs[lower];
    if (lower == mod3(raise + 1)) return reversed[raise];
    throw InvalidSpec("a pair needs two distinct letters");
}

Matrix LRTripleData::D(int k) const { return diagonal_D(field, pairs[mod3(k)].phi_values); }

LRTripleData analyze_triple(const Matrix& A, const Matrix& B, const Matrix& C) {
    LRTripleData t;
    t.field = A.field();
    t.X = {A, B, C};
    for (int k = 0; k < 3; ++k) {
        const int k1 = (k + 1) % 3;
        for (int rev = 0; rev < 2; ++rev) {
            const int lower = rev ? k1 : k, raise = rev ? k : k1;
            try {
                (rev ? t.reversed : t.pairs)[k] = analyze_pair(t.X[lower], t.X[raise]);
            } catch (const NotLRPair& e) {
                throw NotLRTriple("pair " + pair_name(lower, raise) + " is not an LR pair: " + e.what());
            }
        }
    }
    t.d = t.pairs[0].d;
    // The reversed pair decomposes V in the opposite order.
    for (int k = 0; k < 3; ++k) {
        for (std::size_t r = 0; r <= t.d; ++r) {
            if (t.reversed[k].E(r) != t.pairs[k].E(t.d - r)) {
                throw NotLRTriple("pair " + pair_name((k + 1) % 3, k) + " does not invert the decomposition of " +
                                  pair_name(k, (k + 1) % 3));
            }
        }
    }

    bool all_zero = true;
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i <= t.d; ++i) {
            t.trace[k].push_back(lrt::trace(t.X[(k + 2) % 3] * t.pairs[k].E(i)));
            all_zero = all_zero && t.trace[k].back().is_zero();
        }
    }

    for (int k = 0; k < 3; ++k) {
        const Matrix& from = t.pair(k + 2, k + 1).basis_inverse;
        const Matrix& to = t.pair(k + 2, k).basis.P;
        t.T[k] = from * to;
        if (!is_upper_toeplitz(t.T[k]) || !t.T[k](0, 0).is_one()) {
            throw IncompatibleBases("transition matrix T^(" + std::to_string(k) + ") is not unit upper Toeplitz");
        }
        const Matrix tinv = inverse(t.T[k]);
        t.alpha[k] = t.T[k].row(0);
        t.beta[k] = tinv.row(0);
    }

    t.bipartite = all_zero;
    if (t.bipartite) {
        if (t.d % 2 != 0) throw JInconsistent("bipartite trace data with odd d = " + std::to_string(t.d));
        std::array<Matrix, 3> js;
        for (int k = 0; k < 3; ++k) {
            js[k] = Matrix(t.field, t.d + 1, t.d + 1);
            for (std::size_t r = 0; r <= t.d; r += 2) js[k] += t.pairs[k].E(r);
        }
        if (js[0] != js[1] || js[0] != js[2]) throw JInconsistent("the three even idempotent sums differ");
        t.J = js[0];
    }
    return t;
}

Matrix basis_matrix(const LRTripleData& t, const BasisType& type) {
    const Matrix& p = t.pair(type.lower, type.raise).basis.P;
    return type.inverted ? reverse_columns(p) : p;
}

Matrix transition_matrix(const LRTripleData& t, const BasisType& from, const BasisType& to) {
    return inverse(basis_matrix(t, from)) * basis_matrix(t, to);
}

namespace {

// Position of (from, to) in the rotated tables: rotation k, from-row in
// {0: (X0,X1), 1: (X0,X2), 2: (X1,X2)}, to-column in
// {0: (X0,X1), 1: inv.(X0,X1), 2: (X1,X0), 3: inv.(X1,X0)}.
struct TableSlot {
    int k;
    int from_row;
    int to_col;
};

std::optional<TableSlot> locate(const BasisType& from, const BasisType& to) {
    if (from.inverted) return std::nullopt;
    for (int k = 0; k < 3; ++k) {
        const int x0 = k, x1 = (k + 1) % 3, x2 = (k + 2) % 3;
        int to_col = -1;
        if (to.lower == x0 && to.raise == x1) to_col = to.inverted ? 1 : 0;
        if (to.lower == x1 && to.raise == x0) to_col = to.inverted ? 3 : 2;
        if (to_col < 0) continue;
        int from_row = -1;
        if (from.lower == x0 && from.raise == x1) from_row = 0;
        if (from.lower == x0 && from.raise == x2) from_row = 1;
        if (from.lower == x1 && from.raise == x2) from_row = 2;
        if (from_row < 0) continue;
        return TableSlot{k, from_row, to_col};
    }
    return std::nullopt;
}

}  // namespace

std::optional<Matrix> tabulated_transition(const LRTripleData& t, const BasisType& from, const BasisType& to) {
    const auto slot = locate(from, to);
    if (!slot) return std::nullopt;
    const int k = slot->k;
    const Matrix I = t.I();
    const Matrix Z = exchange_Z(t.d, t.field);
    const Matrix D = t.D(k);
    const std::array<Matrix, 4> base{I, Z, D * Z, D};
    const Matrix& tail = base[static_cast<std::size_t>(slot->to_col)];
    switch (slot->from_row) {
        case 0: return tail;
        case 1: return t.T[LRTripleData::mod3(k + 1)] * tail;
        default: return inverse(t.T[LRTripleData::mod3(k + 2)]) * Z * inverse(D) * tail;
    }
}

std::vector<std::pair<BasisType, BasisType>> tabulated_transition_rows() {
    std::vector<std::pair<BasisType, BasisType>> rows;
    for (int k = 0; k < 3; ++k) {
        const int x0 = k, x1 = (k + 1) % 3, x2 = (k + 2) % 3;
        const std::array<BasisType, 3> froms{BasisType{x0, x1, false}, BasisType{x0, x2, false}, BasisType{x1, x2, false}};
        const std::array<BasisType, 4> tos{BasisType{x0, x1, false}, BasisType{x0, x1, true}, BasisType{x1, x0, false},
                                           BasisType{x1, x0, true}};
        for (const auto& f : froms) {
            for (const auto& to : tos) rows.emplace_back(f, to);
        }
    }
    return rows;
}

ToeplitzData toeplitz_data(const LRTripleData& t) {
    for (int k = 0; k < 3; ++k) {
        const auto& a = t.alpha[k];
        const auto& b = t.beta[k];
        if (!a[0].is_one() || !b[0].is_one()) throw IncompatibleBases("Toeplitz parameters with alpha_0 or beta_0 != 1");
        if (t.d >= 1 && b[1] != -a[1]) throw IncompatibleBases("Toeplitz parameters with beta_1 != -alpha_1");
    }
    return ToeplitzData{t.alpha, t.beta};
}

// ---- idempotents ------------------------------------------------------------------------

Matrix idempotent_in_basis(const LRTripleData& t, int k, std::size_t r, const BasisType& type) {
    const Matrix p = basis_matrix(t, type);
    return inverse(p) * t.E(k, r) * p;
}

Element idempotent_entry_closed_form(const LRTripleData& t, int k, std::size_t r, const BasisType& type,
                                     std::size_t i, std::size_t j) {
    const long d = static_cast<long>(t.d);
    const long R = static_cast<long>(r), I = static_cast<long>(i), Jc = static_cast<long>(j);
    const Field& f = t.field;
    const int a = LRTripleData::mod3(type.lower - k);
    const int b = LRTripleData::mod3(type.raise - k);
    const bool inv = type.inverted;
    auto al = [&](int n, long x) { return t.alpha_at(k + n, x); };
    auto be = [&](int n, long x) { return t.beta_at(k + n, x); };
    // phi^(k+n)_lo ... phi^(k+n)_hi, empty product 1.
    auto prod = [&](int n, long lo, long hi) {
        Element p = f.one();
        for (long x = lo; x <= hi; ++x) p *= t.phi(k + n, x);
        return p;
    };
    auto unit = [&](bool cond) { return cond ? f.one() : f.zero(); };

    if (a == 0 && b == 1) return inv ? unit(I == d - R && Jc == d - R) : unit(I == R && Jc == R);
    if (a == 1 && b == 0) return inv ? unit(I == R && Jc == R) : unit(I == d - R && Jc == d - R);
    if (a == 1 && b == 2) {
        if (!inv) return (I <= d - R && d - R <= Jc) ? al(2, R - d + Jc) * be(2, d - R - I) : f.zero();
        return (Jc <= R && R <= I) ? al(2, R - Jc) * be(2, I - R) : f.zero();
    }
    if (a == 2 && b == 1) {
        if (!inv) return (Jc <= R && R <= I) ? al(2, R - Jc) * be(2, I - R) * prod(1, d - I + 1, d - Jc) : f.zero();
        return (I <= d - R && d - R <= Jc) ? al(2, R - d + Jc) * be(2, d - R - I) * prod(1, I + 1, Jc) : f.zero();
    }
    if (a == 2 && b == 0) {
        if (!inv) return (Jc <= d - R && d - R <= I) ? al(1, R - d + I) * be(1, d - R - Jc) * prod(2, Jc + 1, I) : f.zero();
        return (I <= R && R <= Jc) ? al(1, R - I) * be(1, Jc - R) * prod(2, d - Jc + 1, d - I) : f.zero();
    }
    if (a == 0 && b == 2) {
        if (!inv) return (I <= R && R <= Jc) ? al(1, R - I) * be(1, Jc - R) : f.zero();
        return (Jc <= d - R && d - R <= I) ? al(1, R - d + I) * be(1, d - R - Jc) : f.zero();
    }
    throw InvalidSpec("basis type needs two distinct letters");
}

bool idempotent_entry_check(const LRTripleData& t, int k, const BasisType& type, std::size_t r) {
    const Matrix m = idempotent_in_basis(t, k, r, type);
    for (std::size_t i = 0; i <= t.d; ++i) {
        for (std::size_t j = 0; j <= t.d; ++j) {
            if (m(i, j) != idempotent_entry_closed_form(t, k, r, type, i, j)) return false;
        }
    }
    return true;
}

// ---- transforms ---------------------------------------------------------------------------

LRTripleData scale_triple(const LRTripleData& t, const Element& a, const Element& b, const Element& c) {
    if (a.is_zero() || b.is_zero() || c.is_zero()) throw ZeroScalar("scaling factors must be nonzero");
    return analyze_triple(t.A() * a, t.B() * b, t.C() * c);
}

OutInSplit out_in_split(const LRTripleData& t) {
    if (!t.bipartite || !t.J) throw NotBipartite("out/in split needs a bipartite triple");
    const Matrix& J = *t.J;
    const Matrix IJ = t.I() - J;
    OutInSplit s;
    for (int k = 0; k < 3; ++k) {
        const Matrix& X = t.X[k];
        s.out[k] = X * J;
        s.in[k] = J * X;
        if (s.out[k] != IJ * X || s.in[k] != X * IJ || s.out[k] + s.in[k] != X) {
            throw JInconsistent(std::string("out/in identities fail for ") + kLetters[k]);
        }
        // X maps V_out onto V_in and V_in into V_out.
        if (IJ * s.out[k] != s.out[k] || rank(s.out[k]) != rank(IJ) || J * s.in[k] != s.in[k]) {
            throw JInconsistent(std::string("out/in mapping properties fail for ") + kLetters[k]);
        }
    }
    return s;
}

LRTripleData biassociate(const LRTripleData& t, const Element& a, const Element& b, const Element& c) {
    if (a.is_zero() || b.is_zero() || c.is_zero()) throw ZeroScalar("biassociation factors must be nonzero");
    const OutInSplit s = out_in_split(t);
    return analyze_triple(s.out[0] * a + s.in[0], s.out[1] * b + s.in[1], s.out[2] * c + s.in[2]);
}

bool is_q_weyl_pair(const Matrix& A, const Matrix& B, const Element& q) {
    if (q.is_zero() || (q * q).is_one()) throw InvalidQ("q-Weyl type needs q != 0 and q^2 != 1");
    const Element qi = q.inv();
    return A * B * q - B * A * qi == Matrix::identity(A.field(), A.rows()) * (q - qi);
}

bool is_normalized(const LRTripleData& t) {
    const long i = t.bipartite ? 2 : 1;
    for (int k = 0; k < 3; ++k) {
        if (!t.alpha_at(k, i).is_one()) return false;
    }
    return true;
}

}  // namespace lrt
