#include "doctest.h"

#include <random>

#include "lrtriple/matrix.hpp"

using namespace lrt;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937& rng, int spread = 5) {
    std::uniform_int_distribution<int> dist(-spread, spread);
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(dist(rng));
    }
    return m;
}

Vector ints(const Field& f, std::initializer_list<int> xs) {
    Vector v;
    for (int x : xs) v.push_back(f.from_int(x));
    return v;
}

}  // namespace

TEST_CASE("basic products") {
    const Field q;
    std::mt19937 rng(1);
    const Matrix x = random_matrix(q, 4, 4, rng);
    CHECK(Matrix::identity(q, 4) * x == x);
    const Matrix z = exchange_Z(3, q);
    CHECK(z * z == Matrix::identity(q, 4));
    const Matrix d = diagonal_D(q, ints(q, {2, -3, 5}));
    CHECK(d * inverse(d) == Matrix::identity(q, 4));
    CHECK_THROWS_AS(x * Matrix(q, 3, 3), ShapeMismatch);
    CHECK_THROWS_AS(x + Matrix::identity(Field::prime(7), 4), ContextMismatch);
    CHECK(x.transpose().transpose() == x);
}

TEST_CASE("named constructors") {
    const Field q;
    const Matrix z = exchange_Z(3, q);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) CHECK(z(i, j) == q.from_int(i + j == 3 ? 1 : 0));
    }
    CHECK(z(3, 3).is_zero());
    const Element p1 = q.from_int(3), p2 = q.parse("-1/2");
    const Matrix d = diagonal_D(q, {p1, p2});
    CHECK(d == Matrix::from_rows(q, {ints(q, {1, 0, 0}), {q.zero(), p1, q.zero()}, {q.zero(), q.zero(), p1 * p2}}));
    const Matrix f = elementary_F(2, 3, q);
    CHECK(f(2, 2).is_one());
    CHECK(trace(f).is_one());
    CHECK_THROWS_AS(elementary_F(4, 3, q), IndexOutOfRange);
    const Matrix t = toeplitz_upper(ints(q, {1, 4, 7}));
    CHECK(is_upper_toeplitz(t));
    CHECK(is_upper_toeplitz(inverse(t)));
    CHECK(is_tridiagonal(Matrix::identity(q, 4)));
    CHECK(!is_tridiagonal(z));
}

TEST_CASE("rref and nullspace") {
    const Field q;
    CHECK(nullspace(Matrix::identity(q, 3)).empty());
    const auto ns = nullspace(Matrix::from_rows(q, {ints(q, {1, 1, 1})}));
    REQUIRE(ns.size() == 2);
    CHECK(ns[0] == ints(q, {-1, 1, 0}));
    CHECK(ns[1] == ints(q, {-1, 0, 1}));
    const Matrix m = Matrix::from_rows(q, {ints(q, {0, 2, 4}), ints(q, {0, 1, 2}), ints(q, {1, 0, 1})});
    const RrefResult r = rref(m);
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});

    RowReducer rr(q, 3);
    CHECK(rr.add(ints(q, {0, 2, 4})));
    CHECK(!rr.add(ints(q, {0, 1, 2})));
    CHECK(rr.add(ints(q, {1, 0, 1})));
    CHECK(rr.rref().reduced == Matrix::from_rows(q, {ints(q, {1, 0, 1}), ints(q, {0, 1, 2})}));
    CHECK(rr.nullspace() == nullspace(m));
    CHECK(rr.in_span(ints(q, {2, 3, 8})));
    CHECK(!rr.in_span(ints(q, {0, 0, 1})));
}

TEST_CASE("determinants") {
    const Field q;
    CHECK(determinant(exchange_Z(1, q)) == q.from_int(-1));
    CHECK(determinant(Matrix::from_rows(q, {ints(q, {1, 2}), ints(q, {3, 4})})) == q.from_int(-2));
    CHECK(determinant(Matrix::from_rows(q, {ints(q, {1, 2}), ints(q, {2, 4})})).is_zero());
    CHECK_THROWS_AS(inverse(Matrix::from_rows(q, {ints(q, {1, 2}), ints(q, {2, 4})})), Singular);
    const Field fq = Field::rational_functions(q, "q");
    const Element x = fq.variable();
    const Matrix v = Matrix::from_rows(fq, {{fq.one(), x}, {fq.one(), x * x}});
    CHECK(determinant(v) == x * x - x);
}

TEST_CASE("random invertible matrices over several fields") {
    std::mt19937 rng(5);
    for (const Field& f : {Field::rationals(), Field::prime(101), Field::prime(3)}) {
        for (int n = 0; n < 20; ++n) {
            const std::size_t k = 1 + n % 6;
            const Matrix m = random_matrix(f, k, k, rng);
            if (determinant(m).is_zero()) {
                CHECK_THROWS_AS(inverse(m), Singular);
                continue;
            }
            CHECK(m * inverse(m) == Matrix::identity(f, k));
            CHECK(inverse(m) * m == Matrix::identity(f, k));
            CHECK(determinant(m) * determinant(inverse(m)) == f.one());
        }
    }
}

TEST_CASE("rank plus nullity equals columns") {
    std::mt19937 rng(9);
    const Field f = Field::prime(5);
    for (int n = 0; n < 30; ++n) {
        const Matrix m = random_matrix(f, 1 + n % 5, 1 + (n * 7) % 6, rng, 1);
        const auto ns = nullspace(m);
        CHECK(rank(m) + ns.size() == m.cols());
        for (const auto& v : ns) {
            const Vector mv = m * v;
            for (const auto& e : mv) CHECK(e.is_zero());
        }
    }
}

TEST_CASE("upper Toeplitz matrices are closed under products") {
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> dist(-4, 4);
    const Field q;
    for (std::size_t d = 0; d <= 8; ++d) {
        Vector a, b;
        for (std::size_t i = 0; i <= d; ++i) {
            a.push_back(q.from_int(dist(rng)));
            b.push_back(q.from_int(dist(rng)));
        }
        CHECK(is_upper_toeplitz(toeplitz_upper(a) * toeplitz_upper(b)));
    }
}

TEST_CASE("solve_unique and subspaces") {
    const Field q;
    const Matrix basis = Matrix::from_rows(q, {ints(q, {1, 0}), ints(q, {1, 1}), ints(q, {0, 1})});
    const auto x = solve_unique(basis, ints(q, {2, 5, 3}));
    REQUIRE(x);
    CHECK(*x == ints(q, {2, 3}));
    CHECK(!solve_unique(basis, ints(q, {1, 0, 0})));
    const Matrix dep = Matrix::from_rows(q, {ints(q, {1, 2}), ints(q, {1, 2})});
    CHECK_THROWS_AS(solve_unique(dep, ints(q, {1, 1})), DependentBasis);

    const Matrix i2 = Matrix::identity(q, 2);
    const Matrix e = elementary_F(0, 1, q);
    CHECK(same_subspace({i2, e}, {e, i2 - e}));
    CHECK(!same_subspace({i2}, {e}));
    CHECK(span_dimension({i2, e, i2 - e}) == 2);
    CHECK(proportional(i2, i2 * q.from_int(-3)));
    CHECK(!proportional(i2, e));
    CHECK(normalize_first_nonzero(i2 * q.from_int(7)) == i2);
    CHECK_THROWS_AS(VectorSpaceBasis{dep}, DependentBasis);
}
