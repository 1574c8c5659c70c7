#include <gtest/gtest.h>

#include <cmath>

#include "fretchet/adjoint.hpp"
#include "fretchet/corpus.hpp"
#include "fretchet/errors.hpp"
#include "fretchet/oracle.hpp"
#include "fretchet/random.hpp"
#include "support.hpp"

using namespace fretchet;

TEST(Lower, Identity) {
    Matrix m = lower_matrix(id_map(Space::real(2)));
    EXPECT_EQ(m.rows, 2u);
    EXPECT_EQ(m.entries, (std::vector<double>{1, 0, 0, 1}));
}

TEST(Lower, ScanIsLowerTriangularOnes) {
    Matrix m = lower_matrix(red(Relation::scan(3), Space::scalar()));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), j <= i ? 1.0 : 0.0);
}

TEST(Lower, Scale) {
    EXPECT_EQ(lower_matrix(scale_map(2, Space::scalar())).entries, (std::vector<double>{2}));
}

TEST(Lower, OpenTermNeedsDomain) {
    EXPECT_THROW(lower_matrix(proj(1)), TypeError);
    Matrix m = lower_matrix(proj(1), Space::tuple({Space::real(2), Space::scalar()}));
    EXPECT_EQ(m.rows, 2u);
    EXPECT_EQ(m.cols, 3u);
}

TEST(Lower, MatchesApplyOnRandomVectors) {
    for (const auto& c : random_lin_cases(100, 21)) {
        Matrix m = lower_matrix(c.term, c.domain);
        Rng rng(c.domain.dim());
        Vector v = random_vector(c.domain, rng);
        auto lhs = mat_vec(m, to_coords(v));
        auto rhs = to_coords(apply(c.term, v));
        ASSERT_EQ(lhs.size(), rhs.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_NEAR(lhs[i], rhs[i], 1e-12) << c.name;
    }
}

TEST(Fd, SinAtZero) {
    Matrix m = fd_jacobian(f_prim(prim_sin()), Vector::scalar(0), 1e-4);
    EXPECT_NEAR(m(0, 0), 1.0, 1e-8);
}

TEST(Fd, B2) {
    Matrix m = fd_jacobian(b2_term(), Vector::reals({2, 5}), 1e-4);
    auto g = ref::b2_gradient(2, 5);
    EXPECT_NEAR(m(0, 0), g[0], 1e-7);
    EXPECT_NEAR(m(0, 1), g[1], 1e-7);
}

TEST(Fd, LinearTermsAreTheirOwnDerivative) {
    for (const auto& c : random_lin_cases(50, 22, 3, 5)) {
        Rng rng(1);
        Vector v = random_vector(c.domain, rng);
        EXPECT_TRUE(approx_equal_abs(fd_jacobian(f_lin(c.term), v, 1e-4), lower_matrix(c.term, c.domain), 1e-8))
            << c.name;
    }
}

TEST(Fd, AgreesWithReferenceDifferences) {
    // The library uses two-point differences; the reference uses five points.
    for (const auto& c : random_fun_cases(40, 23, 3, 4)) {
        const Space d = c.point.space();
        auto f = [&](const ref::Vec& x) { return to_coords(eval_fun(c.term, from_coords(d, x))); };
        ref::Mat r = ref::jacobian(f, to_coords(c.point));
        Matrix m = fd_jacobian(c.term, c.point, 1e-4);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                EXPECT_LE(std::abs(m(i, j) - r[i][j]), 1e-5 * (1 + std::abs(r[i][j]))) << c.name;
    }
}

TEST(Fd, DomainErrorNearSingularity) {
    EXPECT_THROW(fd_jacobian(f_prim(prim_ln()), Vector::scalar(5e-5), 1e-4), DomainError);
}

TEST(Matrices, ToleranceHelpers) {
    Matrix a(1, 2), b(1, 2);
    a(0, 0) = 1.0;
    b(0, 0) = 1.0 + 1e-9;
    EXPECT_NEAR(max_abs_diff(a, b), 1e-9, 1e-15);
    EXPECT_TRUE(approx_equal_rel(a, b, 1e-8));
    EXPECT_FALSE(approx_equal_abs(a, b, 1e-10));
    EXPECT_TRUE(std::isinf(max_abs_diff(a, Matrix(2, 1))));
}

TEST(Properties, TransposeLaw) {
    for (const auto& c : random_lin_cases(150, 24)) {
        Matrix m = lower_matrix(c.term, c.domain);
        Matrix a = lower_matrix(adjoint(c.term, c.domain));
        EXPECT_LE(max_abs_diff(a, transpose(m)), 1e-12) << c.name;
    }
}

TEST(Griewank, CountsForSevenByFive) {
    auto counts = count_griewank(make_griewank(7, 5));
    EXPECT_EQ(counts.dense_apply, 35u);
    EXPECT_EQ(counts.decomposed_apply, 6u);
    EXPECT_EQ(counts.build, 5u);
}

TEST(Griewank, CountsFollowTheShape) {
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 2}, {10, 4}, {1, 9}}) {
        auto counts = count_griewank(make_griewank(m, n, 3));
        EXPECT_EQ(counts.dense_apply, m * n);
        EXPECT_EQ(counts.decomposed_apply, n + 1);
        EXPECT_EQ(counts.build, n);
    }
}

TEST(Griewank, TermSizeDoesNotGrowWithRows) {
    EXPECT_EQ(count_griewank(make_griewank(14, 5)).term_size, count_griewank(make_griewank(7, 5)).term_size);
}

TEST(Griewank, DecomposedDerivativeIsTheJacobian) {
    Griewank g = make_griewank(7, 5);
    Matrix m = lower_matrix(g.decomposed_derivative(), g.x0.space());
    // J = cos(a . x0) b a^T
    auto a = to_coords(g.a), b = to_coords(g.b);
    const double c = std::cos(ref::dot(a, to_coords(g.x0)));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(m(i, j), c * b[i] * a[j], 1e-14);
    EXPECT_TRUE(approx_equal_rel(fd_jacobian(g.term(), g.x0), m, 1e-5));
}
