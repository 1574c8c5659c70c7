#include <gtest/gtest.h>

#include <cmath>

#include "fretchet/adjoint.hpp"
#include "fretchet/corpus.hpp"
#include "fretchet/diff.hpp"
#include "fretchet/errors.hpp"
#include "fretchet/oracle.hpp"
#include "fretchet/random.hpp"
#include "support.hpp"

using namespace fretchet;

namespace {

Matrix product(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j)
            for (std::size_t k = 0; k < a.cols; ++k) out(i, j) += a(i, k) * b(k, j);
    return out;
}

Matrix from_ref(const ref::Mat& m) {
    Matrix out(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < out.rows; ++i)
        for (std::size_t j = 0; j < out.cols; ++j) out(i, j) = m[i][j];
    return out;
}

/// Reference Jacobian of t at v, independent of fd_jacobian.
Matrix ref_jacobian(const FunTerm& t, const Vector& v) {
    const Space d = v.space();
    auto f = [&](const ref::Vec& x) { return to_coords(eval_fun(t, from_coords(d, x))); };
    return from_ref(ref::jacobian(f, to_coords(v)));
}

}  // namespace

TEST(Affine, B2GradientClosedForm) {
    for (auto [x1, x2] : {std::pair{2.0, 5.0}, {0.3, -1.0}, {7.5, 2.2}}) {
        auto g = to_coords(gradient(b2_term(), Vector::reals({x1, x2})));
        auto expected = ref::b2_gradient(x1, x2);
        EXPECT_NEAR(g[0], expected[0], 1e-13);
        EXPECT_NEAR(g[1], expected[1], 1e-13);
    }
}

TEST(Affine, ValueMatchesEval) {
    auto r = affine(b2_term(), Vector::reals({2, 5}));
    EXPECT_EQ(r.value.value(), eval_fun(b2_term(), Vector::reals({2, 5})).value());
    auto a = affine_adj(b2_term(), Vector::reals({2, 5}));
    EXPECT_EQ(a.value.value(), r.value.value());
}

TEST(Affine, PrimitiveDerivatives) {
    const double x = 0.7;
    auto at = [&](PrimOp op) { return lower_matrix(affine(f_prim(op), Vector::scalar(x)).deriv, Space::scalar())(0, 0); };
    EXPECT_NEAR(at(prim_sin()), std::cos(x), 1e-15);
    EXPECT_NEAR(at(prim_cos()), -std::sin(x), 1e-15);
    EXPECT_NEAR(at(prim_exp()), std::exp(x), 1e-15);
    EXPECT_NEAR(at(prim_ln()), 1 / x, 1e-15);
    EXPECT_NEAR(at(prim_pow(3)), 3 * x * x, 1e-15);
    EXPECT_NEAR(at(prim_pow(-1)), -1 / (x * x), 1e-15);
}

TEST(Affine, LinearTermIsItsOwnDerivative) {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        Space d = random_space(rng, 4);
        LinTerm h = random_linterm(rng, d, 3);
        Vector v = random_vector(d, rng);
        auto r = affine(f_lin(h), v);
        EXPECT_LE(max_abs_diff(lower_matrix(r.deriv, d), lower_matrix(h, d)), 0.0);
    }
}

TEST(Affine, ConstHasZeroDerivative) {
    auto r = affine(f_const(Vector::reals({1, 2})), Vector::reals({3, 4, 5}));
    Matrix m = lower_matrix(r.deriv, Space::real(3));
    EXPECT_EQ(m.rows, 2u);
    for (double e : m.entries) EXPECT_EQ(e, 0.0);
}

TEST(Affine, BilinearProductRule) {
    // d(u . v) = du . v + u . dv
    Vector u = Vector::reals({1, 2, 3}), v = Vector::reals({-1, 0.5, 2});
    Vector point = Vector::tuple({u, v});
    Matrix m = lower_matrix(affine(f_bilin(BilinKind::Inner), point).deriv, point.space());
    const ref::Vec expected{-1, 0.5, 2, 1, 2, 3};
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(m(0, j), expected[j]);
}

TEST(Affine, ParRuleIsBlockDiagonal) {
    FunTerm f = f_prim(prim_sin()), g = f_prim(prim_exp());
    Vector point = Vector::tuple({Vector::scalar(0.4), Vector::scalar(-0.3)});
    Matrix m = lower_matrix(affine(f_par({f, g}), point).deriv, point.space());
    EXPECT_NEAR(m(0, 0), std::cos(0.4), 1e-15);
    EXPECT_EQ(m(0, 1), 0.0);
    EXPECT_EQ(m(1, 0), 0.0);
    EXPECT_NEAR(m(1, 1), std::exp(-0.3), 1e-15);
}

TEST(Affine, ChainRule) {
    auto cases = random_fun_cases(40, 77, 3, 4);
    Rng rng(3);
    for (const auto& c : cases) {
        Space mid = fun_codomain(c.term, c.point.space());
        FunTerm g = random_funterm(rng, mid, 2, 4);
        Vector fv = eval_fun(c.term, c.point);
        try {
            if (norm(eval_fun(g, fv)) > 1e6) continue;
        } catch (const DomainError&) {
            continue;
        }
        Matrix whole = lower_matrix(affine(f_comp(g, c.term), c.point).deriv, c.point.space());
        Matrix parts = product(lower_matrix(affine(g, fv).deriv, mid),
                               lower_matrix(affine(c.term, c.point).deriv, c.point.space()));
        EXPECT_TRUE(approx_equal_rel(whole, parts, 1e-12)) << c.name;
    }
}

TEST(Jvp, IdentityReturnsTangent) {
    Vector v = Vector::reals({1, 2}), dv = Vector::reals({-3, 0.5});
    EXPECT_TRUE(approx_equal(jvp(f_lin(id_map(Space::real(2))), v, dv), dv, 0.0));
}

TEST(Vjp, GriewankExample) {
    Griewank g{Vector::reals({1, 2}), Vector::reals({3}), Vector::reals({0, 0}), Vector::reals({0, 0})};
    auto got = to_coords(vjp(g.term(), g.x0, Vector::reals({1})));
    EXPECT_EQ(got, (std::vector<double>{3, 6}));
}

TEST(Gradient, RequiresScalarCodomain) {
    EXPECT_THROW(gradient(f_lin(id_map(Space::real(2))), Vector::reals({1, 2})), TypeError);
}

TEST(Properties, GradientInnerIdentity) {
    Rng rng(11);
    for (double x1 : {0.5, 1.5, 4.0}) {
        Vector v = Vector::reals({x1, uniform(rng, -3, 3)});
        Vector g = gradient(b2_term(), v);
        for (int i = 0; i < 10; ++i) {
            Vector dv = random_vector(v.space(), rng);
            EXPECT_NEAR(inner(g, dv), jvp(b2_term(), v, dv).value(), 1e-9);
        }
    }
    for (const auto& c : random_fun_cases(60, 12)) {
        if (fun_codomain(c.term, c.point.space()).kind() != Space::Kind::Scalar) continue;
        Vector g = gradient(c.term, c.point);
        Vector dv = random_vector(c.point.space(), rng);
        const double lhs = inner(g, dv), rhs = jvp(c.term, c.point, dv).value();
        EXPECT_LE(std::abs(lhs - rhs), 1e-9 * (1 + std::abs(rhs))) << c.name;
    }
}

TEST(Properties, ReverseIsAdjointOfForward) {
    for (const auto& c : random_fun_cases(80, 13)) {
        Matrix fwd = lower_matrix(affine(c.term, c.point).deriv, c.point.space());
        Space cod = fun_codomain(c.term, c.point.space());
        Matrix rev = lower_matrix(affine_adj(c.term, c.point).adj_deriv, cod);
        EXPECT_TRUE(approx_equal_rel(rev, transpose(fwd), 1e-12)) << c.name;
        Matrix sym = lower_matrix(adjoint(affine(c.term, c.point).deriv, c.point.space()), cod);
        EXPECT_TRUE(approx_equal_rel(sym, rev, 1e-12)) << c.name;
    }
}

TEST(Properties, VjpMatchesTransposedJvp) {
    Rng rng(14);
    for (const auto& c : random_fun_cases(60, 15)) {
        Space cod = fun_codomain(c.term, c.point.space());
        Vector dv = random_vector(c.point.space(), rng), dy = random_vector(cod, rng);
        const double lhs = inner(jvp(c.term, c.point, dv), dy);
        const double rhs = inner(dv, vjp(c.term, c.point, dy));
        EXPECT_LE(std::abs(lhs - rhs), 1e-10 * (1 + std::abs(lhs))) << c.name;
    }
}

TEST(Properties, DerivativeMatchesReferenceDifferences) {
    auto cases = named_fun_cases(3);
    auto random = random_fun_cases(60, 16);
    cases.insert(cases.end(), random.begin(), random.end());
    for (const auto& c : cases) {
        Matrix exact = lower_matrix(affine(c.term, c.point).deriv, c.point.space());
        EXPECT_TRUE(approx_equal_rel(exact, ref_jacobian(c.term, c.point), 1e-6)) << c.name;
    }
}
