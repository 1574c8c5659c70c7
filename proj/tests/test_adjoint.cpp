#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "fretchet/adjoint.hpp"
#include "fretchet/errors.hpp"
#include "fretchet/oracle.hpp"
#include "support.hpp"

using namespace fretchet;

namespace {

const Space R = Space::scalar();

}  // namespace

TEST(Adjoint, ScanReversesPairs) {
    LinTerm a = adjoint(scan(3, R));
    ASSERT_EQ(a.kind(), LinTerm::Kind::Red);
    EXPECT_EQ(a.get<lin::Red>().relation, Relation::scan(3).transpose());
    // brute force: (adj v)_i = sum over j >= i of v_j
    std::vector<double> expected(3, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) expected[i] += 1.0;
    EXPECT_EQ(to_coords(apply(a, Vector::reals({1, 1, 1}))), expected);
}

TEST(Adjoint, InjIsProj) {
    const Space fam = Space::real(3);
    EXPECT_TRUE(structurally_equal(adjoint(inj(2, fam)), proj(2, fam)));
    EXPECT_TRUE(structurally_equal(adjoint(inj(1)), proj(1)));
    EXPECT_TRUE(structurally_equal(adjoint(proj(2, fam)), inj(2, fam)));
}

TEST(Adjoint, IdAndScale) {
    EXPECT_TRUE(structurally_equal(adjoint(id_map(R)), id_map(R)));
    EXPECT_TRUE(structurally_equal(adjoint(scale_map(4, R)), scale_map(4, R)));
}

TEST(Adjoint, SugarSwaps) {
    EXPECT_TRUE(structurally_equal(adjoint(dup(R)), plus(R)));
    EXPECT_TRUE(structurally_equal(adjoint(plus(R)), dup(R)));
    EXPECT_TRUE(structurally_equal(adjoint(sum_over(IndexSet::seg(3), R)), rep(IndexSet::seg(3), R)));
}

TEST(Adjoint, ZeroSwapsEndpoints) {
    LinTerm a = adjoint(zero_map(Space::real(2), Space::real(3)));
    TypeSig t = infer_types(a);
    EXPECT_TRUE(t.domain == Space::real(3));
    EXPECT_TRUE(t.codomain == Space::real(2));
}

TEST(AdjointLaw, Examples) {
    EXPECT_TRUE(check_adjoint_law(scan(3, R), 100, 1e-10).passed());
    const Space tt = Space::tensor(Space::real(2), Space::real(3));
    EXPECT_TRUE(check_adjoint_law(unitary(UnitaryKind::TensorTranspose, tt), 100, 1e-10).passed());
    auto z = check_adjoint_law(zero_map(Space::real(2), Space::real(3)), 10, 0.0);
    EXPECT_TRUE(z.passed());
    EXPECT_EQ(z.max_error, 0.0);
}

TEST(GradientOfCovector, InnerWithFixedVector) {
    const Vector c = Vector::reals({2, 3});
    const Vector bra_c = Vector::pure(Vector::scalar(1), c);
    LinTerm cov = comp({unitary(UnitaryKind::IBra, Space::tensor(R, R)), contract_l(bra_c, R),
                        unitary(UnitaryKind::Ket, Space::real(2))});
    // oracle: the covector applied to basis vectors
    for (std::size_t i = 0; i < 2; ++i)
        EXPECT_EQ(apply(cov, basis(Space::real(2), i)).value(), ref::dot({2, 3}, to_coords(basis(Space::real(2), i))));
    EXPECT_EQ(to_coords(gradient_of_covector(cov)), (std::vector<double>{2, 3}));
}

TEST(GradientOfCovector, ZeroAndScale) {
    EXPECT_EQ(to_coords(gradient_of_covector(zero_map(Space::real(3), R))), (std::vector<double>{0, 0, 0}));
    EXPECT_EQ(gradient_of_covector(scale_map(5, R)).value(), 5.0);
    EXPECT_THROW(gradient_of_covector(id_map(Space::real(2))), TypeError);
}

TEST(Properties, TransposeLawAndInvolution) {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        Space d = random_space(rng, 6);
        LinTerm f = random_linterm(rng, d, static_cast<int>(uniform_int(rng, 1, 5)));
        Matrix m = lower_matrix(f);
        LinTerm a = adjoint(f);
        EXPECT_LE(max_abs_diff(lower_matrix(a), transpose(m)), 1e-12) << i;
        EXPECT_LE(max_abs_diff(lower_matrix(adjoint(a)), m), 1e-12) << i;
    }
}

TEST(Properties, ContravariantComposition) {
    Rng rng(32);
    for (int i = 0; i < 50; ++i) {
        Space d = random_space(rng, 5);
        LinTerm f = random_linterm(rng, d, 2);
        LinTerm g = random_linterm(rng, infer_types(f).codomain, 2);
        EXPECT_TRUE(structurally_equal(adjoint(comp(g, f)), comp(adjoint(f), adjoint(g))));
    }
}

TEST(Properties, UnitaryAdjointIsInverse) {
    Rng rng(33);
    for (auto k : all_unitaries) {
        for (int i = 0; i < 10; ++i) {
            Space d = fixtures::unitary_domain(rng, k);
            LinTerm u = unitary(k, d);
            LinTerm inv = unitary(inverse(k), infer_types(u).codomain);
            EXPECT_LE(max_abs_diff(lower_matrix(adjoint(u)), lower_matrix(inv)), 1e-12) << unitary_name(k);
        }
    }
}
