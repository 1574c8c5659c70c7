#include <gtest/gtest.h>

#include "fretchet/corpus.hpp"
#include "fretchet/diff.hpp"
#include "fretchet/errors.hpp"
#include "fretchet/oracle.hpp"
#include "fretchet/random.hpp"
#include "fretchet/simplify.hpp"

using namespace fretchet;

namespace {

const Space R = Space::scalar();

}  // namespace

TEST(Simplify, DropsIdentity) {
    LinTerm s = red(Relation::scan(3), R);
    EXPECT_TRUE(structurally_equal(simplify(comp(id_map(Space::real(3)), s)), s));
}

TEST(Simplify, FusesScales) {
    EXPECT_TRUE(structurally_equal(simplify(comp(scale_map(2, R), scale_map(3, R))), scale_map(6, R)));
}

TEST(Simplify, FusesReductions) {
    Relation s(IndexSet::seg(1), IndexSet::seg(1), {{0, 0}});
    Relation r(IndexSet::seg(2), IndexSet::seg(1), {{0, 0}, {1, 0}});
    LinTerm out = simplify(comp(red(s, R), red(r, R)));
    ASSERT_EQ(out.kind(), LinTerm::Kind::Red);
    EXPECT_TRUE(structurally_equal(out, red(r, R)));
}

TEST(Simplify, KeepsReductionsWithSeveralWitnesses) {
    // Both middle indices reach (1, 1); the sum counts the path twice.
    Relation r(IndexSet::seg(1), IndexSet::seg(2), {{0, 0}, {0, 1}});
    Relation s(IndexSet::seg(2), IndexSet::seg(1), {{0, 0}, {1, 0}});
    LinTerm f = comp(red(s, R), red(r, R));
    LinTerm out = simplify(f);
    EXPECT_EQ(lower_matrix(out)(0, 0), 2.0);
    EXPECT_EQ(lower_matrix(f)(0, 0), 2.0);
}

TEST(Simplify, CancelsUnitaries) {
    Space t = Space::tensor(Space::real(2), Space::real(3));
    LinTerm f = comp(unitary(UnitaryKind::TensorTranspose, Space::tensor(Space::real(3), Space::real(2))),
                     unitary(UnitaryKind::TensorTranspose, t));
    LinTerm out = simplify(f);
    EXPECT_EQ(out.kind(), LinTerm::Kind::Id);
}

TEST(Simplify, ScaleZeroBecomesZero) {
    EXPECT_EQ(simplify(scale_map(0, Space::real(2))).kind(), LinTerm::Kind::Zero);
    EXPECT_EQ(simplify(scale_map(1, Space::real(2))).kind(), LinTerm::Kind::Id);
}

TEST(Simplify, RejectsIllTypedInput) {
    EXPECT_THROW(simplify(comp(scale_map(2, R), id_map(Space::real(2)))), TypeError);
}

TEST(RuleSuite, EveryRulePasses) {
    auto reports = rule_soundness_suite(50, 1, 1e-12);
    EXPECT_EQ(reports.size(), rewrite_rules().size());
    for (const auto& r : reports) {
        EXPECT_TRUE(r.passed()) << r.name << " fired " << r.fired << "/" << r.instances << " max error " << r.max_error;
        EXPECT_LE(r.max_error, 1e-12) << r.name;
    }
}

TEST(RuleSuite, InstancesAreRedexes) {
    Rng rng(8);
    for (const auto& rule : rewrite_rules()) {
        for (int i = 0; i < 5; ++i) {
            LinTerm t = rule.instance(rng);
            auto out = rule.rewrite(t);
            ASSERT_TRUE(out.has_value()) << rule.name;
            EXPECT_TRUE(identical(infer_types(*out).codomain, infer_types(t).codomain)) << rule.name;
        }
    }
}

TEST(Properties, SoundIdempotentAndNonIncreasing) {
    Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        Space d = random_space(rng, 5);
        LinTerm f = random_linterm(rng, d, 1 + static_cast<int>(i % 6));
        SimplifyStats stats;
        LinTerm s = simplify(f, &stats);
        EXPECT_FALSE(stats.budget_exhausted);
        EXPECT_LE(stats.steps, stats.budget);
        EXPECT_LE(term_size(s), term_size(f));
        EXPECT_LE(max_abs_diff(lower_matrix(s), lower_matrix(f)), 1e-12);
        EXPECT_TRUE(structurally_equal(simplify(s), s));
    }
}

TEST(Properties, SimplifyingDerivativesIsSound) {
    for (const auto& c : random_fun_cases(80, 99)) {
        LinTerm d = affine(c.term, c.point).deriv;
        LinTerm s = simplify(d, c.point.space());
        EXPECT_LE(term_size(s), term_size(d)) << c.name;
        EXPECT_TRUE(approx_equal_rel(lower_matrix(s, c.point.space()), lower_matrix(d, c.point.space()), 1e-12))
            << c.name;
    }
}
