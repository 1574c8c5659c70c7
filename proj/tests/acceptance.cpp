// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "fretchet/adjoint.hpp"
#include "fretchet/corpus.hpp"
#include "fretchet/diff.hpp"
#include "fretchet/errors.hpp"
#include "fretchet/nn.hpp"
#include "fretchet/oracle.hpp"
#include "fretchet/simplify.hpp"
#include "support.hpp"

using namespace fretchet;

namespace {

// Tolerances and limits, fixed here so a run cannot loosen them.
constexpr double kGradAbs = 1e-10;
constexpr double kFdRel = 1e-5;
constexpr double kFdStep = 1e-4;
constexpr double kExact = 1e-12;
constexpr double kInnerLaw = 1e-10;
constexpr double kSwellFactor = 1.1;
constexpr double kNnRel = 1e-4;
constexpr double kLossRatio = 0.1;
constexpr std::size_t kFunCorpus = 220;
constexpr std::size_t kLinCorpus = 220;

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = limit_s <= 0 || secs < limit_s;
    const bool ok = o.ok && in_time;
    if (!ok) ++failures;
    std::printf("%s %d %s: %s [%.2fs%s]\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
                in_time ? "" : " over limit");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

/// Largest |a - b| / (1 + |b|) over entries.
double rel_error(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return INFINITY;
    double worst = 0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]) / (1 + std::abs(b.entries[i])));
    return worst;
}

/// Compared in coordinates: the norm of a formal tensor difference squares its
/// rounding error away into sqrt(eps).
double coord_diff(const Vector& a, const Vector& b) {
    auto x = to_coords(a), y = to_coords(b);
    if (x.size() != y.size()) return INFINITY;
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

std::vector<FunCase> fun_corpus() {
    auto cases = named_fun_cases(1);
    auto random = random_fun_cases(kFunCorpus, 2026, 5, 6);
    cases.insert(cases.end(), random.begin(), random.end());
    return cases;
}

Outcome criterion1() {
    Rng rng(1);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const double x1 = uniform(rng, 0.1, 10), x2 = uniform(rng, -5, 5);
        auto g = to_coords(gradient(b2_term(), Vector::reals({x1, x2})));
        auto e = ref::b2_gradient(x1, x2);
        worst = std::max({worst, std::abs(g[0] - e[0]), std::abs(g[1] - e[1])});
    }
    return {worst <= kGradAbs, fmt("20 points, max abs error %.3g", worst)};
}

Outcome criterion2(const std::vector<FunCase>& corpus) {
    double worst = 0;
    std::size_t bad = 0;
    std::string first;
    for (const auto& c : corpus) {
        Matrix exact = lower_matrix(affine(c.term, c.point).deriv, c.point.space());
        const double err = rel_error(exact, fd_jacobian(c.term, c.point, kFdStep));
        worst = std::max(worst, err);
        if (err > kFdRel && bad++ == 0) first = c.name;
    }
    Outcome o{bad == 0, fmt("%g terms, max rel error %.3g", static_cast<double>(corpus.size()), worst)};
    if (bad) o.detail += ", " + std::to_string(bad) + " over tolerance, first " + first;
    return o;
}

Outcome criterion3() {
    auto cases = random_lin_cases(kLinCorpus, 2027);
    double worst_t = 0, worst_law = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        Matrix m = lower_matrix(c.term, c.domain);
        worst_t = std::max(worst_t, max_abs_diff(lower_matrix(adjoint(c.term, c.domain)), transpose(m)));
        worst_law = std::max(worst_law, check_adjoint_law(c.term, 100, kInnerLaw, 100 + i, c.domain).max_error);
    }
    return {worst_t <= kExact && worst_law <= kInnerLaw,
            fmt("%g terms, transpose error %.3g, inner law error %.3g", static_cast<double>(cases.size()), worst_t,
                worst_law)};
}

Outcome criterion4(const std::vector<FunCase>& corpus) {
    double worst = 0;
    for (const auto& c : corpus) {
        Matrix fwd = lower_matrix(affine(c.term, c.point).deriv, c.point.space());
        Matrix rev = lower_matrix(affine_adj(c.term, c.point).adj_deriv, fun_codomain(c.term, c.point.space()));
        worst = std::max(worst, max_abs_diff(rev, transpose(fwd)));
    }
    return {worst <= kExact, fmt("%g terms, max abs error %.3g", static_cast<double>(corpus.size()), worst)};
}

Outcome criterion5() {
    auto c = count_griewank(make_griewank(7, 5));
    auto c14 = count_griewank(make_griewank(14, 5));
    const bool ok = c.dense_apply == 35 && c.decomposed_apply == 6 && c.build == 5 && c14.term_size == c.term_size;
    char buf[200];
    std::snprintf(buf, sizeof buf, "dense %llu, decomposed %llu, build %llu, term_size m=7 %zu m=14 %zu",
                  static_cast<unsigned long long>(c.dense_apply), static_cast<unsigned long long>(c.decomposed_apply),
                  static_cast<unsigned long long>(c.build), c.term_size, c14.term_size);
    return {ok, buf};
}

/// b2 . block^(k-1), block = <exp . sin . (proj 1 * proj 2), b2>, so every stage
/// feeds a positive first coordinate into ln.
FunTerm swell_chain(std::size_t k) {
    const FunTerm p1 = f_lin(proj(1)), p2 = f_lin(proj(2));
    const FunTerm block = ffanout({f_comp({f_prim(prim_exp()), f_prim(prim_sin()), fmul(p1, p2)}), b2_term()});
    std::vector<FunTerm> chain{b2_term()};
    for (std::size_t i = 1; i < k; ++i) chain.push_back(block);
    return f_comp(chain);
}

Outcome criterion6() {
    const Vector x = Vector::reals({0.7, 0.3});
    auto ratio = [&](std::size_t k) {
        FunTerm t = swell_chain(k);
        return static_cast<double>(term_size(affine(t, x).deriv)) / static_cast<double>(term_size(t));
    };
    const double r5 = ratio(5), r20 = ratio(20);
    return {r20 <= kSwellFactor * r5, fmt("ratio k=5 %.4f, k=20 %.4f", r5, r20)};
}

Outcome criterion7() {
    const NetworkSpec small{{2, 3, 1}};
    const FunTerm net = build_network(small);
    Rng rng(7);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        Params p = init_params(small, 1000 + i);
        for (auto& b : p.biases) b = random_vector(b.space(), rng, -0.5, 0.5);
        Vector point =
            params_point(small, random_vector(Space::real(2), rng), p, random_vector(Space::real(1), rng));
        auto g = to_coords(nn_gradient(small, point));
        Matrix row(1, g.size());
        row.entries = g;
        worst = std::max(worst, rel_error(row, fd_jacobian(net, point, kFdStep)));
    }
    const NetworkSpec spec{{2, 4, 1}};
    auto data = load_csv(std::string(FRETCHET_DATA_DIR) + "/toy_regression.csv", 2, 1);
    auto result = train(spec, data, 0.1, 200, 42);
    const double first = result.loss_trace.front(), last = result.loss_trace.back();
    return {worst <= kNnRel && last < kLossRatio * first,
            fmt("grad rel error %.3g; loss %.4g -> %.4g", worst, first, last)};
}

Outcome criterion8(const std::vector<FunCase>& corpus) {
    Outcome o;
    std::size_t rules_ok = 0;
    auto reports = rule_soundness_suite(50, 1, kExact);
    for (const auto& r : reports) {
        if (r.passed() && r.max_error <= kExact) {
            ++rules_ok;
        } else {
            o.ok = false;
            o.detail += r.name + " failed; ";
        }
    }
    std::vector<std::pair<LinTerm, Space>> terms;
    for (const auto& c : random_lin_cases(kLinCorpus, 2027)) terms.emplace_back(c.term, c.domain);
    for (const auto& c : corpus) terms.emplace_back(affine(c.term, c.point).deriv, c.point.space());
    std::size_t grew = 0, unstable = 0, unsound = 0, exhausted = 0;
    for (const auto& [f, d] : terms) {
        SimplifyStats stats;
        LinTerm s = simplify(f, d, &stats);
        if (stats.budget_exhausted) ++exhausted;
        if (term_size(s) > term_size(f)) ++grew;
        if (!structurally_equal(simplify(s, d), s)) ++unstable;
        if (!approx_equal_rel(lower_matrix(s, d), lower_matrix(f, d), kExact)) ++unsound;
    }
    o.ok = o.ok && grew == 0 && unstable == 0 && unsound == 0;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu/%zu rules; %zu terms: grew %zu, not idempotent %zu, unsound %zu, budget hit %zu",
                  rules_ok, reports.size(), terms.size(), grew, unstable, unsound, exhausted);
    o.detail += buf;
    return o;
}

Outcome criterion9() {
    const UnitaryKind kinds[] = {UnitaryKind::Bra,    UnitaryKind::IBra,     UnitaryKind::Ket,
                                 UnitaryKind::IKet,   UnitaryKind::TensorTranspose, UnitaryKind::Assoc,
                                 UnitaryKind::AssocInv, UnitaryKind::Distrib,  UnitaryKind::DistribInv,
                                 UnitaryKind::Zip,    UnitaryKind::Unzip};
    Rng rng(9);
    double iso = 0, cancel = 0, adj = 0;
    for (UnitaryKind k : kinds) {
        for (int i = 0; i < 100; ++i) {
            const Space d = fixtures::unitary_domain(rng, k);
            const LinTerm u = unitary(k, d);
            const Space cod = unitary_codomain(k, d);
            const LinTerm inv = unitary(inverse(k), cod);
            const Vector v = random_vector(d, rng);
            const Vector w = random_vector(cod, rng);
            const Vector uv = apply(u, v);
            iso = std::max(iso, std::abs(norm(uv) - norm(v)));
            cancel = std::max(cancel, coord_diff(apply(inv, uv), v));
            cancel = std::max(cancel, coord_diff(apply(u, apply(inv, w)), w));
            adj = std::max(adj, coord_diff(apply(adjoint(u), w), apply(inv, w)));
        }
    }
    return {iso <= kExact && cancel <= kExact && adj <= kExact,
            fmt("11 unitaries x 100 vectors: isometry %.3g, cancellation %.3g, adjoint vs inverse %.3g", iso, cancel,
                adj)};
}

}  // namespace

int main() {
    const auto corpus = fun_corpus();
    run(1, "gradient closed form", 1.0, criterion1);
    run(2, "derivative vs finite differences", 30.0, [&] { return criterion2(corpus); });
    run(3, "adjoint is transpose", 30.0, criterion3);
    run(4, "reverse equals adjoint of forward", 0, [&] { return criterion4(corpus); });
    run(5, "rank-one multiplication counts", 0, criterion5);
    run(6, "no expression swell", 0, criterion6);
    run(7, "network gradient and training", 10.0, criterion7);
    run(8, "simplifier soundness", 0, [&] { return criterion8(corpus); });
    run(9, "unitaries", 0, criterion9);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
