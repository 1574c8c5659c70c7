#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fretchet/adjoint.hpp"
#include "fretchet/diff.hpp"
#include "fretchet/nn.hpp"
#include "fretchet/oracle.hpp"
#include "fretchet/random.hpp"
#include "support.hpp"

using namespace fretchet;

namespace {

const std::string kToyData = std::string(FRETCHET_DATA_DIR) + "/toy_regression.csv";

/// Dense forward pass on plain arrays: h(W x + b) layer by layer.
ref::Vec dense_forward(const NetworkSpec& spec, const Params& p, ref::Vec x) {
    for (std::size_t i = 0; i < spec.layers(); ++i) {
        const auto w = to_coords(p.weights[i]);
        const auto b = to_coords(p.biases[i]);
        const std::size_t rows = spec.dims[i + 1], cols = spec.dims[i];
        ref::Vec out(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            double s = b[r];
            for (std::size_t c = 0; c < cols; ++c) s += w[r * cols + c] * x[c];
            out[r] = spec.activation.value(s);
        }
        x = out;
    }
    return x;
}

Params random_params(const NetworkSpec& spec, Rng& rng) {
    Params p = init_params(spec, rng());
    for (auto& b : p.biases) b = random_vector(b.space(), rng);
    return p;
}

}  // namespace

TEST(Layer, TanhOfZeroIsZero) {
    NetworkSpec spec{{2, 1}};
    Params p;
    p.weights = {Vector::pure(Vector::reals({1}), Vector::reals({1, 1}))};
    p.biases = {Vector::reals({0})};
    Vector point = params_point(spec, Vector::reals({0, 0}), p, Vector::reals({0.3}));
    Vector out = eval_fun(build_layer(spec, 1), point);
    EXPECT_EQ(to_coords(out.item(0)), (std::vector<double>{0.0}));
    EXPECT_EQ(to_coords(out.item(1)), (std::vector<double>{0.3}));
}

TEST(Layer, IdentityActivationWithIdentityWeights) {
    NetworkSpec spec{{3, 3}, prim_pow(1)};
    Params p;
    std::vector<TensorTerm> terms;
    for (std::size_t i = 0; i < 3; ++i) {
        Vector e = basis(Space::real(3), i);
        terms.push_back({1.0, e, e});
    }
    p.weights = {Vector::tensor(Space::real(3), Space::real(3), terms)};
    p.biases = {Vector::zero(Space::real(3))};
    Vector x = Vector::reals({0.5, -2, 7});
    Vector out = eval_fun(build_layer(spec, 1), params_point(spec, x, p, Vector::reals({0, 0, 0})));
    EXPECT_EQ(to_coords(out.item(0)), to_coords(x));
}

TEST(Layer, MatchesDenseFormula) {
    Rng rng(31);
    NetworkSpec spec{{3, 4, 2}};
    for (int t = 0; t < 10; ++t) {
        Params p = random_params(spec, rng);
        Vector x = random_vector(Space::real(3), rng);
        Vector y = random_vector(Space::real(2), rng);
        Vector point = params_point(spec, x, p, y);
        Vector g1 = eval_fun(build_layer(spec, 1), point);
        NetworkSpec first{{3, 4}};
        Params p1{{p.weights[0]}, {p.biases[0]}};
        auto expected = dense_forward(first, p1, to_coords(x));
        auto got = to_coords(g1.item(0));
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expected[i], 1e-14);
        // later parameters and y pass through untouched
        EXPECT_TRUE(approx_equal(g1.item(1), p.weights[1], 0.0));
        EXPECT_TRUE(approx_equal(g1.item(3), y, 0.0));
        auto net = to_coords(nn_forward(spec, p, x));
        auto dense = dense_forward(spec, p, to_coords(x));
        for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(net[i], dense[i], 1e-14);
    }
}

TEST(Loss, Examples) {
    FunTerm l = build_loss();
    EXPECT_EQ(eval_fun(l, Vector::tuple({Vector::reals({1, 2}), Vector::reals({0, 0})})).value(), 5.0);
    Vector v = Vector::reals({0.3, -4});
    EXPECT_EQ(eval_fun(l, Vector::tuple({v, v})).value(), 0.0);
}

TEST(Network, OneLayerIsLossOfActivation) {
    Rng rng(32);
    NetworkSpec spec{{2, 1}};
    Params p = random_params(spec, rng);
    Vector x = Vector::reals({0.4, -0.9}), y = Vector::reals({0.25});
    const double v = dense_forward(spec, p, to_coords(x))[0];
    EXPECT_NEAR(eval_fun(build_network(spec), params_point(spec, x, p, y)).value(), (v - 0.25) * (v - 0.25), 1e-15);
}

TEST(Gradient, TargetBlockIsMinusTwiceResidual) {
    Rng rng(33);
    NetworkSpec spec{{2, 3, 2}};
    for (int t = 0; t < 5; ++t) {
        Params p = random_params(spec, rng);
        Vector x = random_vector(Space::real(2), rng), y = random_vector(Space::real(2), rng);
        Vector g = nn_gradient(spec, params_point(spec, x, p, y));
        auto v = dense_forward(spec, p, to_coords(x));
        auto gy = to_coords(g.item(g.items().size() - 1));
        auto yc = to_coords(y);
        for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(gy[i], -2 * (v[i] - yc[i]), 1e-14);
    }
}

TEST(Gradient, ZeroPointHasZeroTargetGradient) {
    NetworkSpec spec{{2, 3, 1}};
    Params p = init_params(spec, 4);
    Vector g = nn_gradient(spec, params_point(spec, Vector::reals({0, 0}), p, Vector::reals({0})));
    for (const auto& block : g.items())
        for (double c : to_coords(block)) EXPECT_EQ(c, 0.0);
}

TEST(Gradient, MatchesFiniteDifferences) {
    Rng rng(34);
    NetworkSpec spec{{2, 3, 1}};
    FunTerm n = build_network(spec);
    for (int t = 0; t < 10; ++t) {
        Params p = random_params(spec, rng);
        Vector point = params_point(spec, random_vector(Space::real(2), rng), p, random_vector(Space::real(1), rng));
        const Space d = point.space();
        auto f = [&](const ref::Vec& c) { return to_coords(eval_fun(n, from_coords(d, c))); };
        ref::Mat r = ref::jacobian(f, to_coords(point));
        auto g = to_coords(nn_gradient(spec, point));
        ASSERT_EQ(g.size(), r[0].size());
        for (std::size_t j = 0; j < g.size(); ++j) EXPECT_LE(std::abs(g[j] - r[0][j]), 1e-6 * (1 + std::abs(r[0][j])));
    }
}

TEST(Properties, BackpropEquivalence) {
    Rng rng(35);
    NetworkSpec spec{{3, 4, 2}};
    FunTerm n = build_network(spec);
    for (int t = 0; t < 10; ++t) {
        Params p = random_params(spec, rng);
        Vector point = params_point(spec, random_vector(Space::real(3), rng), p, random_vector(Space::real(2), rng));
        Vector a = nn_gradient(spec, point);
        Vector b = apply(adjoint(affine(n, point).deriv, point.space()), Vector::scalar(1));
        Vector c = vjp(n, point, Vector::scalar(1));
        EXPECT_TRUE(approx_equal(a, b, 1e-10));
        EXPECT_TRUE(approx_equal(a, c, 1e-10));
    }
}

TEST(Properties, FormalAndDenseWeightsAgree) {
    Rng rng(36);
    NetworkSpec spec{{3, 4, 2}};
    for (int t = 0; t < 10; ++t) {
        Params formal = random_params(spec, rng);
        for (std::size_t i = 0; i < spec.layers(); ++i) {
            // a sum of several rank-1 terms, not in row form
            const Space out = Space::real(spec.dims[i + 1]), in = Space::real(spec.dims[i]);
            std::vector<TensorTerm> terms;
            for (int k = 0; k < 5; ++k)
                terms.push_back({uniform(rng, -1, 1), random_vector(out, rng), random_vector(in, rng)});
            formal.weights[i] = Vector::tensor(out, in, terms);
        }
        Params dense = formal;
        for (auto& w : dense.weights) w = from_coords(w.space(), to_coords(w));
        Vector x = random_vector(Space::real(3), rng), y = random_vector(Space::real(2), rng);
        EXPECT_TRUE(approx_equal(nn_forward(spec, formal, x), nn_forward(spec, dense, x), 1e-12));
        const double lf = eval_fun(build_network(spec), params_point(spec, x, formal, y)).value();
        const double ld = eval_fun(build_network(spec), params_point(spec, x, dense, y)).value();
        EXPECT_NEAR(lf, ld, 1e-12);
    }
}

TEST(Training, ZeroRateKeepsLossConstant) {
    NetworkSpec spec{{2, 4, 1}};
    auto data = load_csv(kToyData, 2, 1);
    auto result = train(spec, data, 0.0, 20, 42);
    ASSERT_EQ(result.loss_trace.size(), 21u);
    for (double l : result.loss_trace) EXPECT_EQ(l, result.loss_trace.front());
}

TEST(Training, SingleStepIsGradientStep) {
    NetworkSpec spec{{2, 3, 1}};
    auto data = load_csv(kToyData, 2, 1);
    const double lr = 0.1;
    Params p = init_params(spec, 42);
    const std::size_t blocks = 2 * spec.layers();
    std::vector<std::vector<double>> mean(blocks);
    for (const auto& s : data) {
        Vector g = nn_gradient(spec, params_point(spec, Vector::reals(s.x), p, Vector::reals(s.y)));
        for (std::size_t b = 0; b < blocks; ++b) {
            auto c = to_coords(g.item(b + 1));
            mean[b].resize(c.size());
            for (std::size_t j = 0; j < c.size(); ++j) mean[b][j] += c[j] / static_cast<double>(data.size());
        }
    }
    Params after = train(spec, data, lr, 1, 42).params;
    for (std::size_t i = 0; i < spec.layers(); ++i) {
        auto w0 = to_coords(p.weights[i]), w1 = to_coords(after.weights[i]);
        auto b0 = to_coords(p.biases[i]), b1 = to_coords(after.biases[i]);
        for (std::size_t j = 0; j < w0.size(); ++j) EXPECT_NEAR(w1[j], w0[j] - lr * mean[2 * i][j], 1e-14);
        for (std::size_t j = 0; j < b0.size(); ++j) EXPECT_NEAR(b1[j], b0[j] - lr * mean[2 * i + 1][j], 1e-14);
    }
}

TEST(Training, ToyRegressionConverges) {
    NetworkSpec spec{{2, 4, 1}};
    auto result = train(spec, load_csv(kToyData, 2, 1), 0.1, 200, 42);
    ASSERT_EQ(result.loss_trace.size(), 201u);
    EXPECT_LT(result.loss_trace.back(), 0.1 * result.loss_trace.front());
}

TEST(Training, Deterministic) {
    NetworkSpec spec{{2, 4, 1}};
    auto data = load_csv(kToyData, 2, 1);
    EXPECT_EQ(train(spec, data, 0.1, 15, 7).loss_trace, train(spec, data, 0.1, 15, 7).loss_trace);
}

TEST(Csv, ReadsHeaderAndRows) {
    auto data = load_csv(kToyData, 2, 1);
    ASSERT_EQ(data.size(), 8u);
    EXPECT_EQ(data[0].x, (std::vector<double>{-1.0, -0.5}));
    EXPECT_EQ(data[0].y, (std::vector<double>{-0.6404}));
}

TEST(Csv, RejectsShortRows) {
    const auto path = std::filesystem::temp_directory_path() / "fretchet_short.csv";
    std::ofstream(path) << "1,2\n";
    EXPECT_ANY_THROW(load_csv(path.string(), 2, 1));
    std::filesystem::remove(path);
}
