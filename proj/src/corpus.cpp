#include "fretchet/corpus.hpp"

#include <cmath>

#include "fretchet/errors.hpp"
#include "fretchet/nn.hpp"
#include "fretchet/oracle.hpp"
#include "fretchet/random.hpp"

namespace fretchet {

FunCase example_ln_sin(double x) {
    return {"ln.sin", f_comp(f_prim(prim_ln()), f_prim(prim_sin())), Vector::scalar(x)};
}

FunTerm b2_term() {
    FunTerm p1 = f_lin(proj(1)), p2 = f_lin(proj(2));
    return fsub(fadd(f_comp(f_prim(prim_ln()), p1), fmul(p1, p2)), f_comp(f_prim(prim_sin()), p2));
}

FunCase example_b2(double x1, double x2) { return {"b2", b2_term(), Vector::reals({x1, x2})}; }

std::vector<FunCase> named_fun_cases(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<FunCase> out;
    for (int i = 0; i < 3; ++i) out.push_back(example_ln_sin(uniform(rng, 0.1, 3.0)));
    for (int i = 0; i < 3; ++i) out.push_back(example_b2(uniform(rng, 0.1, 10.0), uniform(rng, -5.0, 5.0)));
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{7, 5}, {3, 2}}) {
        Griewank g = make_griewank(m, n, seed);
        out.push_back({"griewank", g.term(), g.x0});
    }
    const NetworkSpec spec{{2, 3, 1}};
    const Params p = init_params(spec, seed);
    for (int i = 0; i < 2; ++i) {
        Vector x = Vector::reals({uniform(rng, -1, 1), uniform(rng, -1, 1)});
        Vector y = Vector::reals({uniform(rng, -1, 1)});
        const Vector point = params_point(spec, x, p, y);
        out.push_back({"nn.layer1", build_layer(spec, 1), point});
        out.push_back({"nn.layer2", build_layer(spec, 2), eval_fun(build_layer(spec, 1), point)});
        out.push_back({"nn.loss", build_loss(), Vector::tuple({Vector::reals({uniform(rng, -1, 1)}), y})});
        out.push_back({"nn.network", build_network(spec), point});
    }
    return out;
}

namespace {

double max_abs_coord(const Vector& v) {
    double m = 0.0;
    for (double c : to_coords(v)) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

std::vector<FunCase> random_fun_cases(std::size_t count, std::uint64_t seed, int max_depth, std::size_t max_dim) {
    Rng rng(seed);
    std::vector<FunCase> out;
    while (out.size() < count) {
        const Space d = random_space(rng, max_dim);
        const int depth = static_cast<int>(uniform_int(rng, 1, static_cast<std::size_t>(max_depth)));
        FunTerm t = random_funterm(rng, d, depth, max_dim);
        for (int attempt = 0; attempt < 5; ++attempt) {
            Vector v = random_vector(d, rng);
            try {
                if (!(max_abs_coord(eval_fun(t, v)) <= 1e6)) continue;
            } catch (const DomainError&) {
                continue;
            }
            out.push_back({"random#" + std::to_string(out.size()), t, v});
            break;
        }
    }
    return out;
}

std::vector<LinCase> random_lin_cases(std::size_t count, std::uint64_t seed, int max_depth, std::size_t max_dim) {
    Rng rng(seed);
    std::vector<LinCase> out;
    for (std::size_t i = 0; i < count; ++i) {
        const Space d = random_space(rng, max_dim);
        const int depth = static_cast<int>(uniform_int(rng, 1, static_cast<std::size_t>(max_depth)));
        out.push_back({"random#" + std::to_string(i), random_linterm(rng, d, depth, max_dim), d});
    }
    return out;
}

}  // namespace fretchet
