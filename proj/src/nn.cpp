#include "fretchet/nn.hpp"

#include <fstream>
#include <sstream>

#include "fretchet/diff.hpp"
#include "fretchet/errors.hpp"
#include "fretchet/random.hpp"

namespace fretchet {
namespace {

void check_spec(const NetworkSpec& spec) {
    if (spec.dims.size() < 2) throw ShapeError("network needs at least an input and an output width");
    for (auto d : spec.dims)
        if (d == 0) throw ShapeError("network widths must be positive");
}

FunTerm proj_at(std::size_t i) { return f_lin(proj(i)); }

}  // namespace

FunTerm build_layer(const NetworkSpec& spec, std::size_t i) {
    check_spec(spec);
    const std::size_t k = spec.layers();
    if (i < 1 || i > k) throw ShapeError("layer index out of range");
    const std::size_t slots = 2 * (k + 2 - i);
    FunTerm pre = fadd(f_comp(f_bilin(BilinKind::MatVec), ffanout({proj_at(2), proj_at(1)})), proj_at(3));
    FunTerm act = f_pow(IndexSet::seg(spec.dims[i]), f_prim(spec.activation));
    std::vector<FunTerm> parts{f_comp(act, pre)};
    for (std::size_t j = 4; j <= slots; ++j) parts.push_back(proj_at(j));
    return ffanout(std::move(parts));
}

FunTerm build_loss() {
    return f_comp({f_bilin(BilinKind::Inner), f_lin(dup()), fsub(proj_at(1), proj_at(2))});
}

FunTerm build_network(const NetworkSpec& spec) {
    check_spec(spec);
    std::vector<FunTerm> chain{build_loss()};
    for (std::size_t i = spec.layers(); i >= 1; --i) chain.push_back(build_layer(spec, i));
    return f_comp(chain);
}

Space params_space(const NetworkSpec& spec) {
    check_spec(spec);
    std::vector<Space> comps{Space::real(spec.dims[0])};
    for (std::size_t i = 1; i <= spec.layers(); ++i) {
        comps.push_back(Space::tensor(Space::real(spec.dims[i]), Space::real(spec.dims[i - 1])));
        comps.push_back(Space::real(spec.dims[i]));
    }
    comps.push_back(Space::real(spec.dims.back()));
    return Space::tuple(std::move(comps));
}

Params init_params(const NetworkSpec& spec, std::uint64_t seed) {
    check_spec(spec);
    Rng rng(seed);
    Params p;
    for (std::size_t i = 1; i <= spec.layers(); ++i) {
        const std::size_t rows = spec.dims[i], cols = spec.dims[i - 1];
        std::vector<double> w(rows * cols);
        for (auto& x : w) x = uniform(rng, -0.5, 0.5);
        p.weights.push_back(from_coords(Space::tensor(Space::real(rows), Space::real(cols)), w));
        p.biases.push_back(Vector::reals(std::vector<double>(rows, 0.0)));
    }
    return p;
}

Vector params_point(const NetworkSpec& spec, const Vector& x, const Params& p, const Vector& y) {
    std::vector<Vector> items{x};
    for (std::size_t i = 0; i < spec.layers(); ++i) {
        items.push_back(p.weights.at(i));
        items.push_back(p.biases.at(i));
    }
    items.push_back(y);
    return Vector::family(params_space(spec), std::move(items));
}

Vector nn_forward(const NetworkSpec& spec, const Params& p, const Vector& x) {
    Vector point = params_point(spec, x, p, Vector::reals(std::vector<double>(spec.dims.back(), 0.0)));
    for (std::size_t i = 1; i <= spec.layers(); ++i) point = eval_fun(build_layer(spec, i), point);
    return point.item(0);
}

Vector nn_gradient(const NetworkSpec& spec, const Vector& point) { return gradient(build_network(spec), point); }

std::vector<Sample> load_csv(const std::string& path, std::size_t n_in, std::size_t n_out) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<Sample> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t\r", used) != std::string::npos) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (!numeric) {
            if (out.empty() && lineno == 1) continue;
            throw Error(path + ":" + std::to_string(lineno) + ": non-numeric cell");
        }
        if (row.size() != n_in + n_out)
            throw ShapeError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(n_in + n_out) +
                             " columns, got " + std::to_string(row.size()));
        out.push_back({{row.begin(), row.begin() + n_in}, {row.begin() + n_in, row.end()}});
    }
    return out;
}

TrainResult train(const NetworkSpec& spec, const std::vector<Sample>& data, double lr, std::size_t steps,
                  std::uint64_t seed) {
    check_spec(spec);
    if (data.empty()) throw ShapeError("empty training set");
    const FunTerm net = build_network(spec);
    const std::size_t k = spec.layers();
    TrainResult res{init_params(spec, seed), {}};
    const double scale = 1.0 / static_cast<double>(data.size());

    for (std::size_t step = 0; step <= steps; ++step) {
        double loss = 0.0;
        std::vector<Vector> grads;
        for (const auto& s : data) {
            if (s.x.size() != spec.dims.front() || s.y.size() != spec.dims.back())
                throw ShapeError("sample width does not match the network");
            const Vector point = params_point(spec, Vector::reals(s.x), res.params, Vector::reals(s.y));
            auto r = affine_adj(net, point);
            loss += r.value.value();
            if (step == steps) continue;
            Vector g = apply(r.adj_deriv, Vector::scalar(1.0));
            if (grads.empty()) grads = family_items(g);
            else {
                auto items = family_items(g);
                for (std::size_t j = 1; j <= 2 * k; ++j) grads[j] = vec_add(grads[j], items[j]);
            }
        }
        res.loss_trace.push_back(loss * scale);
        if (step == steps) break;
        for (std::size_t i = 0; i < k; ++i) {
            Vector& w = res.params.weights[i];
            w = vec_add(w, vec_scale(-lr * scale, grads[2 * i + 1]));
            if (w.kind() == Vector::Kind::Tensor && w.terms().size() > spec.dims[i + 1]) w = compact(w);
            res.params.biases[i] = vec_add(res.params.biases[i], vec_scale(-lr * scale, grads[2 * i + 2]));
        }
    }
    return res;
}

}  // namespace fretchet
