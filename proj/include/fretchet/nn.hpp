#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fretchet/funterm.hpp"

namespace fretchet {

/// Fully connected network with layer widths dims[0] (input) .. dims[k] (output).
struct NetworkSpec {
    std::vector<std::size_t> dims;
    PrimOp activation = prim_tanh();

    std::size_t layers() const { return dims.empty() ? 0 : dims.size() - 1; }
};

/// Layer i (1-based) as a map on (x_i, W_i, b_i, ..., W_k, b_k, y):
/// the first slot becomes h(W_i x_i + b_i), the remaining slots are passed on.
FunTerm build_layer(const NetworkSpec& spec, std::size_t i);
/// (v - y) . (v - y) on the pair (v, y).
FunTerm build_loss();
/// loss . g_k . ... . g_1
FunTerm build_network(const NetworkSpec& spec);

/// The tuple space (R^m0, R^m1 (x) R^m0, R^m1, ..., R^mk).
Space params_space(const NetworkSpec& spec);

struct Params {
    std::vector<Vector> weights;  // W_i in R^{m_i} (x) R^{m_{i-1}}
    std::vector<Vector> biases;   // b_i in R^{m_i}
};

/// W_i uniform in [-0.5, 0.5] from mt19937_64(seed), b_i = 0.
Params init_params(const NetworkSpec& spec, std::uint64_t seed);
/// The point (x, W_1, b_1, ..., W_k, b_k, y) in params_space(spec).
Vector params_point(const NetworkSpec& spec, const Vector& x, const Params& p, const Vector& y);
/// Network output h(W_k ... h(W_1 x + b_1) ... + b_k).
Vector nn_forward(const NetworkSpec& spec, const Params& p, const Vector& x);
/// Gradient of the loss network at a params point.
Vector nn_gradient(const NetworkSpec& spec, const Vector& point);

struct Sample {
    std::vector<double> x;
    std::vector<double> y;
};

/// Reads rows of n_in inputs followed by n_out targets; a non-numeric first line is a header.
std::vector<Sample> load_csv(const std::string& path, std::size_t n_in, std::size_t n_out);

struct TrainResult {
    Params params;
    /// Mean loss before each step, then after the last one (steps + 1 entries).
    std::vector<double> loss_trace;
};

/// Full-batch gradient descent on the mean loss; only weights and biases move.
TrainResult train(const NetworkSpec& spec, const std::vector<Sample>& data, double lr, std::size_t steps,
                  std::uint64_t seed);

}  // namespace fretchet
