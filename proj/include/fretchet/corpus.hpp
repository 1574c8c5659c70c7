#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fretchet/funterm.hpp"
#include "fretchet/linterm.hpp"

namespace fretchet {

/// A function term together with a point inside its domain of definition.
struct FunCase {
    std::string name;
    FunTerm term;
    Vector point;
};

struct LinCase {
    std::string name;
    LinTerm term;
    Space domain;
};

/// ln . sin at x in (0.1, 3).
FunCase example_ln_sin(double x);
/// ln x1 + x1 x2 - sin x2 at (x1, x2).
FunCase example_b2(double x1, double x2);
FunTerm b2_term();

/// Hand-picked terms (the examples above, Griewank, network layers and loss),
/// each at a few points drawn from `seed`.
std::vector<FunCase> named_fun_cases(std::uint64_t seed = 1);

/// Random terms of depth 1..max_depth over spaces of dimension <= max_dim.
/// Points where the term is undefined or its value exceeds 1e6 in magnitude are redrawn.
std::vector<FunCase> random_fun_cases(std::size_t count, std::uint64_t seed, int max_depth = 5,
                                      std::size_t max_dim = 6);

std::vector<LinCase> random_lin_cases(std::size_t count, std::uint64_t seed, int max_depth = 4,
                                      std::size_t max_dim = 6);

}  // namespace fretchet
