#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "fretchet/funterm.hpp"
#include "fretchet/linterm.hpp"

namespace fretchet {

/// Seeded generator shared by tests, the acceptance suite, and nn initialisation.
using Rng = std::mt19937_64;

/// Uniform in [0, 1) from the top 53 bits, so draws are identical on every platform.
double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
/// Uniform integer in [lo, hi].
std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi);

/// Random element; tensor elements are formal sums of one to three scaled pure tensors.
Vector random_vector(const Space& space, Rng& rng, double lo = -1.0, double hi = 1.0);

IndexSet random_index_set(Rng& rng, std::size_t max_card);
/// Random space with 1 <= dim <= max_dim.
Space random_space(Rng& rng, std::size_t max_dim, int depth = 2);

/// General linear map D -> C as iket . (M *) . ket with a random M in C (x) D.
LinTerm random_dense_map(Rng& rng, const Space& domain, const Space& codomain);
/// Random closed, well-typed linear term on `domain`; every intermediate space
/// has dimension at most max_dim.
LinTerm random_linterm(Rng& rng, const Space& domain, int depth, std::size_t max_dim = 6);

/// Random function term on `domain` (depth counts nested combinators);
/// every intermediate space has dimension at most max_dim.
FunTerm random_funterm(Rng& rng, const Space& domain, int depth, std::size_t max_dim = 6);

}  // namespace fretchet
