#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fretchet/linterm.hpp"

namespace fretchet {

/// Symbolic adjoint. Works on open terms too: holes stay holes.
LinTerm adjoint(const LinTerm& f);
/// Adjoint of f elaborated from `domain`; the result is closed.
LinTerm adjoint(const LinTerm& f, const Space& domain);

struct AdjointLawReport {
    std::size_t trials = 0;
    double max_error = 0.0;  // largest |<f v, w> - <v, adj f w>| seen
    std::vector<std::string> failures;

    bool passed() const noexcept { return failures.empty(); }
};

/// Checks <f v, w> = <v, adj f w> on random v, w with
/// |lhs - rhs| <= tol * (1 + |lhs|).
AdjointLawReport check_adjoint_law(const LinTerm& f, std::size_t trials, double tol, std::uint64_t seed = 1,
                                   std::optional<Space> domain = std::nullopt);

/// The Riesz representative adj f (1) of a covector f : V -> R.
Vector gradient_of_covector(const LinTerm& f, std::optional<Space> domain = std::nullopt);

}  // namespace fretchet
