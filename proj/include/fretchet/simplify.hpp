#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fretchet/linterm.hpp"
#include "fretchet/random.hpp"

namespace fretchet {

struct RewriteRule {
    std::string name;
    /// Rewrites at the root of the term, or returns nullopt when the rule does not match.
    std::function<std::optional<LinTerm>(const LinTerm&)> rewrite;
    /// A random closed term on which `rewrite` fires at the root.
    std::function<LinTerm(Rng&)> instance;
    std::string soundness;
};

const std::vector<RewriteRule>& rewrite_rules();

struct SimplifyStats {
    std::size_t steps = 0;
    std::size_t budget = 0;
    bool budget_exhausted = false;
};

/// Innermost-first rewriting to a fixpoint, with at most 10 * term_size(f) rule firings.
LinTerm simplify(const LinTerm& f, SimplifyStats* stats = nullptr);
LinTerm simplify(const LinTerm& f, const Space& domain, SimplifyStats* stats = nullptr);

struct RuleReport {
    std::string name;
    std::size_t instances = 0;
    std::size_t fired = 0;
    double max_error = 0.0;
    std::vector<std::string> failures;

    bool passed() const noexcept { return failures.empty() && fired == instances; }
};

/// For each rule: `instances` random redexes, matrix before vs after within `tol`.
std::vector<RuleReport> rule_soundness_suite(std::size_t instances = 50, std::uint64_t seed = 1,
                                             double tol = 1e-12);

}  // namespace fretchet
