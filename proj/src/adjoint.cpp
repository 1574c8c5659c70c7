#include "fretchet/adjoint.hpp"

#include <cmath>

#include "fretchet/errors.hpp"
#include "fretchet/random.hpp"

namespace fretchet {

namespace {

std::optional<Space> red_body(const LinTerm& t) {
    // Element space of the red inside a rep/sum composite.
    const auto& c = t.get<lin::Comp>();
    const LinTerm& r = c.g.kind() == LinTerm::Kind::Red ? c.g : c.f;
    return r.get<lin::Red>().body;
}

}  // namespace

LinTerm adjoint(const LinTerm& f) {
    if (const auto& tag = f.sugar()) {
        switch (tag->kind) {
        case SugarTag::Kind::Dup: return plus(red_body(f));
        case SugarTag::Kind::Plus: return dup(red_body(f));
        case SugarTag::Kind::Rep: return sum_over(*tag->index, red_body(f));
        case SugarTag::Kind::Sum: return rep(*tag->index, red_body(f));
        case SugarTag::Kind::Scan: break;
        }
    }
    switch (f.kind()) {
    case LinTerm::Kind::Id:
        return f;
    case LinTerm::Kind::Zero: {
        const auto& s = f.get<lin::Zero>();
        return zero_map(s.codomain, s.domain);
    }
    case LinTerm::Kind::Comp: {
        const auto& s = f.get<lin::Comp>();
        return comp(adjoint(s.f), adjoint(s.g));
    }
    case LinTerm::Kind::ContractL: {
        const auto& s = f.get<lin::ContractL>();
        return contract_l(transpose(s.v), s.context);
    }
    case LinTerm::Kind::ContractR: {
        const auto& s = f.get<lin::ContractR>();
        return contract_r(transpose(s.w), s.context);
    }
    case LinTerm::Kind::Scale:
        return f;
    case LinTerm::Kind::Inj: {
        const auto& s = f.get<lin::Inj>();
        return proj(s.ordinal, s.family);
    }
    case LinTerm::Kind::Proj: {
        const auto& s = f.get<lin::Proj>();
        return inj(s.ordinal, s.family);
    }
    case LinTerm::Kind::Par: {
        const auto& s = f.get<lin::Par>();
        std::vector<LinTerm> parts;
        for (const auto& p : s.parts) parts.push_back(adjoint(p));
        return par_map(std::move(parts), s.index);
    }
    case LinTerm::Kind::Pow: {
        const auto& s = f.get<lin::Pow>();
        return pow_map(s.index, adjoint(s.f));
    }
    case LinTerm::Kind::Fanout: {
        // adj <f_x> = [adj f_x] = sum_X . Pi adj f_x
        const auto& s = f.get<lin::Fanout>();
        std::vector<LinTerm> parts;
        for (const auto& p : s.parts) parts.push_back(adjoint(p));
        std::optional<Space> body;
        if (f.closed()) body = infer_types(f).domain;
        return fanin(std::move(parts), s.index, std::move(body));
    }
    case LinTerm::Kind::Plus: {
        const auto& s = f.get<lin::Plus>();
        return plus_map(adjoint(s.f), adjoint(s.g));
    }
    case LinTerm::Kind::Red: {
        const auto& s = f.get<lin::Red>();
        return red(s.relation.transpose(), s.body);
    }
    case LinTerm::Kind::Unitary: {
        const auto& s = f.get<lin::Unitary>();
        std::optional<Space> at;
        if (s.at) at = unitary_codomain(s.kind, *s.at);
        return unitary(inverse(s.kind), std::move(at));
    }
    }
    return f;
}

LinTerm adjoint(const LinTerm& f, const Space& domain) {
    LinTerm e = elaborate(f, domain);
    return adjoint(e);
}

AdjointLawReport check_adjoint_law(const LinTerm& f, std::size_t trials, double tol, std::uint64_t seed,
                                   std::optional<Space> domain) {
    const LinTerm e = domain ? elaborate(f, *domain) : f;
    const TypeSig sig = infer_types(e);
    const LinTerm a = adjoint(e);
    Rng rng(seed);
    AdjointLawReport report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const Vector v = random_vector(sig.domain, rng);
        const Vector w = random_vector(sig.codomain, rng);
        const double lhs = inner(apply(e, v), w);
        const double rhs = inner(v, apply(a, w));
        const double err = std::abs(lhs - rhs);
        report.max_error = std::max(report.max_error, err);
        if (!(err <= tol * (1.0 + std::abs(lhs))))
            report.failures.push_back("trial " + std::to_string(t + 1) + ": <f v, w> = " + format_real(lhs) +
                                      ", <v, adj f w> = " + format_real(rhs));
    }
    return report;
}

Vector gradient_of_covector(const LinTerm& f, std::optional<Space> domain) {
    const LinTerm e = domain ? elaborate(f, *domain) : f;
    const TypeSig sig = infer_types(e);
    if (sig.codomain.kind() != Space::Kind::Scalar)
        throw TypeError("gradient_of_covector needs a map into R, got codomain " + to_string(sig.codomain));
    return apply(adjoint(e), Vector::scalar(1.0));
}

}  // namespace fretchet
