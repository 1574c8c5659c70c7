#include "fretchet/simplify.hpp"

#include <algorithm>
#include <cmath>

#include "fretchet/errors.hpp"
#include "fretchet/oracle.hpp"

namespace fretchet {
namespace {

using Rule2 = std::function<std::optional<LinTerm>(const LinTerm&, const LinTerm&)>;

std::optional<Space> domain_of(const LinTerm& f) {
    if (!f.closed()) return std::nullopt;
    return infer_types(f).domain;
}

// Lifts a rule on g . f to also fire on the head of a right-nested chain g . (f . rest).
std::function<std::optional<LinTerm>(const LinTerm&)> on_pairs(Rule2 rule) {
    return [rule](const LinTerm& t) -> std::optional<LinTerm> {
        const auto* c = t.as<lin::Comp>();
        if (!c) return std::nullopt;
        if (auto r = rule(c->g, c->f)) return r;
        const auto* inner = c->f.as<lin::Comp>();
        if (!inner || c->f.sugar()) return std::nullopt;
        if (auto r = rule(c->g, inner->g)) return comp(*r, inner->f);
        return std::nullopt;
    };
}

std::optional<LinTerm> id_left(const LinTerm& g, const LinTerm& f) {
    if (g.kind() == LinTerm::Kind::Id) return f;
    return std::nullopt;
}

std::optional<LinTerm> id_right(const LinTerm& g, const LinTerm& f) {
    if (f.kind() == LinTerm::Kind::Id) return g;
    return std::nullopt;
}

std::optional<LinTerm> zero_left(const LinTerm& g, const LinTerm& f) {
    const auto* z = g.as<lin::Zero>();
    if (!z) return std::nullopt;
    return zero_map(domain_of(f), z->codomain);
}

std::optional<LinTerm> zero_right(const LinTerm& g, const LinTerm& f) {
    const auto* z = f.as<lin::Zero>();
    if (!z) return std::nullopt;
    std::optional<Space> cod;
    if (g.closed()) cod = infer_types(g).codomain;
    return zero_map(z->domain, cod);
}

std::optional<LinTerm> scale_fusion(const LinTerm& g, const LinTerm& f) {
    const auto* a = g.as<lin::Scale>();
    const auto* b = f.as<lin::Scale>();
    if (!a || !b) return std::nullopt;
    return scale_map(a->k * b->k, b->space ? b->space : a->space);
}

std::optional<LinTerm> unitary_cancel(const LinTerm& g, const LinTerm& f) {
    const auto* a = g.as<lin::Unitary>();
    const auto* b = f.as<lin::Unitary>();
    if (!a || !b || a->kind != inverse(b->kind)) return std::nullopt;
    return id_map(b->at);
}

std::optional<LinTerm> pow_fusion(const LinTerm& g, const LinTerm& f) {
    const auto* a = g.as<lin::Pow>();
    const auto* b = f.as<lin::Pow>();
    if (!a || !b || !(a->index == b->index)) return std::nullopt;
    return pow_map(a->index, comp(a->f, b->f));
}

std::optional<LinTerm> contract_l_fusion(const LinTerm& g, const LinTerm& f) {
    const auto* a = g.as<lin::ContractL>();
    const auto* b = f.as<lin::ContractL>();
    if (!a || !b) return std::nullopt;
    return contract_l(contract(a->v, b->v), b->context ? b->context : a->context);
}

std::optional<LinTerm> contract_r_fusion(const LinTerm& g, const LinTerm& f) {
    const auto* a = g.as<lin::ContractR>();
    const auto* b = f.as<lin::ContractR>();
    if (!a || !b) return std::nullopt;
    return contract_r(contract(b->w, a->w), b->context ? b->context : a->context);
}

std::optional<LinTerm> red_fusion(const LinTerm& g, const LinTerm& f) {
    const auto* s = g.as<lin::Red>();
    const auto* r = f.as<lin::Red>();
    if (!s || !r || !(r->relation.codomain() == s->relation.domain())) return std::nullopt;
    auto rs = compose_unique(r->relation, s->relation);
    if (!rs) return std::nullopt;
    return red(*rs, r->body ? r->body : s->body);
}

std::optional<LinTerm> par_fusion(const LinTerm& g, const LinTerm& f) {
    const auto* a = g.as<lin::Par>();
    const auto* b = f.as<lin::Par>();
    if (!a || !b || !(a->index == b->index) || a->parts.size() != b->parts.size()) return std::nullopt;
    std::vector<LinTerm> parts;
    for (std::size_t i = 0; i < a->parts.size(); ++i) parts.push_back(simplify(comp(a->parts[i], b->parts[i])));
    LinTerm fused = par_map(std::move(parts), a->index);
    if (term_size(fused) > 1 + term_size(g) + term_size(f)) return std::nullopt;
    return fused;
}

std::optional<LinTerm> par_id(const LinTerm& t) {
    const auto* p = t.as<lin::Par>();
    if (!p) return std::nullopt;
    std::vector<Space> spaces;
    bool annotated = true;
    for (const auto& part : p->parts) {
        const auto* id = part.as<lin::Id>();
        if (!id) return std::nullopt;
        if (id->space) spaces.push_back(*id->space);
        else annotated = false;
    }
    if (!annotated || p->parts.empty()) return id_map();
    return id_map(make_family(p->index, std::move(spaces)));
}

std::optional<LinTerm> pow_id(const LinTerm& t) {
    const auto* p = t.as<lin::Pow>();
    if (!p) return std::nullopt;
    const auto* id = p->f.as<lin::Id>();
    if (!id) return std::nullopt;
    if (!id->space) return id_map();
    return id_map(Space::pow(p->index, *id->space));
}

std::optional<LinTerm> plus_zero_left(const LinTerm& t) {
    const auto* p = t.as<lin::Plus>();
    if (!p || p->f.kind() != LinTerm::Kind::Zero) return std::nullopt;
    return p->g;
}

std::optional<LinTerm> plus_zero_right(const LinTerm& t) {
    const auto* p = t.as<lin::Plus>();
    if (!p || p->g.kind() != LinTerm::Kind::Zero) return std::nullopt;
    return p->f;
}

std::optional<LinTerm> scale_zero(const LinTerm& t) {
    const auto* s = t.as<lin::Scale>();
    if (!s || s->k != 0.0) return std::nullopt;
    return zero_map(s->space, s->space);
}

std::optional<LinTerm> scale_one(const LinTerm& t) {
    const auto* s = t.as<lin::Scale>();
    if (!s || s->k != 1.0) return std::nullopt;
    return id_map(s->space);
}

// (h . g) . f -> h . (g . f), so that pairwise rules see adjacent factors.
// Tagged left factors (rep, sum, ...) are kept whole.
std::optional<LinTerm> comp_assoc(const LinTerm& t) {
    const auto* c = t.as<lin::Comp>();
    if (!c) return std::nullopt;
    const auto* left = c->g.as<lin::Comp>();
    if (!left || c->g.sugar()) return std::nullopt;
    return comp(left->g, comp(left->f, c->f));
}

// Instance generators. All produce closed, well-typed redexes.

struct Sample {
    LinTerm f;
    Space domain;
    Space codomain;
};

Sample sample_map(Rng& rng, const Space& domain) {
    LinTerm f = random_linterm(rng, domain, 2, 6);
    return {f, domain, infer_types(f).codomain};
}

Sample sample_map(Rng& rng) { return sample_map(rng, random_space(rng, 5)); }

Space unitary_domain(Rng& rng, UnitaryKind k) {
    auto small = [&] { return random_space(rng, 3, 1); };
    switch (k) {
    case UnitaryKind::Bra:
    case UnitaryKind::Ket:
        return small();
    case UnitaryKind::IBra:
        return Space::tensor(Space::scalar(), small());
    case UnitaryKind::IKet:
        return Space::tensor(small(), Space::scalar());
    case UnitaryKind::TensorTranspose:
        return Space::tensor(small(), small());
    case UnitaryKind::Assoc:
        return Space::tensor(Space::tensor(small(), small()), small());
    case UnitaryKind::AssocInv:
        return Space::tensor(small(), Space::tensor(small(), small()));
    case UnitaryKind::Distrib:
        return Space::tensor(Space::tuple({small(), small()}), small());
    case UnitaryKind::DistribInv:
        return unitary_codomain(UnitaryKind::Distrib, unitary_domain(rng, UnitaryKind::Distrib));
    case UnitaryKind::Zip: {
        const IndexSet x = random_index_set(rng, 3);
        return Space::tuple({Space::pow(x, small()), Space::pow(x, small())});
    }
    case UnitaryKind::Unzip:
        return unitary_codomain(UnitaryKind::Zip, unitary_domain(rng, UnitaryKind::Zip));
    }
    return small();
}

Relation functional_relation(Rng& rng, const IndexSet& x, const IndexSet& y) {
    std::vector<Relation::Pair> ps;
    for (std::size_t i = 0; i < x.card(); ++i)
        if (uniform01(rng) < 0.8) ps.emplace_back(i, uniform_int(rng, 0, y.card() - 1));
    return Relation(x, y, std::move(ps));
}

Relation any_relation(Rng& rng, const IndexSet& x, const IndexSet& y) {
    std::vector<Relation::Pair> ps;
    for (std::size_t i = 0; i < x.card(); ++i)
        for (std::size_t j = 0; j < y.card(); ++j)
            if (uniform01(rng) < 0.5) ps.emplace_back(i, j);
    return Relation(x, y, std::move(ps));
}

double nonzero_scalar(Rng& rng) {
    double k = uniform(rng, 0.5, 2.0);
    return uniform01(rng) < 0.5 ? -k : k;
}

std::vector<RewriteRule> make_rules() {
    std::vector<RewriteRule> rules;
    rules.push_back({"id-left", on_pairs(id_left),
                     [](Rng& rng) {
                         auto s = sample_map(rng);
                         return comp(id_map(s.codomain), s.f);
                     },
                     "id . f = f"});
    rules.push_back({"id-right", on_pairs(id_right),
                     [](Rng& rng) {
                         auto s = sample_map(rng);
                         return comp(s.f, id_map(s.domain));
                     },
                     "f . id = f"});
    rules.push_back({"par-id", par_id,
                     [](Rng& rng) {
                         std::vector<LinTerm> parts;
                         const std::size_t n = uniform_int(rng, 1, 3);
                         for (std::size_t i = 0; i < n; ++i) parts.push_back(id_map(random_space(rng, 3, 1)));
                         return par_map(std::move(parts));
                     },
                     "Pi id = id"});
    rules.push_back({"pow-id", pow_id,
                     [](Rng& rng) { return pow_map(random_index_set(rng, 3), id_map(random_space(rng, 3, 1))); },
                     "id^X = id"});
    rules.push_back({"zero-left", on_pairs(zero_left),
                     [](Rng& rng) {
                         auto s = sample_map(rng);
                         return comp(zero_map(s.codomain, random_space(rng, 4)), s.f);
                     },
                     "0 . f = 0"});
    rules.push_back({"zero-right", on_pairs(zero_right),
                     [](Rng& rng) {
                         auto s = sample_map(rng);
                         return comp(s.f, zero_map(random_space(rng, 4), s.domain));
                     },
                     "f . 0 = 0"});
    rules.push_back({"plus-zero-left", plus_zero_left,
                     [](Rng& rng) {
                         auto s = sample_map(rng);
                         return plus_map(zero_map(s.domain, s.codomain), s.f);
                     },
                     "0 + f = f"});
    rules.push_back({"plus-zero-right", plus_zero_right,
                     [](Rng& rng) {
                         auto s = sample_map(rng);
                         return plus_map(s.f, zero_map(s.domain, s.codomain));
                     },
                     "f + 0 = f"});
    rules.push_back({"scale-zero", scale_zero, [](Rng& rng) { return scale_map(0.0, random_space(rng, 5)); },
                     "(0 .) = 0"});
    rules.push_back({"scale-one", scale_one, [](Rng& rng) { return scale_map(1.0, random_space(rng, 5)); },
                     "(1 .) = id"});
    rules.push_back({"scale-fusion", on_pairs(scale_fusion),
                     [](Rng& rng) {
                         const Space v = random_space(rng, 5);
                         return comp(scale_map(nonzero_scalar(rng), v), scale_map(nonzero_scalar(rng), v));
                     },
                     "(a .) . (b .) = (ab .)"});
    rules.push_back({"unitary-cancel", on_pairs(unitary_cancel),
                     [](Rng& rng) {
                         const UnitaryKind k = all_unitaries[uniform_int(rng, 0, std::size(all_unitaries) - 1)];
                         const Space d = unitary_domain(rng, k);
                         return comp(unitary(inverse(k), unitary_codomain(k, d)), unitary(k, d));
                     },
                     "u^-1 . u = id"});
    rules.push_back({"par-fusion", on_pairs(par_fusion),
                     [](Rng& rng) {
                         const std::size_t n = uniform_int(rng, 1, 2);
                         std::vector<LinTerm> fs, gs;
                         for (std::size_t i = 0; i < n; ++i) {
                             auto s = sample_map(rng, random_space(rng, 3, 1));
                             fs.push_back(s.f);
                             gs.push_back(random_dense_map(rng, s.codomain, random_space(rng, 3, 1)));
                         }
                         return comp(par_map(gs), par_map(fs));
                     },
                     "Pi g . Pi f = Pi (g . f)"});
    rules.push_back({"pow-fusion", on_pairs(pow_fusion),
                     [](Rng& rng) {
                         const IndexSet x = random_index_set(rng, 3);
                         auto s = sample_map(rng, random_space(rng, 2, 1));
                         LinTerm g = random_dense_map(rng, s.codomain, random_space(rng, 2, 1));
                         return comp(pow_map(x, g), pow_map(x, s.f));
                     },
                     "g^X . f^X = (g . f)^X"});
    rules.push_back({"contractL-fusion", on_pairs(contract_l_fusion),
                     [](Rng& rng) {
                         const Space a = random_space(rng, 3, 1), u = random_space(rng, 3, 1),
                                     v = random_space(rng, 3, 1), w = random_space(rng, 3, 1);
                         return comp(contract_l(random_vector(Space::tensor(w, v), rng), u),
                                     contract_l(random_vector(Space::tensor(v, a), rng), u));
                     },
                     "(v *) . (w *) = ((v * w) *)"});
    rules.push_back({"contractR-fusion", on_pairs(contract_r_fusion),
                     [](Rng& rng) {
                         const Space w = random_space(rng, 3, 1), v = random_space(rng, 3, 1),
                                     u = random_space(rng, 3, 1), t = random_space(rng, 3, 1);
                         return comp(contract_r(random_vector(Space::tensor(u, t), rng), w),
                                     contract_r(random_vector(Space::tensor(v, u), rng), w));
                     },
                     "(* w1) . (* w2) = (* (w2 * w1))"});
    rules.push_back({"red-fusion", on_pairs(red_fusion),
                     [](Rng& rng) {
                         const IndexSet x = random_index_set(rng, 4), y = random_index_set(rng, 4),
                                        z = random_index_set(rng, 4);
                         const Space body = random_space(rng, 2, 1);
                         return comp(red(any_relation(rng, y, z), body), red(functional_relation(rng, x, y), body));
                     },
                     "red_S . red_R = red_{R;S} (unique witnesses)"});
    rules.push_back({"comp-assoc", comp_assoc,
                     [](Rng& rng) {
                         auto f = sample_map(rng);
                         auto g = sample_map(rng, f.codomain);
                         auto h = sample_map(rng, g.codomain);
                         return comp(comp(h.f, g.f), f.f);
                     },
                     "(h . g) . f = h . (g . f)"});
    return rules;
}

class Rewriter {
public:
    explicit Rewriter(std::size_t budget) : budget_(budget) {}

    LinTerm run(const LinTerm& t) {
        LinTerm cur = descend(t);
        for (const auto& rule : rewrite_rules()) {
            if (steps_ >= budget_) {
                exhausted_ = true;
                return cur;
            }
            if (auto r = rule.rewrite(cur)) {
                ++steps_;
                return run(*r);
            }
        }
        return cur;
    }

    std::size_t steps() const { return steps_; }
    bool exhausted() const { return exhausted_; }

private:
    LinTerm keep(const LinTerm& original, LinTerm rebuilt, bool changed) {
        if (!changed) return original;
        return rebuilt;
    }

    std::vector<LinTerm> run_all(const std::vector<LinTerm>& parts, bool& changed) {
        std::vector<LinTerm> out;
        for (const auto& p : parts) {
            out.push_back(run(p));
            changed = changed || out.back().raw() != p.raw();
        }
        return out;
    }

    LinTerm descend(const LinTerm& t) {
        bool changed = false;
        switch (t.kind()) {
        case LinTerm::Kind::Comp: {
            const auto& c = t.get<lin::Comp>();
            auto parts = run_all({c.g, c.f}, changed);
            return keep(t, comp(parts[0], parts[1]), changed);
        }
        case LinTerm::Kind::Plus: {
            const auto& p = t.get<lin::Plus>();
            auto parts = run_all({p.f, p.g}, changed);
            return keep(t, plus_map(parts[0], parts[1]), changed);
        }
        case LinTerm::Kind::Par: {
            const auto& p = t.get<lin::Par>();
            auto parts = run_all(p.parts, changed);
            return keep(t, par_map(std::move(parts), p.index), changed);
        }
        case LinTerm::Kind::Fanout: {
            const auto& p = t.get<lin::Fanout>();
            auto parts = run_all(p.parts, changed);
            return keep(t, fanout(std::move(parts), p.index), changed);
        }
        case LinTerm::Kind::Pow: {
            const auto& p = t.get<lin::Pow>();
            auto parts = run_all({p.f}, changed);
            return keep(t, pow_map(p.index, parts[0]), changed);
        }
        default:
            return t;
        }
    }

    std::size_t budget_;
    std::size_t steps_ = 0;
    bool exhausted_ = false;
};

}  // namespace

const std::vector<RewriteRule>& rewrite_rules() {
    static const std::vector<RewriteRule> rules = make_rules();
    return rules;
}

LinTerm simplify(const LinTerm& f, SimplifyStats* stats) {
    if (f.closed()) infer_types(f);
    Rewriter rw(10 * term_size(f));
    LinTerm out = rw.run(f);
    if (stats) *stats = {rw.steps(), 10 * term_size(f), rw.exhausted()};
    return out;
}

LinTerm simplify(const LinTerm& f, const Space& domain, SimplifyStats* stats) {
    return simplify(elaborate(f, domain), stats);
}

std::vector<RuleReport> rule_soundness_suite(std::size_t instances, std::uint64_t seed, double tol) {
    std::vector<RuleReport> reports;
    Rng rng(seed);
    for (const auto& rule : rewrite_rules()) {
        RuleReport rep;
        rep.name = rule.name;
        for (std::size_t i = 0; i < instances; ++i) {
            ++rep.instances;
            LinTerm before = rule.instance(rng);
            try {
                const Space d = infer_types(before).domain;
                auto after = rule.rewrite(before);
                if (!after) {
                    rep.failures.push_back("did not fire on instance " + std::to_string(i));
                    continue;
                }
                ++rep.fired;
                const double err = max_abs_diff(lower_matrix(before, d), lower_matrix(*after, d));
                rep.max_error = std::max(rep.max_error, err);
                if (!(err <= tol))
                    rep.failures.push_back("instance " + std::to_string(i) + ": error " + std::to_string(err));
            } catch (const Error& e) {
                rep.failures.push_back("instance " + std::to_string(i) + ": " + e.what());
            }
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace fretchet
