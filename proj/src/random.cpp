#include "fretchet/random.hpp"

#include <algorithm>
#include <functional>

#include "fretchet/errors.hpp"

namespace fretchet {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

Vector random_vector(const Space& space, Rng& rng, double lo, double hi) {
    switch (space.kind()) {
    case Space::Kind::Zero:
        return Vector::zero(space);
    case Space::Kind::Scalar:
        return Vector::scalar(uniform(rng, lo, hi));
    case Space::Kind::Tuple:
    case Space::Kind::Pow: {
        std::vector<Vector> items;
        for (std::size_t i = 0; i < space.family_size(); ++i)
            items.push_back(random_vector(space.component(i), rng, lo, hi));
        return Vector::family(space, std::move(items));
    }
    case Space::Kind::Tensor: {
        const std::size_t n = uniform_int(rng, 1, 3);
        std::vector<TensorTerm> terms;
        for (std::size_t i = 0; i < n; ++i)
            terms.push_back({uniform(rng, 0.5, 1.5) * (uniform01(rng) < 0.5 ? -1.0 : 1.0),
                             random_vector(space.left(), rng, lo, hi), random_vector(space.right(), rng, lo, hi)});
        return Vector::tensor(space.left(), space.right(), std::move(terms));
    }
    }
    return Vector::zero(space);
}

IndexSet random_index_set(Rng& rng, std::size_t max_card) {
    max_card = std::max<std::size_t>(max_card, 1);
    const std::size_t shape = max_card >= 2 ? uniform_int(rng, 0, 3) : 0;
    if (shape == 2 && max_card >= 2) {
        const std::size_t a = uniform_int(rng, 1, std::min<std::size_t>(2, max_card));
        const std::size_t b = uniform_int(rng, 1, std::max<std::size_t>(1, max_card / a));
        return IndexSet::prod(IndexSet::seg(a), IndexSet::seg(std::min(b, max_card / a)));
    }
    if (shape == 3 && max_card >= 2) {
        const std::size_t a = uniform_int(rng, 1, max_card - 1);
        const std::size_t b = uniform_int(rng, 1, max_card - a);
        return IndexSet::sum(IndexSet::seg(a), IndexSet::seg(b));
    }
    return IndexSet::seg(uniform_int(rng, 1, std::min<std::size_t>(max_card, 4)));
}

Space random_space(Rng& rng, std::size_t max_dim, int depth) {
    max_dim = std::max<std::size_t>(max_dim, 1);
    const std::size_t choice = depth > 0 && max_dim >= 2 ? uniform_int(rng, 0, 5) : uniform_int(rng, 0, 1);
    switch (choice) {
    case 0:
        return Space::scalar();
    case 1:
        return Space::real(uniform_int(rng, 1, std::min<std::size_t>(max_dim, 4)));
    case 2: {
        const std::size_t a = uniform_int(rng, 1, max_dim - 1);
        Space l = random_space(rng, a, depth - 1);
        Space r = random_space(rng, max_dim - l.dim(), depth - 1);
        return Space::tuple({l, r});
    }
    case 3: {
        const std::size_t a = uniform_int(rng, 1, std::min<std::size_t>(3, max_dim / 1));
        Space l = random_space(rng, a, depth - 1);
        Space r = random_space(rng, std::max<std::size_t>(1, max_dim / l.dim()), depth - 1);
        return Space::tensor(l, r);
    }
    default: {
        IndexSet x = random_index_set(rng, std::min<std::size_t>(max_dim, 4));
        Space body = random_space(rng, std::max<std::size_t>(1, max_dim / x.card()), depth - 1);
        return Space::pow(x, body);
    }
    }
}

LinTerm random_dense_map(Rng& rng, const Space& domain, const Space& codomain) {
    const Space r = Space::scalar();
    const Vector m = random_vector(Space::tensor(codomain, domain), rng);
    return comp({unitary(UnitaryKind::IKet, Space::tensor(codomain, r)), contract_l(m, r),
                 unitary(UnitaryKind::Ket, domain)});
}

namespace {

bool all_tensors_sharing_right(const Space& d) {
    if (!d.is_family() || d.family_size() == 0) return false;
    for (std::size_t i = 0; i < d.family_size(); ++i) {
        Space c = d.component(i);
        if (c.kind() != Space::Kind::Tensor || !(c.right() == d.component(0).right())) return false;
    }
    return true;
}

bool is_pair_of_families(const Space& d) {
    return d.is_family() && d.family_size() == 2 && d.family_index().is_seg() && d.component(0).is_family() &&
           d.component(1).is_family() && d.component(0).family_index() == d.component(1).family_index();
}

bool is_family_of_pairs(const Space& d) {
    if (!d.is_family() || d.family_size() == 0) return false;
    for (std::size_t i = 0; i < d.family_size(); ++i) {
        Space c = d.component(i);
        if (!c.is_family() || c.family_size() != 2 || !c.family_index().is_seg()) return false;
    }
    return true;
}

Relation random_relation(Rng& rng, const IndexSet& x, const IndexSet& y) {
    std::vector<Relation::Pair> ps;
    for (std::size_t i = 0; i < x.card(); ++i)
        for (std::size_t j = 0; j < y.card(); ++j)
            if (uniform01(rng) < 0.4) ps.emplace_back(i, j);
    return Relation(x, y, std::move(ps));
}

struct LinGen {
    Rng& rng;
    std::size_t max_dim;

    bool fits(const LinTerm& t) const {
        try {
            return infer_types(t).codomain.dim() <= max_dim;
        } catch (const Error&) {
            return false;
        }
    }

    Space cod(const LinTerm& t) const { return infer_types(t).codomain; }

    std::optional<LinTerm> leaf(const Space& d) {
        switch (uniform_int(rng, 0, 10)) {
        case 0:
            return id_map(d);
        case 1:
            return scale_map(uniform(rng, -2.0, 2.0), d);
        case 2:
            if (uniform01(rng) < 0.3) return zero_map(d, random_space(rng, max_dim));
            return random_dense_map(rng, d, random_space(rng, max_dim));
        case 3:
        case 4: {
            std::vector<UnitaryKind> ok{UnitaryKind::Bra, UnitaryKind::Ket};
            if (d.kind() == Space::Kind::Tensor) {
                ok.push_back(UnitaryKind::TensorTranspose);
                if (d.left().kind() == Space::Kind::Scalar) ok.push_back(UnitaryKind::IBra);
                if (d.right().kind() == Space::Kind::Scalar) ok.push_back(UnitaryKind::IKet);
                if (d.left().kind() == Space::Kind::Tensor) ok.push_back(UnitaryKind::Assoc);
                if (d.right().kind() == Space::Kind::Tensor) ok.push_back(UnitaryKind::AssocInv);
                if (d.left().is_family()) ok.push_back(UnitaryKind::Distrib);
            }
            if (all_tensors_sharing_right(d)) ok.push_back(UnitaryKind::DistribInv);
            if (is_pair_of_families(d)) ok.push_back(UnitaryKind::Zip);
            if (is_family_of_pairs(d)) ok.push_back(UnitaryKind::Unzip);
            return unitary(ok[uniform_int(rng, 0, ok.size() - 1)], d);
        }
        case 5:
            if (d.is_family() && d.family_size() > 0) return proj(uniform_int(rng, 1, d.family_size()), d);
            return std::nullopt;
        case 6: {
            if (2 * d.dim() > max_dim) return std::nullopt;
            Space other = random_space(rng, max_dim - d.dim());
            if (uniform01(rng) < 0.5) return inj(1, Space::tuple({d, other}));
            return inj(2, Space::tuple({other, d}));
        }
        case 7:
            if (d.kind() == Space::Kind::Tensor) {
                const std::size_t budget = std::max<std::size_t>(1, max_dim / d.right().dim());
                Space w = random_space(rng, budget);
                return contract_l(random_vector(Space::tensor(w, d.left()), rng), d.right());
            }
            return std::nullopt;
        case 8:
            if (d.kind() == Space::Kind::Tensor) {
                const std::size_t budget = std::max<std::size_t>(1, max_dim / d.left().dim());
                Space u = random_space(rng, budget);
                return contract_r(random_vector(Space::tensor(d.right(), u), rng), d.left());
            }
            return std::nullopt;
        case 9: {
            if (!d.is_family()) return std::nullopt;
            auto body = d.copower_body();
            if (!body) return std::nullopt;
            const IndexSet x = d.family_index();
            const IndexSet y = random_index_set(rng, std::max<std::size_t>(1, max_dim / body->dim()));
            return red(random_relation(rng, x, y), *body);
        }
        default: {
            auto body = d.is_family() ? d.copower_body() : std::nullopt;
            const std::size_t pick = uniform_int(rng, 0, 3);
            if (pick == 0 && 2 * d.dim() <= max_dim) return dup(d);
            if (pick == 1 && body) return sum_over(d.family_index(), *body);
            if (pick == 2 && body && d.family_index().is_seg()) return scan(d.family_size(), *body);
            if (pick == 3 && d.dim() <= max_dim / 3) return rep(IndexSet::seg(3), d);
            return std::nullopt;
        }
        }
    }

    LinTerm adapt(const LinTerm& t, const Space& target) {
        Space c = cod(t);
        if (c == target) return t;
        return comp(random_dense_map(rng, c, target), t);
    }

    std::optional<LinTerm> node(const Space& d, int depth) {
        switch (uniform_int(rng, 0, 5)) {
        case 0:
        case 1: {
            LinTerm f = term(d, depth - 1);
            return comp(term(cod(f), depth - 1), f);
        }
        case 2: {
            LinTerm f = term(d, depth - 1);
            return plus_map(f, adapt(term(d, depth - 1), cod(f)));
        }
        case 3: {
            if (!d.is_family() || d.family_size() == 0) return std::nullopt;
            std::vector<LinTerm> parts;
            for (std::size_t i = 0; i < d.family_size(); ++i) parts.push_back(term(d.component(i), depth - 1));
            if (uniform01(rng) < 0.3) {
                // [g_x] needs one common codomain.
                Space c = cod(parts[0]);
                for (auto& p : parts) p = adapt(p, c);
                return fanin(std::move(parts), d.family_index(), c);
            }
            return par_map(std::move(parts), d.family_index());
        }
        case 4: {
            if (!d.is_family()) return std::nullopt;
            auto body = d.copower_body();
            if (!body) return std::nullopt;
            return pow_map(d.family_index(), term(*body, depth - 1));
        }
        default: {
            const std::size_t n = uniform_int(rng, 1, 3);
            std::vector<LinTerm> parts;
            for (std::size_t i = 0; i < n; ++i) parts.push_back(term(d, depth - 1));
            return fanout(std::move(parts));
        }
        }
    }

    LinTerm term(const Space& d, int depth) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            std::optional<LinTerm> t = (depth > 0 && uniform01(rng) < 0.6) ? node(d, depth) : leaf(d);
            if (t && fits(*t)) return *t;
        }
        return id_map(d);
    }
};

PrimOp random_prim(Rng& rng) {
    switch (uniform_int(rng, 0, 5)) {
    case 0: return prim_sin();
    case 1: return prim_cos();
    case 2: return prim_tanh();
    case 3: return prim_exp();
    case 4: return prim_pow(2);
    default: return prim_pow(3);
    }
}

struct FunGen {
    Rng& rng;
    std::size_t max_dim;
    LinGen lin{rng, max_dim};

    Space cod(const FunTerm& t, const Space& d) const { return fun_codomain(t, d); }

    FunTerm adapt(const FunTerm& t, const Space& d, const Space& target) {
        Space c = cod(t, d);
        if (c == target) return t;
        return f_comp(f_lin(random_dense_map(rng, c, target)), t);
    }

    /// A scalar function that is analytic and bounded in slope everywhere.
    FunTerm scalar_leaf() {
        const Space r = Space::scalar();
        switch (uniform_int(rng, 0, 7)) {
        case 6:
            // ln(3/2 + tanh x)
            return f_comp(f_prim(prim_ln()), fadd(f_const(Vector::scalar(1.5)), f_prim(prim_tanh())));
        case 7:
            // (2 + sin x)^-1
            return f_comp(f_prim(prim_pow(-1)), fadd(f_const(Vector::scalar(2.0)), f_prim(prim_sin())));
        default:
            return f_prim(random_prim(rng));
        }
    }

    std::optional<FunTerm> bilinear(const Space& d, int depth) {
        FunTerm l = term(d, depth - 1);
        FunTerm r = term(d, depth - 1);
        const Space a = cod(l, d);
        const Space b = cod(r, d);
        const Space scalar = Space::scalar();
        BilinKind op = BilinKind::Inner;
        switch (uniform_int(rng, 0, 5)) {
        case 0:
            op = BilinKind::ScalarMul;
            l = adapt(l, d, scalar);
            break;
        case 1:
            op = BilinKind::Inner;
            r = adapt(r, d, a);
            break;
        case 2:
            op = BilinKind::TensorProd;
            if (a.dim() * b.dim() > max_dim) r = adapt(r, d, scalar);
            break;
        case 3: {
            op = BilinKind::Hadamard;
            Space target = Space::real(uniform_int(rng, 1, 3));
            l = adapt(l, d, target);
            r = adapt(r, d, target);
            break;
        }
        case 4: {
            op = BilinKind::MatVec;
            Space vin = Space::real(uniform_int(rng, 1, 2));
            Space vout = Space::real(uniform_int(rng, 1, 3));
            l = adapt(l, d, Space::tensor(vout, vin));
            r = adapt(r, d, vin);
            break;
        }
        default: {
            op = BilinKind::Contract;
            Space w = Space::real(uniform_int(rng, 1, 2));
            Space v = Space::real(uniform_int(rng, 1, 2));
            Space u = Space::real(uniform_int(rng, 1, 2));
            l = adapt(l, d, Space::tensor(w, v));
            r = adapt(r, d, Space::tensor(v, u));
            break;
        }
        }
        return f_comp(f_bilin(op), ffanout({l, r}));
    }

    std::optional<FunTerm> node(const Space& d, int depth) {
        switch (uniform_int(rng, 0, 7)) {
        case 0:
        case 1: {
            FunTerm f = term(d, depth - 1);
            return f_comp(term(cod(f, d), depth - 1), f);
        }
        case 2:
            if (!d.is_family() || d.family_size() == 0) return std::nullopt;
            {
                std::vector<FunTerm> parts;
                for (std::size_t i = 0; i < d.family_size(); ++i) parts.push_back(term(d.component(i), depth - 1));
                return f_par(std::move(parts), d.family_index());
            }
        case 3: {
            if (!d.is_family()) return std::nullopt;
            auto body = d.copower_body();
            if (!body) return std::nullopt;
            return f_pow(d.family_index(), term(*body, depth - 1));
        }
        case 4:
            return bilinear(d, depth);
        case 5: {
            FunTerm f = term(d, depth - 1);
            FunTerm g = adapt(term(d, depth - 1), d, cod(f, d));
            return uniform01(rng) < 0.5 ? fadd(f, g) : fsub(f, g);
        }
        case 6: {
            FunTerm f = adapt(term(d, depth - 1), d, Space::scalar());
            return fmul(f, term(d, depth - 1));
        }
        default: {
            FunTerm f = term(d, depth - 1);
            return ffanout({f, term(d, depth - 1)});
        }
        }
    }

    std::optional<FunTerm> leaf(const Space& d) {
        const std::size_t pick = uniform_int(rng, 0, 9);
        if (d.kind() == Space::Kind::Scalar && pick < 6) return scalar_leaf();
        if (pick < 8) return f_lin(lin.term(d, 1));
        if (pick == 8) return f_const(random_vector(random_space(rng, std::min<std::size_t>(max_dim, 3)), rng));
        // A scalar nonlinearity on a projection-free route: squash a linear image.
        return f_comp(scalar_leaf(), f_lin(random_dense_map(rng, d, Space::scalar())));
    }

    FunTerm term(const Space& d, int depth) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            std::optional<FunTerm> t;
            try {
                t = (depth > 0 && uniform01(rng) < 0.7) ? node(d, depth) : leaf(d);
            } catch (const Error&) {
                t.reset();
            }
            if (!t) continue;
            try {
                if (cod(*t, d).dim() <= max_dim) return *t;
            } catch (const Error&) {
            }
        }
        return f_lin(id_map(d));
    }
};

}  // namespace

LinTerm random_linterm(Rng& rng, const Space& domain, int depth, std::size_t max_dim) {
    LinGen gen{rng, max_dim};
    return gen.term(domain, depth);
}

FunTerm random_funterm(Rng& rng, const Space& domain, int depth, std::size_t max_dim) {
    FunGen gen{rng, max_dim};
    return gen.term(domain, depth);
}

}  // namespace fretchet
