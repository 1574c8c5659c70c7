#include "fretchet/linterm.hpp"

#include <utility>

#include "fretchet/errors.hpp"

namespace fretchet {

namespace {

using Path = std::vector<std::string>;

template <class T>
LinTerm make(T data, bool closed) {
    return LinTerm(std::shared_ptr<const LinTerm::Node>(new LinTerm::Node{std::move(data), closed, std::nullopt}));
}

[[noreturn]] void fail(const Path& path, std::string reason) { throw TypeError(path, std::move(reason)); }

std::string show(const Space& s) { return to_string(s); }

}  // namespace

LinTerm LinTerm::with_sugar(SugarTag tag) const {
    auto node = std::make_shared<Node>(*node_);
    node->sugar = std::move(tag);
    return LinTerm(std::move(node));
}

UnitaryKind inverse(UnitaryKind u) {
    switch (u) {
    case UnitaryKind::Bra: return UnitaryKind::IBra;
    case UnitaryKind::IBra: return UnitaryKind::Bra;
    case UnitaryKind::Ket: return UnitaryKind::IKet;
    case UnitaryKind::IKet: return UnitaryKind::Ket;
    case UnitaryKind::TensorTranspose: return UnitaryKind::TensorTranspose;
    case UnitaryKind::Assoc: return UnitaryKind::AssocInv;
    case UnitaryKind::AssocInv: return UnitaryKind::Assoc;
    case UnitaryKind::Distrib: return UnitaryKind::DistribInv;
    case UnitaryKind::DistribInv: return UnitaryKind::Distrib;
    case UnitaryKind::Zip: return UnitaryKind::Unzip;
    case UnitaryKind::Unzip: return UnitaryKind::Zip;
    }
    return u;
}

const char* unitary_name(UnitaryKind u) {
    switch (u) {
    case UnitaryKind::Bra: return "bra";
    case UnitaryKind::IBra: return "ibra";
    case UnitaryKind::Ket: return "ket";
    case UnitaryKind::IKet: return "iket";
    case UnitaryKind::TensorTranspose: return "ttranspose";
    case UnitaryKind::Assoc: return "assoc";
    case UnitaryKind::AssocInv: return "assoc_inv";
    case UnitaryKind::Distrib: return "distrib";
    case UnitaryKind::DistribInv: return "distrib_inv";
    case UnitaryKind::Zip: return "zip";
    case UnitaryKind::Unzip: return "unzip";
    }
    return "?";
}

Space family_like(const Space& like, const IndexSet& index, std::vector<Space> components) {
    if (like.kind() == Space::Kind::Tuple && index.is_seg()) return Space::tuple(std::move(components));
    return make_family(index, std::move(components));
}

Space unitary_codomain(UnitaryKind u, const Space& d) {
    auto bad = [&](const char* expected) -> Space {
        throw TypeError(std::string(unitary_name(u)) + " expects " + expected + ", got " + show(d));
    };
    const bool tensor = d.kind() == Space::Kind::Tensor;
    switch (u) {
    case UnitaryKind::Bra:
        return Space::tensor(Space::scalar(), d);
    case UnitaryKind::Ket:
        return Space::tensor(d, Space::scalar());
    case UnitaryKind::IBra:
        if (!tensor || d.left().kind() != Space::Kind::Scalar) return bad("R (x) V");
        return d.right();
    case UnitaryKind::IKet:
        if (!tensor || d.right().kind() != Space::Kind::Scalar) return bad("V (x) R");
        return d.left();
    case UnitaryKind::TensorTranspose:
        if (!tensor) return bad("V (x) W");
        return Space::tensor(d.right(), d.left());
    case UnitaryKind::Assoc:
        if (!tensor || d.left().kind() != Space::Kind::Tensor) return bad("(U (x) V) (x) W");
        return Space::tensor(d.left().left(), Space::tensor(d.left().right(), d.right()));
    case UnitaryKind::AssocInv:
        if (!tensor || d.right().kind() != Space::Kind::Tensor) return bad("U (x) (V (x) W)");
        return Space::tensor(Space::tensor(d.left(), d.right().left()), d.right().right());
    case UnitaryKind::Distrib: {
        if (!tensor || !d.left().is_family()) return bad("(direct sum) (x) W");
        const Space& s = d.left();
        std::vector<Space> cs;
        for (std::size_t i = 0; i < s.family_size(); ++i) cs.push_back(Space::tensor(s.component(i), d.right()));
        return family_like(s, s.family_index(), std::move(cs));
    }
    case UnitaryKind::DistribInv: {
        if (!d.is_family() || d.family_size() == 0) return bad("a non-empty direct sum of tensors");
        std::vector<Space> ls;
        std::optional<Space> w;
        for (std::size_t i = 0; i < d.family_size(); ++i) {
            Space c = d.component(i);
            if (c.kind() != Space::Kind::Tensor) return bad("a direct sum of tensors");
            if (w && !(c.right() == *w)) return bad("tensors sharing their right factor");
            w = c.right();
            ls.push_back(c.left());
        }
        return Space::tensor(family_like(d, d.family_index(), std::move(ls)), *w);
    }
    case UnitaryKind::Zip: {
        if (!d.is_family() || d.family_size() != 2 || !d.family_index().is_seg()) return bad("a pair of direct sums");
        Space a = d.component(0);
        Space b = d.component(1);
        if (!a.is_family() || !b.is_family() || !(a.family_index() == b.family_index()))
            return bad("a pair of direct sums over one index set");
        std::vector<Space> cs;
        for (std::size_t i = 0; i < a.family_size(); ++i) cs.push_back(Space::tuple({a.component(i), b.component(i)}));
        try {
            return family_like(a, a.family_index(), std::move(cs));
        } catch (const ShapeError& e) {
            throw TypeError(std::string("zip: ") + e.what());
        }
    }
    case UnitaryKind::Unzip: {
        if (!d.is_family()) return bad("a direct sum of pairs");
        std::vector<Space> as, bs;
        for (std::size_t i = 0; i < d.family_size(); ++i) {
            Space c = d.component(i);
            if (!c.is_family() || c.family_size() != 2 || !c.family_index().is_seg())
                return bad("a direct sum of pairs");
            as.push_back(c.component(0));
            bs.push_back(c.component(1));
        }
        try {
            return Space::tuple({family_like(d, d.family_index(), std::move(as)),
                                 family_like(d, d.family_index(), std::move(bs))});
        } catch (const ShapeError& e) {
            throw TypeError(std::string("unzip: ") + e.what());
        }
    }
    }
    return d;
}

// ---------------------------------------------------------------- constructors

LinTerm id_map(std::optional<Space> space) {
    const bool closed = space.has_value();
    return make(lin::Id{std::move(space)}, closed);
}

LinTerm zero_map(std::optional<Space> domain, std::optional<Space> codomain) {
    const bool closed = domain && codomain;
    return make(lin::Zero{std::move(domain), std::move(codomain)}, closed);
}

LinTerm comp(LinTerm g, LinTerm f) {
    const bool closed = g.closed() && f.closed();
    return make(lin::Comp{std::move(g), std::move(f)}, closed);
}

LinTerm comp(const std::vector<LinTerm>& chain) {
    if (chain.empty()) return id_map();
    LinTerm out = chain.back();
    for (std::size_t i = chain.size() - 1; i-- > 0;) out = comp(chain[i], out);
    return out;
}

LinTerm contract_l(Vector v, std::optional<Space> context) {
    if (v.space().kind() != Space::Kind::Tensor)
        throw TypeError("contractL payload must be a tensor, got " + show(v.space()));
    const bool closed = context.has_value();
    return make(lin::ContractL{std::move(v), std::move(context)}, closed);
}

LinTerm contract_r(Vector w, std::optional<Space> context) {
    if (w.space().kind() != Space::Kind::Tensor)
        throw TypeError("contractR payload must be a tensor, got " + show(w.space()));
    const bool closed = context.has_value();
    return make(lin::ContractR{std::move(w), std::move(context)}, closed);
}

LinTerm scale_map(double k, std::optional<Space> space) {
    const bool closed = space.has_value();
    return make(lin::Scale{k, std::move(space)}, closed);
}

LinTerm inj(std::size_t ordinal, std::optional<Space> family, std::optional<IndexSet> index_hint) {
    if (ordinal == 0) throw TypeError("inj ordinals start at 1");
    const bool closed = family.has_value();
    return make(lin::Inj{ordinal, std::move(family), std::move(index_hint)}, closed);
}

LinTerm proj(std::size_t ordinal, std::optional<Space> family) {
    if (ordinal == 0) throw TypeError("proj ordinals start at 1");
    const bool closed = family.has_value();
    return make(lin::Proj{ordinal, std::move(family)}, closed);
}

LinTerm par_map(std::vector<LinTerm> parts, std::optional<IndexSet> index) {
    IndexSet x = index ? *index : IndexSet::seg(parts.size());
    if (x.card() != parts.size())
        throw TypeError("par over " + to_string(x) + " needs " + std::to_string(x.card()) + " parts");
    bool closed = true;
    for (const auto& p : parts) closed = closed && p.closed();
    return make(lin::Par{std::move(x), std::move(parts)}, closed);
}

LinTerm pow_map(IndexSet index, LinTerm f) {
    const bool closed = f.closed();
    return make(lin::Pow{std::move(index), std::move(f)}, closed);
}

LinTerm fanout(std::vector<LinTerm> parts, std::optional<IndexSet> index) {
    IndexSet x = index ? *index : IndexSet::seg(parts.size());
    if (x.card() != parts.size())
        throw TypeError("fanout over " + to_string(x) + " needs " + std::to_string(x.card()) + " parts");
    bool closed = !parts.empty();
    for (const auto& p : parts) closed = closed && p.closed();
    return make(lin::Fanout{std::move(x), std::move(parts)}, closed);
}

LinTerm plus_map(LinTerm f, LinTerm g) {
    const bool closed = f.closed() && g.closed();
    return make(lin::Plus{std::move(f), std::move(g)}, closed);
}

LinTerm red(Relation relation, std::optional<Space> body) {
    const bool closed = body.has_value();
    return make(lin::Red{std::move(relation), std::move(body)}, closed);
}

LinTerm unitary(UnitaryKind kind, std::optional<Space> at) {
    const bool closed = at.has_value();
    return make(lin::Unitary{kind, std::move(at)}, closed);
}

LinTerm rep(IndexSet y, std::optional<Space> body) {
    const IndexSet one = IndexSet::seg(1);
    std::optional<Space> fam;
    if (body) fam = Space::pow(one, *body);
    LinTerm t = comp(red(Relation::full(one, y), body), inj(1, fam, one));
    return t.with_sugar({SugarTag::Kind::Rep, std::move(y), 0});
}

LinTerm sum_over(IndexSet y, std::optional<Space> body) {
    const IndexSet one = IndexSet::seg(1);
    std::optional<Space> fam;
    if (body) fam = Space::pow(one, *body);
    LinTerm t = comp(proj(1, fam), red(Relation::full(y, one), body));
    return t.with_sugar({SugarTag::Kind::Sum, std::move(y), 0});
}

LinTerm plus(std::optional<Space> body) {
    return sum_over(IndexSet::seg(2), std::move(body)).with_sugar({SugarTag::Kind::Plus, std::nullopt, 0});
}

LinTerm dup(std::optional<Space> body) {
    return rep(IndexSet::seg(2), std::move(body)).with_sugar({SugarTag::Kind::Dup, std::nullopt, 0});
}

LinTerm scan(std::size_t n, std::optional<Space> body) {
    return red(Relation::scan(n), std::move(body)).with_sugar({SugarTag::Kind::Scan, std::nullopt, n});
}

LinTerm fanin(std::vector<LinTerm> parts, std::optional<IndexSet> index, std::optional<Space> body) {
    IndexSet x = index ? *index : IndexSet::seg(parts.size());
    return comp(sum_over(x, std::move(body)), par_map(std::move(parts), x));
}

// ---------------------------------------------------------------- elaboration

namespace {

struct Elab {
    LinTerm term;
    Space domain;
    Space codomain;
};

LinTerm keep_tag(const LinTerm& original, LinTerm fresh) {
    if (original.sugar()) return fresh.with_sugar(*original.sugar());
    return fresh;
}

void require_equal(const Path& path, const Space& expected, const Space& got, const std::string& what) {
    if (!(expected == got)) fail(path, what + ": expected " + show(expected) + ", got " + show(got));
}

Space family_or_fail(const Path& path, const IndexSet& index, std::vector<Space> cs, const std::optional<Space>& like) {
    try {
        return like ? family_like(*like, index, std::move(cs)) : make_family(index, std::move(cs));
    } catch (const ShapeError& e) {
        fail(path, e.what());
    }
}

Elab elab(const LinTerm& f, const std::optional<Space>& dom, Path& path);

Elab elab_child(const LinTerm& f, const std::optional<Space>& dom, Path& path, std::string label) {
    path.push_back(std::move(label));
    Elab e = elab(f, dom, path);
    path.pop_back();
    return e;
}

Elab elab(const LinTerm& f, const std::optional<Space>& dom, Path& path) {
    switch (f.kind()) {
    case LinTerm::Kind::Id: {
        const auto& s = f.get<lin::Id>();
        if (!s.space && !dom) fail(path, "cannot infer the space of id; annotate it as id[V]");
        Space v = s.space ? *s.space : *dom;
        if (dom) require_equal(path, v, *dom, "id applied to the wrong space");
        return {s.space ? f : id_map(v), v, v};
    }
    case LinTerm::Kind::Zero: {
        const auto& s = f.get<lin::Zero>();
        if (!s.domain && !dom) fail(path, "cannot infer the domain of zero");
        if (!s.codomain) fail(path, "cannot infer the codomain of zero; annotate it as zero[V -> W]");
        Space d = s.domain ? *s.domain : *dom;
        if (dom) require_equal(path, d, *dom, "zero applied to the wrong space");
        return {f.closed() ? f : zero_map(d, *s.codomain), d, *s.codomain};
    }
    case LinTerm::Kind::Comp: {
        const auto& s = f.get<lin::Comp>();
        Elab ef = elab_child(s.f, dom, path, "right");
        Elab eg = elab_child(s.g, ef.codomain, path, "left");
        LinTerm t = (ef.term.raw() == s.f.raw() && eg.term.raw() == s.g.raw())
                        ? f
                        : keep_tag(f, comp(eg.term, ef.term));
        return {t, ef.domain, eg.codomain};
    }
    case LinTerm::Kind::ContractL: {
        const auto& s = f.get<lin::ContractL>();
        const Space& vs = s.v.space();
        Space w = vs.left();
        Space v = vs.right();
        std::optional<Space> u = s.context;
        if (dom) {
            if (dom->kind() != Space::Kind::Tensor) fail(path, "contractL expects a tensor input, got " + show(*dom));
            require_equal(path, v, dom->left(), "contractL input's left factor");
            if (u)
                require_equal(path, *u, dom->right(), "contractL context");
            else
                u = dom->right();
        }
        if (!u) fail(path, "cannot infer the context factor of contractL; annotate it as contractL[U]");
        return {s.context ? f : contract_l(s.v, *u), Space::tensor(v, *u), Space::tensor(w, *u)};
    }
    case LinTerm::Kind::ContractR: {
        const auto& s = f.get<lin::ContractR>();
        const Space& ws = s.w.space();
        Space v = ws.left();
        Space u = ws.right();
        std::optional<Space> w = s.context;
        if (dom) {
            if (dom->kind() != Space::Kind::Tensor) fail(path, "contractR expects a tensor input, got " + show(*dom));
            require_equal(path, v, dom->right(), "contractR input's right factor");
            if (w)
                require_equal(path, *w, dom->left(), "contractR context");
            else
                w = dom->left();
        }
        if (!w) fail(path, "cannot infer the context factor of contractR; annotate it as contractR[W]");
        return {s.context ? f : contract_r(s.w, *w), Space::tensor(*w, v), Space::tensor(*w, u)};
    }
    case LinTerm::Kind::Scale: {
        const auto& s = f.get<lin::Scale>();
        if (!s.space && !dom) fail(path, "cannot infer the space of a scaling; annotate it as k *.[V]");
        Space v = s.space ? *s.space : *dom;
        if (dom) require_equal(path, v, *dom, "scaling applied to the wrong space");
        return {s.space ? f : scale_map(s.k, v), v, v};
    }
    case LinTerm::Kind::Inj: {
        const auto& s = f.get<lin::Inj>();
        std::optional<Space> fam = s.family;
        if (!fam && s.index_hint && dom) fam = Space::pow(*s.index_hint, *dom);
        if (!fam) fail(path, "cannot infer the target of inj " + std::to_string(s.ordinal) + "; annotate it as inj[S]");
        if (!fam->is_family()) fail(path, "inj target " + show(*fam) + " is not a direct sum");
        if (s.ordinal > fam->family_size())
            fail(path, "inj " + std::to_string(s.ordinal) + " out of range for " + show(*fam));
        Space c = fam->component(s.ordinal - 1);
        if (dom) require_equal(path, c, *dom, "inj applied to the wrong space");
        return {s.family ? f : inj(s.ordinal, fam, s.index_hint), c, *fam};
    }
    case LinTerm::Kind::Proj: {
        const auto& s = f.get<lin::Proj>();
        if (!s.family && !dom) fail(path, "cannot infer the source of proj; annotate it as proj[S]");
        Space fam = s.family ? *s.family : *dom;
        if (dom) require_equal(path, fam, *dom, "proj applied to the wrong space");
        if (!fam.is_family()) fail(path, "proj source " + show(fam) + " is not a direct sum");
        if (s.ordinal > fam.family_size())
            fail(path, "proj " + std::to_string(s.ordinal) + " out of range for " + show(fam));
        return {s.family ? f : proj(s.ordinal, fam), fam, fam.component(s.ordinal - 1)};
    }
    case LinTerm::Kind::Par: {
        const auto& s = f.get<lin::Par>();
        const std::size_t n = s.parts.size();
        if (dom && (!dom->is_family() || !(dom->family_index() == s.index)))
            fail(path, "par over " + to_string(s.index) + " applied to " + show(*dom));
        std::vector<LinTerm> parts;
        std::vector<Space> ds, cs;
        bool same = true;
        for (std::size_t i = 0; i < n; ++i) {
            std::optional<Space> di;
            if (dom) di = dom->component(i);
            Elab e = elab_child(s.parts[i], di, path, "par[" + std::to_string(i + 1) + "]");
            same = same && e.term.raw() == s.parts[i].raw();
            parts.push_back(e.term);
            ds.push_back(e.domain);
            cs.push_back(e.codomain);
        }
        Space d = dom ? *dom : family_or_fail(path, s.index, ds, std::nullopt);
        Space c = family_or_fail(path, s.index, cs, dom);
        return {same ? f : keep_tag(f, par_map(std::move(parts), s.index)), d, c};
    }
    case LinTerm::Kind::Pow: {
        const auto& s = f.get<lin::Pow>();
        std::optional<Space> body;
        if (dom) {
            if (!dom->is_family() || !(dom->family_index() == s.index))
                fail(path, "pow over " + to_string(s.index) + " applied to " + show(*dom));
            body = dom->copower_body();
            if (!body && s.index.card() > 0) fail(path, "pow applied to an inhomogeneous direct sum " + show(*dom));
        }
        Elab e = elab_child(s.f, body, path, "pow");
        const std::size_t n = s.index.card();
        Space d = dom ? *dom : Space::pow(s.index, e.domain);
        Space c = dom ? family_or_fail(path, s.index, std::vector<Space>(n, e.codomain), dom)
                      : Space::pow(s.index, e.codomain);
        return {e.term.raw() == s.f.raw() ? f : pow_map(s.index, e.term), d, c};
    }
    case LinTerm::Kind::Fanout: {
        const auto& s = f.get<lin::Fanout>();
        if (s.parts.empty() && !dom) fail(path, "cannot infer the domain of an empty fanout");
        std::optional<Space> d = dom;
        std::vector<LinTerm> parts;
        std::vector<Space> cs;
        bool same = true;
        for (std::size_t i = 0; i < s.parts.size(); ++i) {
            Elab e = elab_child(s.parts[i], d, path, "fanout[" + std::to_string(i + 1) + "]");
            same = same && e.term.raw() == s.parts[i].raw();
            d = e.domain;
            parts.push_back(e.term);
            cs.push_back(e.codomain);
        }
        Space c = family_or_fail(path, s.index, cs, std::nullopt);
        return {same ? f : fanout(std::move(parts), s.index), *d, c};
    }
    case LinTerm::Kind::Plus: {
        const auto& s = f.get<lin::Plus>();
        const bool g_first = !dom && !s.f.closed() && s.g.closed();
        Elab ef = g_first ? elab_child(s.g, dom, path, "plus.right") : elab_child(s.f, dom, path, "plus.left");
        Elab eg = g_first ? elab_child(s.f, ef.domain, path, "plus.left")
                          : elab_child(s.g, ef.domain, path, "plus.right");
        if (g_first) std::swap(ef, eg);
        require_equal(path, ef.codomain, eg.codomain, "summands have different codomains");
        LinTerm t = (ef.term.raw() == s.f.raw() && eg.term.raw() == s.g.raw()) ? f
                                                                                : plus_map(ef.term, eg.term);
        return {t, ef.domain, ef.codomain};
    }
    case LinTerm::Kind::Red: {
        const auto& s = f.get<lin::Red>();
        const IndexSet& x = s.relation.domain();
        const IndexSet& y = s.relation.codomain();
        std::optional<Space> body = s.body;
        if (dom) {
            if (!dom->is_family() || !(dom->family_index() == x))
                fail(path, "red over " + to_string(x) + " applied to " + show(*dom));
            auto b = dom->copower_body();
            if (b) {
                if (body)
                    require_equal(path, *body, *b, "red element space");
                else
                    body = b;
            } else if (x.card() > 0) {
                fail(path, "red applied to an inhomogeneous direct sum " + show(*dom));
            }
        }
        if (!body) fail(path, "cannot infer the element space of red; annotate it as red[V]");
        Space d = dom ? *dom : Space::pow(x, *body);
        Space c = dom ? family_or_fail(path, y, std::vector<Space>(y.card(), *body), dom) : Space::pow(y, *body);
        return {s.body ? f : keep_tag(f, red(s.relation, body)), d, c};
    }
    case LinTerm::Kind::Unitary: {
        const auto& s = f.get<lin::Unitary>();
        if (!s.at && !dom)
            fail(path, std::string("cannot infer the domain of ") + unitary_name(s.kind) + "; annotate it");
        Space d = s.at ? *s.at : *dom;
        if (dom) require_equal(path, d, *dom, std::string(unitary_name(s.kind)) + " applied to the wrong space");
        Space c = d;
        try {
            c = unitary_codomain(s.kind, d);
        } catch (const TypeError& e) {
            fail(path, e.reason());
        }
        return {s.at ? f : unitary(s.kind, d), d, c};
    }
    }
    fail(path, "unknown term");
}

// ---------------------------------------------------------------- evaluation

Vector eval(const LinTerm& f, const Vector& v, CostCounter* counter);

Vector eval_unitary(const lin::Unitary& u, const Vector& v, CostCounter* counter) {
    const Space& d = *u.at;
    const bool zero = v.kind() == Vector::Kind::Zero;
    switch (u.kind) {
    case UnitaryKind::Bra:
        if (zero) return Vector::zero(unitary_codomain(u.kind, d));
        return Vector::pure(Vector::scalar(1.0), v);
    case UnitaryKind::Ket:
        if (zero) return Vector::zero(unitary_codomain(u.kind, d));
        return Vector::pure(v, Vector::scalar(1.0));
    case UnitaryKind::IBra:
    case UnitaryKind::IKet: {
        const bool left = u.kind == UnitaryKind::IBra;
        Vector acc = Vector::zero(left ? d.right() : d.left());
        if (zero) return acc;
        for (const auto& t : v.terms()) {
            const Vector& k = left ? t.left : t.right;
            const Vector& w = left ? t.right : t.left;
            const double s = coeff_mul(t.coeff, k.value(), counter);
            acc = vec_add(acc, s == 1.0 ? w : vec_scale(s, w, counter));
        }
        return acc;
    }
    case UnitaryKind::TensorTranspose:
        return transpose(v);
    case UnitaryKind::Assoc: {
        const Space cod = unitary_codomain(u.kind, d);
        if (zero) return Vector::zero(cod);
        std::vector<TensorTerm> out;
        for (const auto& t : v.terms()) {
            if (t.left.kind() == Vector::Kind::Zero) continue;
            for (const auto& s : t.left.terms())
                out.push_back({coeff_mul(t.coeff, s.coeff, counter), s.left, Vector::pure(s.right, t.right)});
        }
        return Vector::tensor(cod.left(), cod.right(), std::move(out));
    }
    case UnitaryKind::AssocInv: {
        const Space cod = unitary_codomain(u.kind, d);
        if (zero) return Vector::zero(cod);
        std::vector<TensorTerm> out;
        for (const auto& t : v.terms()) {
            if (t.right.kind() == Vector::Kind::Zero) continue;
            for (const auto& s : t.right.terms())
                out.push_back({coeff_mul(t.coeff, s.coeff, counter), Vector::pure(t.left, s.left), s.right});
        }
        return Vector::tensor(cod.left(), cod.right(), std::move(out));
    }
    case UnitaryKind::Distrib: {
        const Space cod = unitary_codomain(u.kind, d);
        if (zero) return Vector::zero(cod);
        const std::size_t n = cod.family_size();
        std::vector<Vector> items;
        for (std::size_t i = 0; i < n; ++i) items.push_back(Vector::zero(cod.component(i)));
        for (const auto& t : v.terms()) {
            auto parts = family_items(t.left);
            for (std::size_t i = 0; i < n; ++i)
                if (parts[i].kind() != Vector::Kind::Zero)
                    items[i] = vec_add(items[i], Vector::pure(parts[i], t.right, t.coeff));
        }
        return Vector::family(cod, std::move(items));
    }
    case UnitaryKind::DistribInv: {
        const Space cod = unitary_codomain(u.kind, d);
        if (zero) return Vector::zero(cod);
        const Space& s = cod.left();
        const std::size_t n = s.family_size();
        std::vector<TensorTerm> out;
        for (std::size_t i = 0; i < n; ++i) {
            Vector t = v.item(i);
            if (t.kind() == Vector::Kind::Zero) continue;
            for (const auto& term : t.terms()) {
                std::vector<Vector> items;
                for (std::size_t j = 0; j < n; ++j) items.push_back(j == i ? term.left : Vector::zero(s.component(j)));
                out.push_back({term.coeff, Vector::family(s, std::move(items)), term.right});
            }
        }
        return Vector::tensor(s, cod.right(), std::move(out));
    }
    case UnitaryKind::Zip: {
        const Space cod = unitary_codomain(u.kind, d);
        if (zero) return Vector::zero(cod);
        auto a = family_items(v.item(0));
        auto b = family_items(v.item(1));
        std::vector<Vector> items;
        for (std::size_t i = 0; i < a.size(); ++i) items.push_back(Vector::family(cod.component(i), {a[i], b[i]}));
        return Vector::family(cod, std::move(items));
    }
    case UnitaryKind::Unzip: {
        const Space cod = unitary_codomain(u.kind, d);
        if (zero) return Vector::zero(cod);
        auto pairs = family_items(v);
        std::vector<Vector> as, bs;
        for (const auto& p : pairs) {
            as.push_back(p.item(0));
            bs.push_back(p.item(1));
        }
        return Vector::family(cod, {Vector::family(cod.component(0), std::move(as)),
                                    Vector::family(cod.component(1), std::move(bs))});
    }
    }
    return v;
}

Vector eval(const LinTerm& f, const Vector& v, CostCounter* counter) {
    switch (f.kind()) {
    case LinTerm::Kind::Id:
        return v;
    case LinTerm::Kind::Zero:
        return Vector::zero(*f.get<lin::Zero>().codomain);
    case LinTerm::Kind::Comp: {
        const auto& s = f.get<lin::Comp>();
        return eval(s.g, eval(s.f, v, counter), counter);
    }
    case LinTerm::Kind::ContractL:
        return contract(f.get<lin::ContractL>().v, v, counter);
    case LinTerm::Kind::ContractR:
        return contract(v, f.get<lin::ContractR>().w, counter);
    case LinTerm::Kind::Scale:
        return vec_scale(f.get<lin::Scale>().k, v, counter);
    case LinTerm::Kind::Inj: {
        const auto& s = f.get<lin::Inj>();
        const Space& fam = *s.family;
        std::vector<Vector> items;
        for (std::size_t i = 0; i < fam.family_size(); ++i)
            items.push_back(i + 1 == s.ordinal ? v : Vector::zero(fam.component(i)));
        return Vector::family(fam, std::move(items));
    }
    case LinTerm::Kind::Proj:
        return v.item(f.get<lin::Proj>().ordinal - 1);
    case LinTerm::Kind::Par: {
        const auto& s = f.get<lin::Par>();
        auto items = family_items(v);
        std::vector<Space> spaces;
        for (std::size_t i = 0; i < items.size(); ++i) {
            items[i] = eval(s.parts[i], items[i], counter);
            spaces.push_back(items[i].space());
        }
        return Vector::family(family_like(v.space(), s.index, std::move(spaces)), std::move(items));
    }
    case LinTerm::Kind::Pow: {
        const auto& s = f.get<lin::Pow>();
        auto items = family_items(v);
        std::vector<Space> spaces;
        for (auto& it : items) {
            it = eval(s.f, it, counter);
            spaces.push_back(it.space());
        }
        return Vector::family(family_like(v.space(), s.index, std::move(spaces)), std::move(items));
    }
    case LinTerm::Kind::Fanout: {
        const auto& s = f.get<lin::Fanout>();
        std::vector<Vector> items;
        std::vector<Space> spaces;
        for (const auto& p : s.parts) {
            items.push_back(eval(p, v, counter));
            spaces.push_back(items.back().space());
        }
        return Vector::family(make_family(s.index, std::move(spaces)), std::move(items));
    }
    case LinTerm::Kind::Plus: {
        const auto& s = f.get<lin::Plus>();
        return vec_add(eval(s.f, v, counter), eval(s.g, v, counter), counter);
    }
    case LinTerm::Kind::Red: {
        const auto& s = f.get<lin::Red>();
        const auto in = family_items(v);
        const IndexSet& y = s.relation.codomain();
        std::vector<Vector> out(y.card(), Vector::zero(*s.body));
        for (const auto& [i, j] : s.relation.pairs()) out[j] = vec_add(out[j], in[i], counter);
        return Vector::family(family_like(v.space(), y, std::vector<Space>(y.card(), *s.body)), std::move(out));
    }
    case LinTerm::Kind::Unitary:
        return eval_unitary(f.get<lin::Unitary>(), v, counter);
    }
    return v;
}

bool same_opt(const std::optional<Space>& a, const std::optional<Space>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || identical(*a, *b);
}

bool same_parts(const std::vector<LinTerm>& a, const std::vector<LinTerm>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!structurally_equal(a[i], b[i])) return false;
    return true;
}

}  // namespace

TypeSig infer_types(const LinTerm& f) {
    Path path;
    Elab e = elab(f, std::nullopt, path);
    return {e.domain, e.codomain};
}

LinTerm elaborate(const LinTerm& f, const Space& domain) {
    Path path;
    return elab(f, domain, path).term;
}

Vector apply(const LinTerm& f, const Vector& v, CostCounter* counter) {
    Path path;
    Elab e = elab(f, v.space(), path);
    return eval(e.term, v, counter);
}

std::size_t term_size(const LinTerm& f) {
    switch (f.kind()) {
    case LinTerm::Kind::Comp: {
        const auto& s = f.get<lin::Comp>();
        return 1 + term_size(s.g) + term_size(s.f);
    }
    case LinTerm::Kind::ContractL:
    case LinTerm::Kind::ContractR:
    case LinTerm::Kind::Red:
        return 2;
    case LinTerm::Kind::Par: {
        std::size_t n = 1;
        for (const auto& p : f.get<lin::Par>().parts) n += term_size(p);
        return n;
    }
    case LinTerm::Kind::Fanout: {
        std::size_t n = 1;
        for (const auto& p : f.get<lin::Fanout>().parts) n += term_size(p);
        return n;
    }
    case LinTerm::Kind::Pow:
        return 1 + term_size(f.get<lin::Pow>().f);
    case LinTerm::Kind::Plus: {
        const auto& s = f.get<lin::Plus>();
        return 1 + term_size(s.f) + term_size(s.g);
    }
    default:
        return 1;
    }
}

bool structurally_equal(const LinTerm& a, const LinTerm& b) {
    if (a.raw() == b.raw()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case LinTerm::Kind::Id:
        return same_opt(a.get<lin::Id>().space, b.get<lin::Id>().space);
    case LinTerm::Kind::Zero: {
        const auto& x = a.get<lin::Zero>();
        const auto& y = b.get<lin::Zero>();
        return same_opt(x.domain, y.domain) && same_opt(x.codomain, y.codomain);
    }
    case LinTerm::Kind::Comp: {
        const auto& x = a.get<lin::Comp>();
        const auto& y = b.get<lin::Comp>();
        return structurally_equal(x.g, y.g) && structurally_equal(x.f, y.f);
    }
    case LinTerm::Kind::ContractL: {
        const auto& x = a.get<lin::ContractL>();
        const auto& y = b.get<lin::ContractL>();
        return same_opt(x.context, y.context) && structurally_equal(x.v, y.v);
    }
    case LinTerm::Kind::ContractR: {
        const auto& x = a.get<lin::ContractR>();
        const auto& y = b.get<lin::ContractR>();
        return same_opt(x.context, y.context) && structurally_equal(x.w, y.w);
    }
    case LinTerm::Kind::Scale: {
        const auto& x = a.get<lin::Scale>();
        const auto& y = b.get<lin::Scale>();
        return x.k == y.k && same_opt(x.space, y.space);
    }
    case LinTerm::Kind::Inj: {
        const auto& x = a.get<lin::Inj>();
        const auto& y = b.get<lin::Inj>();
        if (x.index_hint.has_value() != y.index_hint.has_value()) return false;
        if (x.index_hint && !(*x.index_hint == *y.index_hint)) return false;
        return x.ordinal == y.ordinal && same_opt(x.family, y.family);
    }
    case LinTerm::Kind::Proj: {
        const auto& x = a.get<lin::Proj>();
        const auto& y = b.get<lin::Proj>();
        return x.ordinal == y.ordinal && same_opt(x.family, y.family);
    }
    case LinTerm::Kind::Par: {
        const auto& x = a.get<lin::Par>();
        const auto& y = b.get<lin::Par>();
        return x.index == y.index && same_parts(x.parts, y.parts);
    }
    case LinTerm::Kind::Pow: {
        const auto& x = a.get<lin::Pow>();
        const auto& y = b.get<lin::Pow>();
        return x.index == y.index && structurally_equal(x.f, y.f);
    }
    case LinTerm::Kind::Fanout: {
        const auto& x = a.get<lin::Fanout>();
        const auto& y = b.get<lin::Fanout>();
        return x.index == y.index && same_parts(x.parts, y.parts);
    }
    case LinTerm::Kind::Plus: {
        const auto& x = a.get<lin::Plus>();
        const auto& y = b.get<lin::Plus>();
        return structurally_equal(x.f, y.f) && structurally_equal(x.g, y.g);
    }
    case LinTerm::Kind::Red: {
        const auto& x = a.get<lin::Red>();
        const auto& y = b.get<lin::Red>();
        return x.relation == y.relation && same_opt(x.body, y.body);
    }
    case LinTerm::Kind::Unitary: {
        const auto& x = a.get<lin::Unitary>();
        const auto& y = b.get<lin::Unitary>();
        return x.kind == y.kind && same_opt(x.at, y.at);
    }
    }
    return false;
}

}  // namespace fretchet
