#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fretchet/cost.hpp"
#include "fretchet/relation.hpp"
#include "fretchet/space.hpp"
#include "fretchet/vector.hpp"

namespace fretchet {

enum class UnitaryKind {
    Bra,              // V -> R (x) V
    IBra,             // R (x) V -> V
    Ket,              // V -> V (x) R
    IKet,             // V (x) R -> V
    TensorTranspose,  // V (x) W -> W (x) V
    Assoc,            // (U (x) V) (x) W -> U (x) (V (x) W)
    AssocInv,
    Distrib,          // (+_x V_x) (x) W -> +_x (V_x (x) W)
    DistribInv,
    Zip,              // (+_x V_x, +_x W_x) -> +_x (V_x, W_x)
    Unzip,
};

inline constexpr UnitaryKind all_unitaries[] = {
    UnitaryKind::Bra,      UnitaryKind::IBra,    UnitaryKind::Ket,        UnitaryKind::IKet,
    UnitaryKind::TensorTranspose, UnitaryKind::Assoc, UnitaryKind::AssocInv, UnitaryKind::Distrib,
    UnitaryKind::DistribInv, UnitaryKind::Zip,   UnitaryKind::Unzip,
};

UnitaryKind inverse(UnitaryKind u);
const char* unitary_name(UnitaryKind u);
/// Codomain of a unitary given its domain; TypeError if the domain has the wrong form.
Space unitary_codomain(UnitaryKind u, const Space& domain);

class LinTerm;

/// Print tag for derived forms, so that `dup`, `sum 3`, ... survive a print/parse cycle.
struct SugarTag {
    enum class Kind { Dup, Plus, Sum, Rep, Scan };
    Kind kind;
    std::optional<IndexSet> index;  // Sum, Rep
    std::size_t n = 0;              // Scan
};

namespace lin {

// Optional spaces are annotation holes, filled by elaborate().

struct Id {
    std::optional<Space> space;
};
struct Zero {
    std::optional<Space> domain;
    std::optional<Space> codomain;
};
struct Comp;
/// (v *) : V (x) U -> W (x) U for v in W (x) V; `context` is U.
struct ContractL;
/// (* w) : W (x) V -> W (x) U for w in V (x) U; `context` is W.
struct ContractR;
struct Scale {
    double k;
    std::optional<Space> space;
};
/// inj_i : V_i -> +_x V_x. `index_hint` lets the family be built from the
/// domain as body^X (used by rep).
struct Inj {
    std::size_t ordinal;  // 1-based
    std::optional<Space> family;
    std::optional<IndexSet> index_hint;
};
struct Proj {
    std::size_t ordinal;  // 1-based
    std::optional<Space> family;
};
struct Par;
struct Pow;
struct Fanout;
struct Plus;
/// red_R : V^X -> V^Y.
struct Red {
    Relation relation;
    std::optional<Space> body;
};
/// `at` is the domain.
struct Unitary {
    UnitaryKind kind;
    std::optional<Space> at;
};

}  // namespace lin

/// Symbolic linear function. Immutable; copies share structure.
class LinTerm {
public:
    enum class Kind { Id, Zero, Comp, ContractL, ContractR, Scale, Inj, Proj, Par, Pow, Fanout, Plus, Red, Unitary };
    struct Node;

    explicit LinTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    Kind kind() const noexcept;
    /// True when every annotation slot below this node is filled.
    bool closed() const noexcept;
    const std::optional<SugarTag>& sugar() const noexcept;
    LinTerm with_sugar(SugarTag tag) const;

    template <class T>
    const T* as() const noexcept;
    template <class T>
    const T& get() const;

    const Node* raw() const noexcept { return node_.get(); }

private:
    std::shared_ptr<const Node> node_;
};

namespace lin {

struct Comp {
    LinTerm g;
    LinTerm f;
};
struct ContractL {
    Vector v;
    std::optional<Space> context;
};
struct ContractR {
    Vector w;
    std::optional<Space> context;
};
struct Par {
    IndexSet index;
    std::vector<LinTerm> parts;
};
struct Pow {
    IndexSet index;
    LinTerm f;
};
struct Fanout {
    IndexSet index;
    std::vector<LinTerm> parts;
};
struct Plus {
    LinTerm f;
    LinTerm g;
};

}  // namespace lin

struct LinTerm::Node {
    std::variant<lin::Id, lin::Zero, lin::Comp, lin::ContractL, lin::ContractR, lin::Scale, lin::Inj,
                 lin::Proj, lin::Par, lin::Pow, lin::Fanout, lin::Plus, lin::Red, lin::Unitary>
        data;
    bool closed = false;
    std::optional<SugarTag> sugar;
};

inline LinTerm::Kind LinTerm::kind() const noexcept { return static_cast<Kind>(node_->data.index()); }
inline bool LinTerm::closed() const noexcept { return node_->closed; }
inline const std::optional<SugarTag>& LinTerm::sugar() const noexcept { return node_->sugar; }

template <class T>
const T* LinTerm::as() const noexcept {
    return std::get_if<T>(&node_->data);
}
template <class T>
const T& LinTerm::get() const {
    return std::get<T>(node_->data);
}

// Constructors. Every optional space may be left as a hole.

LinTerm id_map(std::optional<Space> space = std::nullopt);
LinTerm zero_map(std::optional<Space> domain = std::nullopt, std::optional<Space> codomain = std::nullopt);
/// g . f
LinTerm comp(LinTerm g, LinTerm f);
/// Right-nested composition of a chain, outermost first: comp({h, g, f}) = h . g . f.
LinTerm comp(const std::vector<LinTerm>& chain);
LinTerm contract_l(Vector v, std::optional<Space> context = std::nullopt);
LinTerm contract_r(Vector w, std::optional<Space> context = std::nullopt);
LinTerm scale_map(double k, std::optional<Space> space = std::nullopt);
LinTerm inj(std::size_t ordinal, std::optional<Space> family = std::nullopt,
            std::optional<IndexSet> index_hint = std::nullopt);
LinTerm proj(std::size_t ordinal, std::optional<Space> family = std::nullopt);
/// Pi_x f_x over `index` (default <n>).
LinTerm par_map(std::vector<LinTerm> parts, std::optional<IndexSet> index = std::nullopt);
LinTerm pow_map(IndexSet index, LinTerm f);
LinTerm fanout(std::vector<LinTerm> parts, std::optional<IndexSet> index = std::nullopt);
LinTerm plus_map(LinTerm f, LinTerm g);
LinTerm red(Relation relation, std::optional<Space> body = std::nullopt);
LinTerm unitary(UnitaryKind kind, std::optional<Space> at = std::nullopt);

// Derived forms, built only from the constructors above.

/// rep_Y = red_{<1> x Y} . inj_1 : V -> V^Y
LinTerm rep(IndexSet y, std::optional<Space> body = std::nullopt);
/// sum_Y = proj_1 . red_{Y x <1>} : V^Y -> V
LinTerm sum_over(IndexSet y, std::optional<Space> body = std::nullopt);
/// + = sum_<2>
LinTerm plus(std::optional<Space> body = std::nullopt);
/// dup = rep_<2>
LinTerm dup(std::optional<Space> body = std::nullopt);
/// scan_n = red_{(i,j) | i <= j}
LinTerm scan(std::size_t n, std::optional<Space> body = std::nullopt);
/// [g_x] = sum_X . Pi g_x
LinTerm fanin(std::vector<LinTerm> parts, std::optional<IndexSet> index = std::nullopt,
              std::optional<Space> body = std::nullopt);

struct TypeSig {
    Space domain;
    Space codomain;
};

/// Signature of a term whose holes can all be determined without a domain.
TypeSig infer_types(const LinTerm& f);
/// Fills every hole of `f` assuming it is applied to `domain`, and type-checks.
LinTerm elaborate(const LinTerm& f, const Space& domain);

/// Applies f to v (elaborating holes from v's space first).
Vector apply(const LinTerm& f, const Vector& v, CostCounter* counter = nullptr);

/// Node count; each embedded vector or relation counts as one more.
std::size_t term_size(const LinTerm& f);

/// Same constructors, annotations, and payloads (print tags are ignored).
bool structurally_equal(const LinTerm& a, const LinTerm& b);

/// Direct-sum space over `index` whose flavour follows `like`: a tuple when
/// `like` is a tuple and the index set is a segment, otherwise make_family.
Space family_like(const Space& like, const IndexSet& index, std::vector<Space> components);

}  // namespace fretchet
