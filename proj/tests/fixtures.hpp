#pragma once

#include "fretchet/funterm.hpp"
#include "fretchet/linterm.hpp"
#include "fretchet/random.hpp"

namespace fixtures {

using namespace fretchet;

/// A random domain of the shape the unitary expects.
inline Space unitary_domain(Rng& rng, UnitaryKind k) {
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
    case UnitaryKind::Distrib: {
        const IndexSet x = random_index_set(rng, 3);
        return Space::tensor(uniform01(rng) < 0.5 ? Space::tuple({small(), small()}) : Space::pow(x, small()),
                             small());
    }
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

}  // namespace fixtures

namespace fixtures {

/// Random operand spaces (A, B) on which the bilinear operation is defined.
inline std::pair<Space, Space> bilin_operands(Rng& rng, BilinKind b) {
    auto small = [&] { return random_space(rng, 3, 1); };
    auto reals = [&] {
        return uniform01(rng) < 0.5 ? Space::real(uniform_int(rng, 1, 3))
                                    : Space::tuple({Space::scalar(), Space::real(uniform_int(rng, 1, 2))});
    };
    switch (b) {
    case BilinKind::ScalarMul:
        return {Space::scalar(), small()};
    case BilinKind::Inner: {
        Space v = small();
        return {v, v};
    }
    case BilinKind::TensorProd:
        return {small(), small()};
    case BilinKind::Contract: {
        Space v = small();
        return {Space::tensor(small(), v), Space::tensor(v, small())};
    }
    case BilinKind::MatVec: {
        Space in = small();
        return {Space::tensor(small(), in), in};
    }
    case BilinKind::Hadamard: {
        Space v = reals();
        return {v, v};
    }
    }
    return {small(), small()};
}

inline constexpr BilinKind all_bilinears[] = {BilinKind::Contract, BilinKind::TensorProd, BilinKind::Inner,
                                              BilinKind::ScalarMul, BilinKind::MatVec, BilinKind::Hadamard};

}  // namespace fixtures
