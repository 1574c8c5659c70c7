#pragma once

#include <cstdint>

namespace fretchet {

/// Counts real-by-real multiplications during one instrumented evaluation.
/// Pass a pointer to evaluation routines; a null pointer disables counting.
struct CostCounter {
    std::uint64_t scalar_mults = 0;

    void add(std::uint64_t n) noexcept { scalar_mults += n; }
};

inline void count(CostCounter* counter, std::uint64_t n = 1) noexcept {
    if (counter) counter->add(n);
}

/// Product of two formal-tensor coefficients. A coefficient of exactly 1
/// stands for an unscaled pure tensor, so multiplying by it is free.
inline double coeff_mul(double a, double b, CostCounter* counter) noexcept {
    if (a == 1.0) return b;
    if (b == 1.0) return a;
    count(counter);
    return a * b;
}

}  // namespace fretchet
