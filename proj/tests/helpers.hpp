// Shared test utilities: small random canonical matrices and value helpers.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ivsk/core.hpp"

namespace ivsk::testing {

inline const std::vector<ValueKind>& all_value_kinds() {
    static const std::vector<ValueKind> kinds = {
        {1, NumericClass::UnsignedInt}, {2, NumericClass::UnsignedInt},
        {4, NumericClass::UnsignedInt}, {8, NumericClass::UnsignedInt},
        {1, NumericClass::SignedInt},   {2, NumericClass::SignedInt},
        {4, NumericClass::SignedInt},   {8, NumericClass::SignedInt},
        {4, NumericClass::Float},       {8, NumericClass::Float},
    };
    return kinds;
}

// Canonical random matrix with roughly (1 - sparsity) fill and values drawn
// from a small integer range so every kind can represent them.
inline CooMatrix random_coo(std::mt19937& rng, Dims dims, double sparsity, ValueKind kind,
                            int max_abs_value = 50) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const bool has_negative = kind.numeric_class != NumericClass::UnsignedInt;
    std::uniform_int_distribution<int> val(has_negative ? -max_abs_value : 1, max_abs_value);
    std::vector<Triplet> triplets;
    for (std::uint64_t c = 0; c < dims.ncols; ++c)
        for (std::uint64_t r = 0; r < dims.nrows; ++r)
            if (coin(rng) >= sparsity) {
                int v = val(rng);
                if (v == 0) v = 1;
                triplets.push_back({r, c, value_from_int(v, kind)});
            }
    return canonicalize_coo(std::move(triplets), dims, kind);
}

inline std::vector<Value> random_vector(std::mt19937& rng, std::size_t n, ValueKind kind) {
    std::uniform_int_distribution<int> val(1, 9);
    std::vector<Value> x(n);
    for (auto& v : x) v = value_from_int(val(rng), kind);
    return x;
}

// Relative comparison used for float kernel results; integer kinds compare
// bitwise.
inline bool values_close(Value a, Value b, ValueKind kind, double rel_tol = 1e-5) {
    if (kind.numeric_class != NumericClass::Float) return a == b;
    const double x = value_to_double(a, kind);
    const double y = value_to_double(b, kind);
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= rel_tol * scale;
}

}  // namespace ivsk::testing
