// Deterministic random matrix generation with controlled sparsity and a
// bounded pool of distinct values, so redundancy can be swept by reassigning
// values on a fixed nonzero structure.

#pragma once

#include "ivsk/core.hpp"

namespace ivsk {

struct GenSpec {
    Dims dims;
    ValueKind value_kind{4, NumericClass::Float};
    double sparsity = 0.9;        // fraction of zero cells, in [0, 1]
    std::uint64_t n_unique = 10;  // pool size of distinct nonzero values
    std::uint64_t seed = 1;       // value assignment
    std::uint64_t position_seed = 1;  // nonzero structure, kept separate so
                                      // value reassignment preserves it
};

// Per column, floor((1 - sparsity) * nrows) positions sampled uniformly
// without replacement (std::mt19937_64, partial Fisher-Yates), values drawn
// uniformly from a pool of n_unique distinct nonzero values. Deterministic
// for fixed seeds.
CooMatrix generate(const GenSpec& spec);

// Redraws every value from a fresh pool of size n_unique; the (row, col)
// structure is untouched.
CooMatrix reassign_values(const CooMatrix& m, std::uint64_t n_unique, std::uint64_t seed);

}  // namespace ivsk
