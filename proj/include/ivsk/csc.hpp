// Baseline Compressed Sparse Column format with naive kernels. Serves as the
// comparator for the value-compressed formats.

#pragma once

#include <span>
#include <vector>

#include "ivsk/core.hpp"

namespace ivsk {

struct CscMatrix {
    Dims dims;
    ValueKind value_kind;
    IndexWidthConfig idx_config;
    std::vector<std::uint64_t> col_ptrs;     // ncols + 1 offsets, col_ptrs[0] == 0
    std::vector<std::uint64_t> row_indices;  // nnz, strictly increasing per column
    std::vector<Value> values;               // nnz, no zeros

    std::uint64_t nnz() const { return values.size(); }
    bool operator==(const CscMatrix&) const = default;

    // Visits nonzeros as (col, row, value), columns ascending, rows ascending
    // within each column.
    template <class F>
    void for_each(F&& fn) const {
        for (std::uint64_t c = 0; c < dims.ncols; ++c)
            for (std::uint64_t p = col_ptrs[c]; p < col_ptrs[c + 1]; ++p)
                fn(c, row_indices[p], values[p]);
    }
};

CscMatrix csc_from_coo(const CooMatrix& m, IndexWidthConfig idx = {});
CooMatrix csc_to_coo(const CscMatrix& m);

// Structure unchanged, every stored value multiplied by s. s must be nonzero.
CscMatrix csc_scalar_mul(const CscMatrix& m, Value s);

// y = A * x, naive column-major accumulation.
std::vector<Value> csc_spmv(const CscMatrix& m, std::span<const Value> x);

// C = A * B, the same naive accumulation per output column.
DenseMatrix csc_spmm(const CscMatrix& m, const DenseMatrix& b);

// Format size per the CSC byte model: values + row indices + column pointers.
std::uint64_t csc_byte_size(const CscMatrix& m);

}  // namespace ivsk
