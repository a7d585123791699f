// Value-Compressed Sparse Column format. Each column stores its distinct
// values once, their occurrence counts, and the row indices grouped by value.

#pragma once

#include <span>
#include <vector>

#include "ivsk/core.hpp"
#include "ivsk/csc.hpp"

namespace ivsk {

struct VcscColumn {
    std::vector<Value> uniq_values;        // pairwise distinct, ascending numeric order
    std::vector<std::uint64_t> counts;     // occurrences per unique value, each >= 1
    std::vector<std::uint64_t> indices;    // rows grouped by value, ascending within a group

    std::uint64_t nnz() const { return indices.size(); }
    std::uint64_t n_unique() const { return uniq_values.size(); }
    bool operator==(const VcscColumn&) const = default;
};

struct VcscMatrix {
    Dims dims;
    ValueKind value_kind;
    IndexWidthConfig idx_config;
    std::vector<VcscColumn> columns;  // one per column, empty columns allowed

    std::uint64_t nnz() const;
    bool operator==(const VcscMatrix&) const = default;

    // Visits nonzeros as (col, row, value): columns ascending, then value
    // groups in ascending value order, rows ascending within a group. The
    // stream is NOT row-sorted within a column.
    template <class F>
    void for_each(F&& fn) const {
        for (std::uint64_t c = 0; c < columns.size(); ++c) {
            const VcscColumn& col = columns[c];
            std::uint64_t p = 0;
            for (std::size_t k = 0; k < col.uniq_values.size(); ++k)
                for (std::uint64_t n = 0; n < col.counts[k]; ++n, ++p)
                    fn(c, col.indices[p], col.uniq_values[k]);
        }
    }
};

VcscMatrix vcsc_from_coo(const CooMatrix& m, IndexWidthConfig idx = {});
VcscMatrix vcsc_from_csc(const CscMatrix& m);
CooMatrix vcsc_to_coo(const VcscMatrix& m);

// Multiplies only the unique values; counts and indices are untouched unless
// the multiplication collapses two previously distinct values, in which case
// the affected groups are merged to restore the invariants. When mul_count is
// given it receives the number of value multiplications performed.
VcscMatrix vcsc_scalar_mul(const VcscMatrix& m, Value s, std::uint64_t* mul_count = nullptr);

std::vector<Value> vcsc_spmv(const VcscMatrix& m, std::span<const Value> x);
DenseMatrix vcsc_spmm(const VcscMatrix& m, const DenseMatrix& b);

// Per column: values + counts + indices + one length slot holding n_unique.
std::uint64_t vcsc_byte_size(const VcscMatrix& m);

}  // namespace ivsk
