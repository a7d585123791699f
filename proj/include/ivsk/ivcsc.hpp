// Index- and Value-Compressed Sparse Column format. Each column is one byte
// stream of sections: value bytes, an index width byte, then the value's row
// indices positive-delta encoded, byte-packed at that width, and closed by an
// all-zero delimiter entry.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ivsk/core.hpp"
#include "ivsk/vcsc.hpp"

namespace ivsk {

/// A value section's packed index payload. Entries are little-endian at a
/// fixed width: first the initial row index stored absolute, then strictly
/// positive deltas, then one all-zero delimiter entry.
struct IndexBlock {
    std::uint8_t width = 1;            // 1..8, minimal for the largest entry
    std::vector<std::uint8_t> payload; // (n entries + 1 delimiter) * width bytes

    bool operator==(const IndexBlock&) const = default;
};

// Smallest width (>= 1) whose 256^w range holds max_entry.
std::uint8_t compute_index_width(std::uint64_t max_entry);

// rows must be strictly increasing and nonempty.
IndexBlock encode_index_block(std::span<const std::uint64_t> rows);

// Inverse of encode_index_block; returns the rows and the bytes consumed
// (delimiter included). Throws on truncation or a row exceeding row_limit.
std::pair<std::vector<std::uint64_t>, std::size_t> decode_index_block(
    std::uint8_t width, std::span<const std::uint8_t> bytes, std::uint64_t row_limit);

struct IvcscColumn {
    std::vector<std::uint8_t> data;  // consecutive sections, ascending value order

    std::uint64_t byte_len() const { return data.size(); }
    bool operator==(const IvcscColumn&) const = default;
};

struct IvcscMatrix {
    Dims dims;
    ValueKind value_kind;
    std::vector<IvcscColumn> columns;

    std::uint64_t nnz() const;
    bool operator==(const IvcscMatrix&) const = default;
};

IvcscMatrix ivcsc_from_coo(const CooMatrix& m);
IvcscMatrix ivcsc_from_vcsc(const VcscMatrix& m);
CooMatrix ivcsc_to_coo(const IvcscMatrix& m);

// Decoded (value, rows) sections of one column, in stored order.
std::vector<std::pair<Value, std::vector<std::uint64_t>>> ivcsc_decode_column(
    const IvcscColumn& col, ValueKind kind, std::uint64_t nrows);

// Visits nonzeros in the same order as VcscMatrix::for_each on the
// equivalent matrix.
template <class F>
void ivcsc_for_each(const IvcscMatrix& m, F&& fn) {
    for (std::uint64_t c = 0; c < m.columns.size(); ++c)
        for (const auto& [value, rows] :
             ivcsc_decode_column(m.columns[c], m.value_kind, m.dims.nrows))
            for (std::uint64_t r : rows) fn(c, r, value);
}

// Rewrites every section's value bytes; index payloads stay byte-identical
// unless the multiplication collapses two values, which re-encodes the column.
IvcscMatrix ivcsc_scalar_mul(const IvcscMatrix& m, Value s);

std::vector<Value> ivcsc_spmv(const IvcscMatrix& m, std::span<const Value> x);
DenseMatrix ivcsc_spmm(const IvcscMatrix& m, const DenseMatrix& b);

// Per column: an 8-byte length slot plus the data stream.
std::uint64_t ivcsc_byte_size(const IvcscMatrix& m);

}  // namespace ivsk
