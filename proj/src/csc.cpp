#include "ivsk/csc.hpp"

#include <stdexcept>

namespace ivsk {

CscMatrix csc_from_coo(const CooMatrix& m, IndexWidthConfig idx) {
    validate_index_width(idx, m.dims.nrows);
    CscMatrix out{m.dims, m.value_kind, idx, {}, {}, {}};
    out.col_ptrs.assign(m.dims.ncols + 1, 0);
    out.row_indices.reserve(m.nnz());
    out.values.reserve(m.nnz());
    for (const auto& t : m.triplets) {
        ++out.col_ptrs[t.col + 1];
        out.row_indices.push_back(t.row);
        out.values.push_back(t.value);
    }
    for (std::uint64_t c = 0; c < m.dims.ncols; ++c) out.col_ptrs[c + 1] += out.col_ptrs[c];
    return out;
}

CooMatrix csc_to_coo(const CscMatrix& m) {
    CooMatrix out{m.dims, m.value_kind, {}};
    out.triplets.reserve(m.nnz());
    m.for_each([&](std::uint64_t c, std::uint64_t r, Value v) {
        out.triplets.push_back({r, c, v});
    });
    return out;
}

CscMatrix csc_scalar_mul(const CscMatrix& m, Value s) {
    if (value_is_zero(s, m.value_kind))
        throw std::invalid_argument("scalar multiply by zero would densify the matrix");
    CscMatrix out = m;
    for (auto& v : out.values) v = value_mul(v, s, m.value_kind);
    return out;
}

std::vector<Value> csc_spmv(const CscMatrix& m, std::span<const Value> x) {
    if (x.size() != m.dims.ncols) throw std::invalid_argument("vector length mismatch");
    std::vector<std::uint64_t> acc(m.dims.nrows, accum_zero(m.value_kind));
    m.for_each([&](std::uint64_t c, std::uint64_t r, Value v) {
        acc[r] = accum_add_product(acc[r], v, x[c], m.value_kind);
    });
    std::vector<Value> y(m.dims.nrows);
    for (std::uint64_t r = 0; r < m.dims.nrows; ++r) y[r] = accum_finish(acc[r], m.value_kind);
    return y;
}

DenseMatrix csc_spmm(const CscMatrix& m, const DenseMatrix& b) {
    if (b.dims.nrows != m.dims.ncols) throw std::invalid_argument("inner dimension mismatch");
    if (b.value_kind != m.value_kind) throw std::invalid_argument("value kind mismatch");
    const std::uint64_t out_cols = b.dims.ncols;
    std::vector<std::uint64_t> acc(m.dims.nrows * out_cols, accum_zero(m.value_kind));
    m.for_each([&](std::uint64_t c, std::uint64_t r, Value v) {
        for (std::uint64_t j = 0; j < out_cols; ++j)
            acc[r * out_cols + j] = accum_add_product(acc[r * out_cols + j], v, b.at(c, j), m.value_kind);
    });
    DenseMatrix out{{m.dims.nrows, out_cols}, m.value_kind, {}};
    out.values.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out.values[i] = accum_finish(acc[i], m.value_kind);
    return out;
}

std::uint64_t csc_byte_size(const CscMatrix& m) {
    const std::uint64_t val = m.value_kind.width_bytes;
    const std::uint64_t idx = m.idx_config.idx_size;
    return val * m.nnz() + idx * m.nnz() + idx * (m.dims.ncols + 1);
}

}  // namespace ivsk
