#include "ivsk/vcsc.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ivsk {

namespace {

// (value, rows) groups in ascending value order; the working form for
// construction and for the collapse-merge path of scalar multiplication.
using Groups = std::vector<std::pair<Value, std::vector<std::uint64_t>>>;

VcscColumn column_from_groups(Groups groups) {
    VcscColumn col;
    col.uniq_values.reserve(groups.size());
    col.counts.reserve(groups.size());
    for (auto& [value, rows] : groups) {
        col.uniq_values.push_back(value);
        col.counts.push_back(rows.size());
        col.indices.insert(col.indices.end(), rows.begin(), rows.end());
    }
    return col;
}

Groups groups_from_column(const VcscColumn& col) {
    Groups groups;
    groups.reserve(col.uniq_values.size());
    std::uint64_t p = 0;
    for (std::size_t k = 0; k < col.uniq_values.size(); ++k) {
        std::vector<std::uint64_t> rows(col.indices.begin() + p,
                                        col.indices.begin() + p + col.counts[k]);
        p += col.counts[k];
        groups.emplace_back(col.uniq_values[k], std::move(rows));
    }
    return groups;
}

// Re-sorts groups by value and merges groups whose values became equal.
Groups canonicalize_groups(Groups groups, ValueKind kind) {
    std::stable_sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
        return value_less(a.first, b.first, kind);
    });
    Groups merged;
    for (auto& g : groups) {
        if (!merged.empty() && merged.back().first == g.first) {
            auto& rows = merged.back().second;
            const std::size_t mid = rows.size();
            rows.insert(rows.end(), g.second.begin(), g.second.end());
            std::inplace_merge(rows.begin(), rows.begin() + mid, rows.end());
        } else {
            merged.push_back(std::move(g));
        }
    }
    return merged;
}

}  // namespace

std::uint64_t VcscMatrix::nnz() const {
    std::uint64_t total = 0;
    for (const auto& col : columns) total += col.nnz();
    return total;
}

VcscMatrix vcsc_from_coo(const CooMatrix& m, IndexWidthConfig idx) {
    validate_index_width(idx, m.dims.nrows);
    VcscMatrix out{m.dims, m.value_kind, idx, {}};
    out.columns.resize(m.dims.ncols);
    std::size_t i = 0;
    std::unordered_map<std::uint64_t, std::size_t> group_of;  // value bits -> group index
    for (std::uint64_t c = 0; c < m.dims.ncols; ++c) {
        Groups groups;
        group_of.clear();
        // Triplets are row-sorted within the column, so each group's row list
        // comes out ascending without a second sort.
        for (; i < m.triplets.size() && m.triplets[i].col == c; ++i) {
            const Triplet& t = m.triplets[i];
            auto [it, inserted] = group_of.try_emplace(t.value.bits, groups.size());
            if (inserted)
                groups.emplace_back(t.value, std::vector<std::uint64_t>{t.row});
            else
                groups[it->second].second.push_back(t.row);
        }
        std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
            return value_less(a.first, b.first, m.value_kind);
        });
        out.columns[c] = column_from_groups(std::move(groups));
    }
    return out;
}

VcscMatrix vcsc_from_csc(const CscMatrix& m) {
    return vcsc_from_coo(csc_to_coo(m), m.idx_config);
}

CooMatrix vcsc_to_coo(const VcscMatrix& m) {
    std::vector<Triplet> triplets;
    m.for_each([&](std::uint64_t c, std::uint64_t r, Value v) {
        triplets.push_back({r, c, v});
    });
    return canonicalize_coo(std::move(triplets), m.dims, m.value_kind);
}

VcscMatrix vcsc_scalar_mul(const VcscMatrix& m, Value s, std::uint64_t* mul_count) {
    if (value_is_zero(s, m.value_kind))
        throw std::invalid_argument("scalar multiply by zero would densify the matrix");
    std::uint64_t muls = 0;
    VcscMatrix out = m;
    for (auto& col : out.columns) {
        bool collapsed = false;
        for (std::size_t k = 0; k < col.uniq_values.size(); ++k) {
            col.uniq_values[k] = value_mul(col.uniq_values[k], s, m.value_kind);
            ++muls;
            if (k > 0 && !value_less(col.uniq_values[k - 1], col.uniq_values[k], m.value_kind))
                collapsed = true;
        }
        // Rare path: integer wrap or float rounding merged two values.
        if (collapsed)
            col = column_from_groups(canonicalize_groups(groups_from_column(col), m.value_kind));
    }
    if (mul_count) *mul_count = muls;
    return out;
}

std::vector<Value> vcsc_spmv(const VcscMatrix& m, std::span<const Value> x) {
    if (x.size() != m.dims.ncols) throw std::invalid_argument("vector length mismatch");
    std::vector<std::uint64_t> acc(m.dims.nrows, accum_zero(m.value_kind));
    m.for_each([&](std::uint64_t c, std::uint64_t r, Value v) {
        acc[r] = accum_add_product(acc[r], v, x[c], m.value_kind);
    });
    std::vector<Value> y(m.dims.nrows);
    for (std::uint64_t r = 0; r < m.dims.nrows; ++r) y[r] = accum_finish(acc[r], m.value_kind);
    return y;
}

DenseMatrix vcsc_spmm(const VcscMatrix& m, const DenseMatrix& b) {
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

std::uint64_t vcsc_byte_size(const VcscMatrix& m) {
    const std::uint64_t val = m.value_kind.width_bytes;
    const std::uint64_t idx = m.idx_config.idx_size;
    std::uint64_t total = 0;
    for (const auto& col : m.columns)
        total += val * col.n_unique() + idx * col.n_unique() + idx * col.nnz() + idx;
    return total;
}

}  // namespace ivsk
