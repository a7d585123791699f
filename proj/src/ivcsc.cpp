#include "ivsk/ivcsc.hpp"

#include <algorithm>
#include <stdexcept>

namespace ivsk {

namespace {

void append_le(std::vector<std::uint8_t>& out, std::uint64_t v, std::uint8_t width) {
    for (std::uint8_t i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t read_le(std::span<const std::uint8_t> bytes, std::size_t pos, std::uint8_t width) {
    std::uint64_t v = 0;
    for (std::uint8_t i = 0; i < width; ++i)
        v |= static_cast<std::uint64_t>(bytes[pos + i]) << (8 * i);
    return v;
}

void encode_section(std::vector<std::uint8_t>& out, Value value,
                    std::span<const std::uint64_t> rows, ValueKind kind) {
    append_le(out, value.bits, kind.width_bytes);
    IndexBlock block = encode_index_block(rows);
    out.push_back(block.width);
    out.insert(out.end(), block.payload.begin(), block.payload.end());
}

}  // namespace

std::uint8_t compute_index_width(std::uint64_t max_entry) {
    std::uint8_t w = 1;
    while (w < 8 && max_entry >> (8 * w)) ++w;
    return w;
}

IndexBlock encode_index_block(std::span<const std::uint64_t> rows) {
    if (rows.empty()) throw std::invalid_argument("cannot encode an empty index block");
    std::uint64_t max_entry = rows[0];
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i] <= rows[i - 1])
            throw std::invalid_argument("index block rows must be strictly increasing");
        max_entry = std::max(max_entry, rows[i] - rows[i - 1]);
    }
    IndexBlock block;
    block.width = compute_index_width(max_entry);
    block.payload.reserve((rows.size() + 1) * block.width);
    append_le(block.payload, rows[0], block.width);
    for (std::size_t i = 1; i < rows.size(); ++i)
        append_le(block.payload, rows[i] - rows[i - 1], block.width);
    append_le(block.payload, 0, block.width);  // delimiter
    return block;
}

std::pair<std::vector<std::uint64_t>, std::size_t> decode_index_block(
    std::uint8_t width, std::span<const std::uint8_t> bytes, std::uint64_t row_limit) {
    if (width < 1 || width > 8) throw std::runtime_error("bad index width in stream");
    std::vector<std::uint64_t> rows;
    std::size_t pos = 0;
    // The first entry is an absolute index, read before delimiter checking
    // begins; a leading zero entry is therefore row 0, not a delimiter.
    bool first = true;
    std::uint64_t row = 0;
    for (;;) {
        if (pos + width > bytes.size()) throw std::runtime_error("truncated index block");
        const std::uint64_t entry = read_le(bytes, pos, width);
        pos += width;
        if (!first && entry == 0) break;  // delimiter
        row = first ? entry : row + entry;
        if (row >= row_limit) throw std::runtime_error("decoded row index exceeds matrix rows");
        rows.push_back(row);
        first = false;
    }
    return {std::move(rows), pos};
}

std::uint64_t IvcscMatrix::nnz() const {
    std::uint64_t total = 0;
    ivcsc_for_each(*this, [&](std::uint64_t, std::uint64_t, Value) { ++total; });
    return total;
}

IvcscMatrix ivcsc_from_vcsc(const VcscMatrix& m) {
    IvcscMatrix out{m.dims, m.value_kind, {}};
    out.columns.resize(m.dims.ncols);
    for (std::uint64_t c = 0; c < m.dims.ncols; ++c) {
        const VcscColumn& src = m.columns[c];
        std::vector<std::uint8_t>& data = out.columns[c].data;
        std::uint64_t p = 0;
        for (std::size_t k = 0; k < src.uniq_values.size(); ++k) {
            encode_section(data, src.uniq_values[k],
                           std::span(src.indices).subspan(p, src.counts[k]), m.value_kind);
            p += src.counts[k];
        }
    }
    return out;
}

IvcscMatrix ivcsc_from_coo(const CooMatrix& m) {
    return ivcsc_from_vcsc(vcsc_from_coo(m));
}

std::vector<std::pair<Value, std::vector<std::uint64_t>>> ivcsc_decode_column(
    const IvcscColumn& col, ValueKind kind, std::uint64_t nrows) {
    std::vector<std::pair<Value, std::vector<std::uint64_t>>> sections;
    std::span<const std::uint8_t> data(col.data);
    std::size_t pos = 0;
    while (pos < data.size()) {
        if (pos + kind.width_bytes + 1 > data.size())
            throw std::runtime_error("truncated section header");
        const Value value{read_le(data, pos, kind.width_bytes)};
        pos += kind.width_bytes;
        const std::uint8_t width = data[pos++];
        auto [rows, consumed] = decode_index_block(width, data.subspan(pos), nrows);
        pos += consumed;
        sections.emplace_back(value, std::move(rows));
    }
    return sections;
}

CooMatrix ivcsc_to_coo(const IvcscMatrix& m) {
    std::vector<Triplet> triplets;
    ivcsc_for_each(m, [&](std::uint64_t c, std::uint64_t r, Value v) {
        triplets.push_back({r, c, v});
    });
    return canonicalize_coo(std::move(triplets), m.dims, m.value_kind);
}

IvcscMatrix ivcsc_scalar_mul(const IvcscMatrix& m, Value s) {
    if (value_is_zero(s, m.value_kind))
        throw std::invalid_argument("scalar multiply by zero would densify the matrix");
    IvcscMatrix out{m.dims, m.value_kind, {}};
    out.columns.resize(m.columns.size());
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
        auto sections = ivcsc_decode_column(m.columns[c], m.value_kind, m.dims.nrows);
        for (auto& [value, rows] : sections) value = value_mul(value, s, m.value_kind);
        // Multiplication can reorder or collapse values; restore ascending
        // distinct order before re-encoding.
        std::stable_sort(sections.begin(), sections.end(), [&](const auto& a, const auto& b) {
            return value_less(a.first, b.first, m.value_kind);
        });
        std::vector<std::uint8_t>& data = out.columns[c].data;
        for (std::size_t k = 0; k < sections.size();) {
            if (k + 1 < sections.size() && sections[k].first == sections[k + 1].first) {
                auto& rows = sections[k].second;
                const std::size_t mid = rows.size();
                rows.insert(rows.end(), sections[k + 1].second.begin(), sections[k + 1].second.end());
                std::inplace_merge(rows.begin(), rows.begin() + mid, rows.end());
                sections.erase(sections.begin() + static_cast<std::ptrdiff_t>(k) + 1);
                continue;
            }
            encode_section(data, sections[k].first, sections[k].second, m.value_kind);
            ++k;
        }
    }
    return out;
}

std::vector<Value> ivcsc_spmv(const IvcscMatrix& m, std::span<const Value> x) {
    if (x.size() != m.dims.ncols) throw std::invalid_argument("vector length mismatch");
    std::vector<std::uint64_t> acc(m.dims.nrows, accum_zero(m.value_kind));
    ivcsc_for_each(m, [&](std::uint64_t c, std::uint64_t r, Value v) {
        acc[r] = accum_add_product(acc[r], v, x[c], m.value_kind);
    });
    std::vector<Value> y(m.dims.nrows);
    for (std::uint64_t r = 0; r < m.dims.nrows; ++r) y[r] = accum_finish(acc[r], m.value_kind);
    return y;
}

DenseMatrix ivcsc_spmm(const IvcscMatrix& m, const DenseMatrix& b) {
    if (b.dims.nrows != m.dims.ncols) throw std::invalid_argument("inner dimension mismatch");
    if (b.value_kind != m.value_kind) throw std::invalid_argument("value kind mismatch");
    const std::uint64_t out_cols = b.dims.ncols;
    std::vector<std::uint64_t> acc(m.dims.nrows * out_cols, accum_zero(m.value_kind));
    ivcsc_for_each(m, [&](std::uint64_t c, std::uint64_t r, Value v) {
        for (std::uint64_t j = 0; j < out_cols; ++j)
            acc[r * out_cols + j] = accum_add_product(acc[r * out_cols + j], v, b.at(c, j), m.value_kind);
    });
    DenseMatrix out{{m.dims.nrows, out_cols}, m.value_kind, {}};
    out.values.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out.values[i] = accum_finish(acc[i], m.value_kind);
    return out;
}

std::uint64_t ivcsc_byte_size(const IvcscMatrix& m) {
    std::uint64_t total = 0;
    for (const auto& col : m.columns) total += 8 + col.byte_len();
    return total;
}

}  // namespace ivsk
