#include "ivsk/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "ivsk/csc.hpp"
#include "ivsk/ivcsc.hpp"
#include "ivsk/vcsc.hpp"

namespace ivsk {

std::vector<ColumnStats> column_stats(const CooMatrix& m) {
    std::vector<ColumnStats> stats(m.dims.ncols);
    std::unordered_map<std::uint64_t, std::size_t> group_of;
    // (value, first row, last row, count, max delta) per unique value
    struct Group {
        Value value;
        std::uint64_t first_row = 0;
        std::uint64_t last_row = 0;
        std::uint64_t count = 0;
        std::uint64_t max_delta = 0;
    };
    std::vector<Group> groups;
    std::size_t i = 0;
    for (std::uint64_t c = 0; c < m.dims.ncols; ++c) {
        groups.clear();
        group_of.clear();
        for (; i < m.triplets.size() && m.triplets[i].col == c; ++i) {
            const Triplet& t = m.triplets[i];
            auto [it, inserted] = group_of.try_emplace(t.value.bits, groups.size());
            if (inserted) {
                groups.push_back({t.value, t.row, t.row, 1, 0});
            } else {
                Group& g = groups[it->second];
                g.max_delta = std::max(g.max_delta, t.row - g.last_row);
                g.last_row = t.row;
                ++g.count;
            }
        }
        std::sort(groups.begin(), groups.end(), [&](const Group& a, const Group& b) {
            return value_less(a.value, b.value, m.value_kind);
        });
        ColumnStats& cs = stats[c];
        cs.n_unique = groups.size();
        for (const Group& g : groups) {
            cs.nnz += g.count;
            cs.per_value_occurrences.push_back(g.count);
            cs.per_value_widths.push_back(
                compute_index_width(std::max(g.first_row, g.max_delta)));
        }
    }
    return stats;
}

double column_redundancy(std::uint64_t nnz, std::uint64_t n_unique) {
    if (nnz == 0) throw std::invalid_argument("redundancy is undefined for an empty column");
    if (n_unique == 0 || n_unique > nnz)
        throw std::invalid_argument("n_unique must be in [1, nnz]");
    const double nnz_l = std::log10(static_cast<double>(nnz));
    const double uniq_l = std::log10(static_cast<double>(n_unique));
    return 1.0 - 1.0 / (nnz_l - uniq_l + 1.0);
}

double mmr(std::span<const ColumnStats> stats) {
    double sum = 0.0;
    std::uint64_t populated = 0;
    for (const ColumnStats& cs : stats) {
        if (cs.nnz == 0) continue;
        sum += column_redundancy(cs.nnz, cs.n_unique);
        ++populated;
    }
    if (populated == 0) throw std::invalid_argument("matrix has no nonzero columns");
    return sum / static_cast<double>(populated);
}

std::uint64_t csc_size_model(std::uint64_t nnz, std::uint64_t ncols, std::uint8_t val_size,
                             std::uint8_t idx_size) {
    return static_cast<std::uint64_t>(val_size) * nnz +
           static_cast<std::uint64_t>(idx_size) * nnz +
           static_cast<std::uint64_t>(idx_size) * (ncols + 1);
}

std::uint64_t vcsc_size_model(std::span<const ColumnStats> stats, std::uint8_t val_size,
                              std::uint8_t idx_size) {
    std::uint64_t total = 0;
    for (const ColumnStats& cs : stats)
        total += static_cast<std::uint64_t>(val_size) * cs.n_unique +
                 static_cast<std::uint64_t>(idx_size) * cs.n_unique +
                 static_cast<std::uint64_t>(idx_size) * cs.nnz + idx_size;
    return total;
}

std::uint64_t ivcsc_size_model(std::span<const ColumnStats> stats, std::uint8_t val_size) {
    std::uint64_t total = 0;
    for (const ColumnStats& cs : stats) {
        total += 8 + cs.n_unique * (static_cast<std::uint64_t>(val_size) + 1);
        for (std::size_t j = 0; j < cs.per_value_occurrences.size(); ++j)
            total += (cs.per_value_occurrences[j] + 1) * cs.per_value_widths[j];
    }
    return total;
}

std::uint64_t dense_size_bytes(Dims dims, std::uint8_t val_size) {
    return dims.cell_count() * val_size;
}

CompressionReport compression_report(const CooMatrix& m, std::uint8_t idx_size,
                                     bool use_models) {
    if (m.nnz() == 0) throw std::invalid_argument("cannot report on a matrix with no nonzeros");
    const auto stats = column_stats(m);

    CompressionReport rep;
    rep.dims = m.dims;
    rep.value_kind = m.value_kind;
    rep.idx_size = idx_size;
    rep.nnz = m.nnz();
    rep.sparsity = 1.0 - static_cast<double>(rep.nnz) / static_cast<double>(m.dims.cell_count());
    rep.mmr = mmr(stats);
    rep.dense_bytes = dense_size_bytes(m.dims, m.value_kind.width_bytes);
    rep.model_derived = use_models;
    if (use_models) {
        rep.csc_bytes = csc_size_model(rep.nnz, m.dims.ncols, m.value_kind.width_bytes, idx_size);
        rep.vcsc_bytes = vcsc_size_model(stats, m.value_kind.width_bytes, idx_size);
        rep.ivcsc_bytes = ivcsc_size_model(stats, m.value_kind.width_bytes);
    } else {
        rep.csc_bytes = csc_byte_size(csc_from_coo(m, {idx_size}));
        const VcscMatrix vcsc = vcsc_from_coo(m, {idx_size});
        rep.vcsc_bytes = vcsc_byte_size(vcsc);
        rep.ivcsc_bytes = ivcsc_byte_size(ivcsc_from_vcsc(vcsc));
    }
    rep.vcsc_ratio = static_cast<double>(rep.vcsc_bytes) / static_cast<double>(rep.csc_bytes);
    rep.ivcsc_ratio = static_cast<double>(rep.ivcsc_bytes) / static_cast<double>(rep.csc_bytes);
    return rep;
}

}  // namespace ivsk
