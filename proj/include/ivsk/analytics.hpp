// Redundancy metrics and the analytic byte-size models for all three
// formats, plus the per-matrix compression report.

#pragma once

#include <span>
#include <vector>

#include "ivsk/core.hpp"

namespace ivsk {

/// Per-column statistics the size models are evaluated from.
struct ColumnStats {
    std::uint64_t nnz = 0;
    std::uint64_t n_unique = 0;
    std::vector<std::uint64_t> per_value_occurrences;  // one per unique value
    std::vector<std::uint8_t> per_value_widths;        // packed index width per unique value
};

std::vector<ColumnStats> column_stats(const CooMatrix& m);

// Redundancy of one column: 1 - 1/(log10(nnz) - log10(n_unique) + 1).
// Zero iff every value in the column is distinct. Throws on an empty column.
double column_redundancy(std::uint64_t nnz, std::uint64_t n_unique);

// Mean matrix redundancy: column_redundancy averaged over columns with at
// least one nonzero. Throws if every column is empty.
double mmr(std::span<const ColumnStats> stats);

// Closed-form byte counts; each equals the corresponding format's actual
// encoded size on any concretely built matrix.
std::uint64_t csc_size_model(std::uint64_t nnz, std::uint64_t ncols, std::uint8_t val_size,
                             std::uint8_t idx_size);
std::uint64_t vcsc_size_model(std::span<const ColumnStats> stats, std::uint8_t val_size,
                              std::uint8_t idx_size);
std::uint64_t ivcsc_size_model(std::span<const ColumnStats> stats, std::uint8_t val_size);

std::uint64_t dense_size_bytes(Dims dims, std::uint8_t val_size);

struct CompressionReport {
    Dims dims;
    ValueKind value_kind;
    std::uint8_t idx_size = 4;
    std::uint64_t nnz = 0;
    double sparsity = 0.0;  // 1 - nnz / (nrows * ncols)
    double mmr = 0.0;
    std::uint64_t dense_bytes = 0;
    std::uint64_t csc_bytes = 0;
    std::uint64_t vcsc_bytes = 0;
    std::uint64_t ivcsc_bytes = 0;
    double vcsc_ratio = 0.0;   // vcsc_bytes / csc_bytes
    double ivcsc_ratio = 0.0;  // ivcsc_bytes / csc_bytes
    bool model_derived = false;  // sizes from the analytic models, not encoders
};

// Builds all three formats and fills every field. With use_models=true the
// sizes come from the closed forms instead of the encoders (the two agree
// byte-exactly; the flag exists for matrices too large to materialize).
// Throws on a matrix with no nonzeros.
CompressionReport compression_report(const CooMatrix& m, std::uint8_t idx_size = 4,
                                     bool use_models = false);

}  // namespace ivsk
