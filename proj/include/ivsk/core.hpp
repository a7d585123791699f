// Core domain types: matrix dimensions, runtime value kinds, canonical COO
// triplet form, and the dense oracle used by tests and reports.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ivsk {

struct Dims {
    std::uint64_t nrows = 0;
    std::uint64_t ncols = 0;

    bool operator==(const Dims&) const = default;
    std::uint64_t cell_count() const { return nrows * ncols; }
};

enum class NumericClass : std::uint8_t {
    UnsignedInt = 0,
    SignedInt = 1,
    Float = 2,
};

/// Describes how stored values are encoded: byte width (1, 2, 4 or 8) plus
/// numeric class. Floats are only valid at widths 4 and 8.
struct ValueKind {
    std::uint8_t width_bytes = 4;
    NumericClass numeric_class = NumericClass::SignedInt;

    bool operator==(const ValueKind&) const = default;
};

// Throws std::invalid_argument on an unsupported width/class combination.
void validate_value_kind(ValueKind kind);

// Short mnemonic like "u8", "i32", "f64". parse_value_kind throws on
// unrecognized names.
std::string value_kind_name(ValueKind kind);
ValueKind parse_value_kind(const std::string& name);

/// Bytes per stored index in CSC/VCSC payloads. Defaults to 4.
struct IndexWidthConfig {
    std::uint8_t idx_size = 4;

    bool operator==(const IndexWidthConfig&) const = default;
};

// Throws if idx_size is not in {1,2,4,8} or cannot address nrows rows.
void validate_index_width(IndexWidthConfig cfg, std::uint64_t nrows);

/// A single stored value in its canonical little-endian byte encoding,
/// zero-extended into 64 bits. Only the low width_bytes of `bits` may be
/// nonzero. Equality is bitwise; two values of the same kind are the same
/// matrix entry iff their bits match.
struct Value {
    std::uint64_t bits = 0;

    bool operator==(const Value&) const = default;
};

// --- Value arithmetic and conversions (all interpret per ValueKind) ---

bool value_is_zero(Value v, ValueKind kind);
bool value_less(Value a, Value b, ValueKind kind);  // numeric order
double value_to_double(Value v, ValueKind kind);

// Construction with representability checks; throw std::out_of_range when the
// number does not fit the kind (integer kinds only; float kinds round).
Value value_from_int(std::int64_t v, ValueKind kind);
Value value_from_uint(std::uint64_t v, ValueKind kind);
Value value_from_double(double v, ValueKind kind);

// Wrapping arithmetic for integer kinds, IEEE for floats.
Value value_add(Value a, Value b, ValueKind kind);
Value value_mul(Value a, Value b, ValueKind kind);

std::string value_to_string(Value v, ValueKind kind);

// --- Accumulator cells for the naive kernels ---
//
// A 64-bit cell interpreted per kind: modular integer for integer kinds,
// IEEE double bits for float kinds. Accumulating in 64 bits and truncating
// once at the end is equivalent to per-step wrapping at the stored width.

std::uint64_t accum_zero(ValueKind kind);
std::uint64_t accum_add_product(std::uint64_t acc, Value a, Value b, ValueKind kind);
Value accum_finish(std::uint64_t acc, ValueKind kind);

struct Triplet {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    Value value;

    bool operator==(const Triplet&) const = default;
};

/// Canonical coordinate form: triplets sorted by (col, row), no duplicates,
/// no zeros. The interchange hub every compressed format converts through.
struct CooMatrix {
    Dims dims;
    ValueKind value_kind;
    std::vector<Triplet> triplets;

    std::uint64_t nnz() const { return triplets.size(); }
    bool operator==(const CooMatrix&) const = default;
};

enum class DuplicatePolicy { Sum, Reject };

// Sorts by (col, row), resolves duplicates per policy, drops zeros (including
// sums that cancel to zero). Throws std::out_of_range for indices outside
// dims and std::invalid_argument for duplicates under Reject.
CooMatrix canonicalize_coo(std::vector<Triplet> triplets, Dims dims, ValueKind kind,
                           DuplicatePolicy policy = DuplicatePolicy::Sum);

bool coo_equal(const CooMatrix& a, const CooMatrix& b);

/// Row-major dense matrix of Values; the brute-force oracle.
struct DenseMatrix {
    Dims dims;
    ValueKind value_kind;
    std::vector<Value> values;  // dims.nrows * dims.ncols entries

    Value at(std::uint64_t r, std::uint64_t c) const { return values[r * dims.ncols + c]; }
    Value& at(std::uint64_t r, std::uint64_t c) { return values[r * dims.ncols + c]; }
    bool operator==(const DenseMatrix&) const = default;
};

DenseMatrix coo_to_dense(const CooMatrix& m);
CooMatrix dense_to_coo(const DenseMatrix& m);

// Dense reference kernels (oracles for the sparse kernels).
std::vector<Value> dense_matvec(const DenseMatrix& a, std::span<const Value> x);
DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix dense_scalar_mul(const DenseMatrix& a, Value s);

}  // namespace ivsk
