#include "ivsk/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ivsk {

namespace {

std::uint64_t width_mask(std::uint8_t width) {
    return width >= 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * width)) - 1;
}

std::int64_t sign_extend(std::uint64_t raw, std::uint8_t width) {
    if (width >= 8) return static_cast<std::int64_t>(raw);
    const std::uint64_t sign_bit = std::uint64_t{1} << (8 * width - 1);
    if (raw & sign_bit) raw |= ~width_mask(width);
    return static_cast<std::int64_t>(raw);
}

double float_bits_to_double(std::uint64_t bits, std::uint8_t width) {
    if (width == 4) return std::bit_cast<float>(static_cast<std::uint32_t>(bits));
    return std::bit_cast<double>(bits);
}

std::uint64_t double_to_float_bits(double v, std::uint8_t width) {
    if (width == 4) return std::bit_cast<std::uint32_t>(static_cast<float>(v));
    return std::bit_cast<std::uint64_t>(v);
}

}  // namespace

void validate_value_kind(ValueKind kind) {
    const auto w = kind.width_bytes;
    if (w != 1 && w != 2 && w != 4 && w != 8)
        throw std::invalid_argument("value width must be 1, 2, 4 or 8 bytes");
    if (kind.numeric_class == NumericClass::Float && w != 4 && w != 8)
        throw std::invalid_argument("float values must be 4 or 8 bytes wide");
}

std::string value_kind_name(ValueKind kind) {
    char prefix = 0;
    switch (kind.numeric_class) {
        case NumericClass::UnsignedInt: prefix = 'u'; break;
        case NumericClass::SignedInt: prefix = 'i'; break;
        case NumericClass::Float: prefix = 'f'; break;
    }
    return prefix + std::to_string(kind.width_bytes * 8);
}

ValueKind parse_value_kind(const std::string& name) {
    static const std::pair<const char*, ValueKind> table[] = {
        {"u8", {1, NumericClass::UnsignedInt}},  {"u16", {2, NumericClass::UnsignedInt}},
        {"u32", {4, NumericClass::UnsignedInt}}, {"u64", {8, NumericClass::UnsignedInt}},
        {"i8", {1, NumericClass::SignedInt}},    {"i16", {2, NumericClass::SignedInt}},
        {"i32", {4, NumericClass::SignedInt}},   {"i64", {8, NumericClass::SignedInt}},
        {"f32", {4, NumericClass::Float}},       {"f64", {8, NumericClass::Float}},
    };
    for (const auto& [n, k] : table)
        if (name == n) return k;
    throw std::invalid_argument("unknown value kind: " + name);
}

void validate_index_width(IndexWidthConfig cfg, std::uint64_t nrows) {
    const auto w = cfg.idx_size;
    if (w != 1 && w != 2 && w != 4 && w != 8)
        throw std::invalid_argument("index width must be 1, 2, 4 or 8 bytes");
    if (w < 8 && nrows > width_mask(w))
        throw std::invalid_argument("index width too narrow for row count");
}

bool value_is_zero(Value v, ValueKind kind) {
    if (kind.numeric_class == NumericClass::Float)
        return float_bits_to_double(v.bits, kind.width_bytes) == 0.0;
    return v.bits == 0;
}

bool value_less(Value a, Value b, ValueKind kind) {
    switch (kind.numeric_class) {
        case NumericClass::UnsignedInt:
            return a.bits < b.bits;
        case NumericClass::SignedInt:
            return sign_extend(a.bits, kind.width_bytes) < sign_extend(b.bits, kind.width_bytes);
        case NumericClass::Float: {
            const double x = float_bits_to_double(a.bits, kind.width_bytes);
            const double y = float_bits_to_double(b.bits, kind.width_bytes);
            if (x < y) return true;
            if (y < x) return false;
            // NaNs (payload-distinct) order by bit pattern so sorting stays total.
            return a.bits < b.bits;
        }
    }
    return false;
}

double value_to_double(Value v, ValueKind kind) {
    switch (kind.numeric_class) {
        case NumericClass::UnsignedInt: return static_cast<double>(v.bits);
        case NumericClass::SignedInt:
            return static_cast<double>(sign_extend(v.bits, kind.width_bytes));
        case NumericClass::Float: return float_bits_to_double(v.bits, kind.width_bytes);
    }
    return 0.0;
}

Value value_from_int(std::int64_t v, ValueKind kind) {
    switch (kind.numeric_class) {
        case NumericClass::UnsignedInt:
            if (v < 0 || static_cast<std::uint64_t>(v) > width_mask(kind.width_bytes))
                throw std::out_of_range("value not representable in " + value_kind_name(kind));
            return {static_cast<std::uint64_t>(v)};
        case NumericClass::SignedInt: {
            const std::uint64_t raw = static_cast<std::uint64_t>(v) & width_mask(kind.width_bytes);
            if (sign_extend(raw, kind.width_bytes) != v)
                throw std::out_of_range("value not representable in " + value_kind_name(kind));
            return {raw};
        }
        case NumericClass::Float:
            return {double_to_float_bits(static_cast<double>(v), kind.width_bytes)};
    }
    return {};
}

Value value_from_uint(std::uint64_t v, ValueKind kind) {
    if (kind.numeric_class == NumericClass::UnsignedInt) {
        if (v > width_mask(kind.width_bytes))
            throw std::out_of_range("value not representable in " + value_kind_name(kind));
        return {v};
    }
    if (v > static_cast<std::uint64_t>(INT64_MAX))
        throw std::out_of_range("value not representable in " + value_kind_name(kind));
    return value_from_int(static_cast<std::int64_t>(v), kind);
}

Value value_from_double(double v, ValueKind kind) {
    if (kind.numeric_class == NumericClass::Float)
        return {double_to_float_bits(v, kind.width_bytes)};
    if (std::nearbyint(v) != v)
        throw std::out_of_range("non-integral value for integer kind " + value_kind_name(kind));
    if (kind.numeric_class == NumericClass::UnsignedInt) {
        if (v < 0.0 || v > static_cast<double>(width_mask(kind.width_bytes)))
            throw std::out_of_range("value not representable in " + value_kind_name(kind));
        return {static_cast<std::uint64_t>(v)};
    }
    if (v < -9.3e18 || v > 9.3e18)
        throw std::out_of_range("value not representable in " + value_kind_name(kind));
    return value_from_int(static_cast<std::int64_t>(v), kind);
}

Value value_add(Value a, Value b, ValueKind kind) {
    if (kind.numeric_class == NumericClass::Float) {
        const double s = float_bits_to_double(a.bits, kind.width_bytes) +
                         float_bits_to_double(b.bits, kind.width_bytes);
        return {double_to_float_bits(s, kind.width_bytes)};
    }
    return {(a.bits + b.bits) & width_mask(kind.width_bytes)};
}

Value value_mul(Value a, Value b, ValueKind kind) {
    if (kind.numeric_class == NumericClass::Float) {
        const double p = float_bits_to_double(a.bits, kind.width_bytes) *
                         float_bits_to_double(b.bits, kind.width_bytes);
        return {double_to_float_bits(p, kind.width_bytes)};
    }
    return {(a.bits * b.bits) & width_mask(kind.width_bytes)};
}

std::string value_to_string(Value v, ValueKind kind) {
    char buf[40];
    switch (kind.numeric_class) {
        case NumericClass::UnsignedInt:
            return std::to_string(v.bits);
        case NumericClass::SignedInt:
            return std::to_string(sign_extend(v.bits, kind.width_bytes));
        case NumericClass::Float: {
            const double d = float_bits_to_double(v.bits, kind.width_bytes);
            std::snprintf(buf, sizeof buf, kind.width_bytes == 4 ? "%.9g" : "%.17g", d);
            return buf;
        }
    }
    return {};
}

std::uint64_t accum_zero(ValueKind kind) {
    if (kind.numeric_class == NumericClass::Float) return std::bit_cast<std::uint64_t>(0.0);
    return 0;
}

std::uint64_t accum_add_product(std::uint64_t acc, Value a, Value b, ValueKind kind) {
    if (kind.numeric_class == NumericClass::Float) {
        const double s = std::bit_cast<double>(acc) +
                         float_bits_to_double(a.bits, kind.width_bytes) *
                             float_bits_to_double(b.bits, kind.width_bytes);
        return std::bit_cast<std::uint64_t>(s);
    }
    return acc + a.bits * b.bits;
}

Value accum_finish(std::uint64_t acc, ValueKind kind) {
    if (kind.numeric_class == NumericClass::Float)
        return {double_to_float_bits(std::bit_cast<double>(acc), kind.width_bytes)};
    return {acc & width_mask(kind.width_bytes)};
}

CooMatrix canonicalize_coo(std::vector<Triplet> triplets, Dims dims, ValueKind kind,
                           DuplicatePolicy policy) {
    validate_value_kind(kind);
    if (dims.nrows == 0 || dims.ncols == 0)
        throw std::invalid_argument("matrix dimensions must be at least 1x1");
    for (const auto& t : triplets)
        if (t.row >= dims.nrows || t.col >= dims.ncols)
            throw std::out_of_range("triplet index outside matrix dimensions");

    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return std::pair{a.col, a.row} < std::pair{b.col, b.row};
    });

    std::vector<Triplet> out;
    out.reserve(triplets.size());
    for (std::size_t i = 0; i < triplets.size();) {
        Triplet cur = triplets[i++];
        while (i < triplets.size() && triplets[i].row == cur.row && triplets[i].col == cur.col) {
            if (policy == DuplicatePolicy::Reject)
                throw std::invalid_argument("duplicate (row, col) entry");
            cur.value = value_add(cur.value, triplets[i].value, kind);
            ++i;
        }
        if (!value_is_zero(cur.value, kind)) out.push_back(cur);
    }
    return CooMatrix{dims, kind, std::move(out)};
}

bool coo_equal(const CooMatrix& a, const CooMatrix& b) {
    if (a.value_kind != b.value_kind)
        throw std::invalid_argument("cannot compare matrices of different value kinds");
    return a.dims == b.dims && a.triplets == b.triplets;
}

DenseMatrix coo_to_dense(const CooMatrix& m) {
    DenseMatrix d{m.dims, m.value_kind, {}};
    d.values.assign(m.dims.cell_count(), Value{});
    for (const auto& t : m.triplets) d.at(t.row, t.col) = t.value;
    return d;
}

CooMatrix dense_to_coo(const DenseMatrix& m) {
    std::vector<Triplet> triplets;
    for (std::uint64_t c = 0; c < m.dims.ncols; ++c)
        for (std::uint64_t r = 0; r < m.dims.nrows; ++r)
            if (!value_is_zero(m.at(r, c), m.value_kind))
                triplets.push_back({r, c, m.at(r, c)});
    return CooMatrix{m.dims, m.value_kind, std::move(triplets)};
}

std::vector<Value> dense_matvec(const DenseMatrix& a, std::span<const Value> x) {
    if (x.size() != a.dims.ncols) throw std::invalid_argument("vector length mismatch");
    std::vector<Value> y(a.dims.nrows);
    for (std::uint64_t r = 0; r < a.dims.nrows; ++r) {
        std::uint64_t acc = accum_zero(a.value_kind);
        for (std::uint64_t c = 0; c < a.dims.ncols; ++c)
            acc = accum_add_product(acc, a.at(r, c), x[c], a.value_kind);
        y[r] = accum_finish(acc, a.value_kind);
    }
    return y;
}

DenseMatrix dense_matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dims.ncols != b.dims.nrows) throw std::invalid_argument("inner dimension mismatch");
    if (a.value_kind != b.value_kind) throw std::invalid_argument("value kind mismatch");
    DenseMatrix c{{a.dims.nrows, b.dims.ncols}, a.value_kind, {}};
    c.values.assign(c.dims.cell_count(), Value{});
    for (std::uint64_t r = 0; r < a.dims.nrows; ++r)
        for (std::uint64_t j = 0; j < b.dims.ncols; ++j) {
            std::uint64_t acc = accum_zero(a.value_kind);
            for (std::uint64_t k = 0; k < a.dims.ncols; ++k)
                acc = accum_add_product(acc, a.at(r, k), b.at(k, j), a.value_kind);
            c.at(r, j) = accum_finish(acc, a.value_kind);
        }
    return c;
}

DenseMatrix dense_scalar_mul(const DenseMatrix& a, Value s) {
    DenseMatrix out = a;
    for (auto& v : out.values) v = value_mul(v, s, a.value_kind);
    return out;
}

}  // namespace ivsk
