// Matrix Market text I/O and the IVSK binary container holding any of the
// three compressed formats bit-exactly.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ivsk/core.hpp"
#include "ivsk/csc.hpp"
#include "ivsk/ivcsc.hpp"
#include "ivsk/vcsc.hpp"

namespace ivsk {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Coordinate Matrix Market, fields real/integer/pattern, symmetry
// general/symmetric. 1-based indices are converted to 0-based, duplicates
// summed, zeros dropped, pattern entries read as 1, symmetric storage
// expanded. When no kind is given the reader uses a "% ivsk value kind:"
// comment if present, otherwise f64/i64/u8 for real/integer/pattern.
CooMatrix read_matrix_market(std::istream& in, std::optional<ValueKind> kind = {});

// Inverse of read_matrix_market on canonical input (the value kind is
// recorded as a comment so a plain re-read restores it).
void write_matrix_market(std::ostream& out, const CooMatrix& m);

enum class FormatCode : std::uint8_t { Csc = 0, Vcsc = 1, Ivcsc = 2 };

/// 32-byte container header: magic "IVSK", version, format code, value kind
/// code, idx size, then nrows/ncols/nnz as unsigned 64-bit little-endian.
struct ContainerHeader {
    static constexpr std::uint8_t kVersion = 1;
    static constexpr std::size_t kSize = 32;

    std::uint8_t version = kVersion;
    FormatCode format = FormatCode::Csc;
    ValueKind value_kind;
    std::uint8_t idx_size = 4;  // 0 for IVCSC (widths live in the stream)
    std::uint64_t nrows = 0;
    std::uint64_t ncols = 0;
    std::uint64_t nnz = 0;
};

// Container stream = header ++ payload; the payload byte length equals the
// format's byte_size exactly.
std::vector<std::uint8_t> serialize(const CscMatrix& m);
std::vector<std::uint8_t> serialize(const VcscMatrix& m);
std::vector<std::uint8_t> serialize(const IvcscMatrix& m);

using AnyMatrix = std::variant<CscMatrix, VcscMatrix, IvcscMatrix>;

// Bitwise inverse of serialize. Throws IoError on bad magic or version,
// truncation, or a payload inconsistent with the header.
AnyMatrix deserialize(std::span<const std::uint8_t> bytes);

ContainerHeader read_container_header(std::span<const std::uint8_t> bytes);

CooMatrix any_to_coo(const AnyMatrix& m);

}  // namespace ivsk
