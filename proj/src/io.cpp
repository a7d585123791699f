#include "ivsk/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ivsk {

namespace {

std::string lower(std::string s) {
    for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

Value parse_entry_value(const std::string& token, ValueKind kind) {
    try {
        if (kind.numeric_class != NumericClass::Float &&
            token.find_first_of(".eE") == std::string::npos) {
            if (kind.numeric_class == NumericClass::UnsignedInt)
                return value_from_uint(std::stoull(token), kind);
            return value_from_int(std::stoll(token), kind);
        }
        return value_from_double(std::stod(token), kind);
    } catch (const std::logic_error&) {
        throw IoError("bad numeric value in Matrix Market entry: " + token);
    }
}

}  // namespace

CooMatrix read_matrix_market(std::istream& in, std::optional<ValueKind> kind) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty Matrix Market stream");

    std::istringstream banner(line);
    std::string magic, object, layout, field, symmetry;
    banner >> magic >> object >> layout >> field >> symmetry;
    if (magic != "%%MatrixMarket") throw IoError("missing %%MatrixMarket banner");
    object = lower(object);
    layout = lower(layout);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix" || layout != "coordinate")
        throw IoError("only coordinate matrices are supported");
    if (field != "real" && field != "integer" && field != "pattern")
        throw IoError("unsupported Matrix Market field: " + field);
    if (symmetry != "general" && symmetry != "symmetric")
        throw IoError("unsupported Matrix Market symmetry: " + symmetry);

    // Comments may carry the value kind the file was written with.
    static constexpr const char* kKindTag = "ivsk value kind:";
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] != '%') break;
        if (!kind) {
            const auto pos = line.find(kKindTag);
            if (pos != std::string::npos) {
                std::string name = line.substr(pos + std::strlen(kKindTag));
                name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
                kind = parse_value_kind(name);
            }
        }
    }
    if (!kind) {
        if (field == "real") kind = ValueKind{8, NumericClass::Float};
        else if (field == "integer") kind = ValueKind{8, NumericClass::SignedInt};
        else kind = ValueKind{1, NumericClass::UnsignedInt};
    }

    std::uint64_t nrows = 0, ncols = 0, nnz = 0;
    {
        std::istringstream sizes(line);
        if (!(sizes >> nrows >> ncols >> nnz)) throw IoError("malformed size line");
    }

    std::vector<Triplet> triplets;
    triplets.reserve(nnz);
    for (std::uint64_t i = 0; i < nnz; ++i) {
        if (!std::getline(in, line)) throw IoError("truncated Matrix Market entry list");
        if (line.empty() || line[0] == '%') {
            --i;
            continue;
        }
        std::istringstream entry(line);
        std::uint64_t r = 0, c = 0;
        if (!(entry >> r >> c)) throw IoError("malformed Matrix Market entry");
        if (r < 1 || r > nrows || c < 1 || c > ncols)
            throw IoError("Matrix Market entry index out of declared bounds");
        Value v;
        if (field == "pattern") {
            v = value_from_uint(1, *kind);
        } else {
            std::string token;
            if (!(entry >> token)) throw IoError("missing value in Matrix Market entry");
            v = parse_entry_value(token, *kind);
        }
        triplets.push_back({r - 1, c - 1, v});
        if (symmetry == "symmetric" && r != c) triplets.push_back({c - 1, r - 1, v});
    }
    return canonicalize_coo(std::move(triplets), {nrows, ncols}, *kind);
}

void write_matrix_market(std::ostream& out, const CooMatrix& m) {
    const bool is_float = m.value_kind.numeric_class == NumericClass::Float;
    out << "%%MatrixMarket matrix coordinate " << (is_float ? "real" : "integer")
        << " general\n";
    out << "% ivsk value kind: " << value_kind_name(m.value_kind) << "\n";
    out << m.dims.nrows << " " << m.dims.ncols << " " << m.nnz() << "\n";
    for (const auto& t : m.triplets)
        out << t.row + 1 << " " << t.col + 1 << " " << value_to_string(t.value, m.value_kind)
            << "\n";
}

namespace {

constexpr char kMagic[4] = {'I', 'V', 'S', 'K'};

void append_le(std::vector<std::uint8_t>& out, std::uint64_t v, std::uint8_t width) {
    for (std::uint8_t i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint8_t encode_kind(ValueKind kind) {
    return static_cast<std::uint8_t>((static_cast<std::uint8_t>(kind.numeric_class) << 4) |
                                     kind.width_bytes);
}

ValueKind decode_kind(std::uint8_t code) {
    ValueKind kind{static_cast<std::uint8_t>(code & 0x0F),
                   static_cast<NumericClass>(code >> 4)};
    if ((code >> 4) > 2) throw IoError("bad value kind code in container header");
    try {
        validate_value_kind(kind);
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("bad value kind code in container header: ") + e.what());
    }
    return kind;
}

std::vector<std::uint8_t> make_header(FormatCode format, ValueKind kind, std::uint8_t idx_size,
                                      Dims dims, std::uint64_t nnz) {
    std::vector<std::uint8_t> out;
    out.reserve(ContainerHeader::kSize);
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(ContainerHeader::kVersion);
    out.push_back(static_cast<std::uint8_t>(format));
    out.push_back(encode_kind(kind));
    out.push_back(idx_size);
    append_le(out, dims.nrows, 8);
    append_le(out, dims.ncols, 8);
    append_le(out, nnz, 8);
    return out;
}

class Reader {
  public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint64_t read(std::uint8_t width) {
        if (pos_ + width > bytes_.size()) throw IoError("truncated container stream");
        std::uint64_t v = 0;
        for (std::uint8_t i = 0; i < width; ++i)
            v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += width;
        return v;
    }

    std::vector<std::uint8_t> read_blob(std::uint64_t n) {
        if (pos_ + n > bytes_.size()) throw IoError("truncated container stream");
        std::vector<std::uint8_t> blob(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                       bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
        pos_ += n;
        return blob;
    }

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

  private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void check_fits(std::uint64_t v, std::uint8_t width, const char* what) {
    if (width < 8 && v >> (8 * width))
        throw IoError(std::string(what) + " does not fit the configured index width");
}

}  // namespace

std::vector<std::uint8_t> serialize(const CscMatrix& m) {
    const std::uint8_t idx = m.idx_config.idx_size;
    auto out = make_header(FormatCode::Csc, m.value_kind, idx, m.dims, m.nnz());
    check_fits(m.nnz(), idx, "nnz (column pointer range)");
    for (std::uint64_t p : m.col_ptrs) append_le(out, p, idx);
    for (std::uint64_t r : m.row_indices) append_le(out, r, idx);
    for (Value v : m.values) append_le(out, v.bits, m.value_kind.width_bytes);
    return out;
}

std::vector<std::uint8_t> serialize(const VcscMatrix& m) {
    const std::uint8_t idx = m.idx_config.idx_size;
    auto out = make_header(FormatCode::Vcsc, m.value_kind, idx, m.dims, m.nnz());
    for (const VcscColumn& col : m.columns) {
        check_fits(col.n_unique(), idx, "column unique-value count");
        append_le(out, col.n_unique(), idx);
        for (Value v : col.uniq_values) append_le(out, v.bits, m.value_kind.width_bytes);
        for (std::uint64_t n : col.counts) {
            check_fits(n, idx, "value occurrence count");
            append_le(out, n, idx);
        }
        for (std::uint64_t r : col.indices) append_le(out, r, idx);
    }
    return out;
}

std::vector<std::uint8_t> serialize(const IvcscMatrix& m) {
    auto out = make_header(FormatCode::Ivcsc, m.value_kind, 0, m.dims, m.nnz());
    for (const IvcscColumn& col : m.columns) {
        append_le(out, col.byte_len(), 8);
        out.insert(out.end(), col.data.begin(), col.data.end());
    }
    return out;
}

ContainerHeader read_container_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < ContainerHeader::kSize) throw IoError("stream shorter than container header");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw IoError("bad container magic");
    Reader r(bytes.subspan(4));
    ContainerHeader h;
    h.version = static_cast<std::uint8_t>(r.read(1));
    if (h.version != ContainerHeader::kVersion)
        throw IoError("unsupported container version " + std::to_string(h.version));
    const std::uint8_t format = static_cast<std::uint8_t>(r.read(1));
    if (format > 2) throw IoError("bad format code in container header");
    h.format = static_cast<FormatCode>(format);
    h.value_kind = decode_kind(static_cast<std::uint8_t>(r.read(1)));
    h.idx_size = static_cast<std::uint8_t>(r.read(1));
    h.nrows = r.read(8);
    h.ncols = r.read(8);
    h.nnz = r.read(8);
    if (h.nrows == 0 || h.ncols == 0) throw IoError("container header declares empty dimensions");
    if (h.format == FormatCode::Ivcsc) {
        if (h.idx_size != 0) throw IoError("IVCSC container must carry idx size 0");
    } else {
        try {
            validate_index_width({h.idx_size}, h.nrows);
        } catch (const std::invalid_argument& e) {
            throw IoError(std::string("bad index width in container header: ") + e.what());
        }
    }
    return h;
}

AnyMatrix deserialize(std::span<const std::uint8_t> bytes) {
    const ContainerHeader h = read_container_header(bytes);
    Reader r(bytes.subspan(ContainerHeader::kSize));
    const Dims dims{h.nrows, h.ncols};

    switch (h.format) {
        case FormatCode::Csc: {
            CscMatrix m{dims, h.value_kind, {h.idx_size}, {}, {}, {}};
            m.col_ptrs.reserve(h.ncols + 1);
            for (std::uint64_t c = 0; c <= h.ncols; ++c) m.col_ptrs.push_back(r.read(h.idx_size));
            if (m.col_ptrs.front() != 0 || m.col_ptrs.back() != h.nnz ||
                !std::is_sorted(m.col_ptrs.begin(), m.col_ptrs.end()))
                throw IoError("inconsistent column pointers in CSC payload");
            m.row_indices.reserve(h.nnz);
            for (std::uint64_t i = 0; i < h.nnz; ++i) {
                const std::uint64_t row = r.read(h.idx_size);
                if (row >= h.nrows) throw IoError("row index out of range in CSC payload");
                m.row_indices.push_back(row);
            }
            for (std::uint64_t c = 0; c < h.ncols; ++c)
                for (std::uint64_t p = m.col_ptrs[c] + 1; p < m.col_ptrs[c + 1]; ++p)
                    if (m.row_indices[p - 1] >= m.row_indices[p])
                        throw IoError("rows not strictly increasing in CSC column");
            m.values.reserve(h.nnz);
            for (std::uint64_t i = 0; i < h.nnz; ++i)
                m.values.push_back({r.read(h.value_kind.width_bytes)});
            if (r.remaining() != 0) throw IoError("trailing bytes after CSC payload");
            return m;
        }
        case FormatCode::Vcsc: {
            VcscMatrix m{dims, h.value_kind, {h.idx_size}, {}};
            m.columns.resize(h.ncols);
            std::uint64_t total_nnz = 0;
            for (VcscColumn& col : m.columns) {
                const std::uint64_t n_unique = r.read(h.idx_size);
                for (std::uint64_t k = 0; k < n_unique; ++k)
                    col.uniq_values.push_back({r.read(h.value_kind.width_bytes)});
                std::uint64_t col_nnz = 0;
                for (std::uint64_t k = 0; k < n_unique; ++k) {
                    const std::uint64_t count = r.read(h.idx_size);
                    if (count == 0) throw IoError("zero occurrence count in VCSC payload");
                    col.counts.push_back(count);
                    col_nnz += count;
                }
                for (std::uint64_t i = 0; i < col_nnz; ++i) {
                    const std::uint64_t row = r.read(h.idx_size);
                    if (row >= h.nrows) throw IoError("row index out of range in VCSC payload");
                    col.indices.push_back(row);
                }
                total_nnz += col_nnz;
            }
            if (total_nnz != h.nnz) throw IoError("VCSC payload nnz disagrees with header");
            if (r.remaining() != 0) throw IoError("trailing bytes after VCSC payload");
            return m;
        }
        case FormatCode::Ivcsc: {
            IvcscMatrix m{dims, h.value_kind, {}};
            m.columns.resize(h.ncols);
            std::uint64_t total_nnz = 0;
            for (IvcscColumn& col : m.columns) {
                const std::uint64_t len = r.read(8);
                col.data = r.read_blob(len);
                try {
                    for (const auto& [value, rows] :
                         ivcsc_decode_column(col, h.value_kind, h.nrows))
                        total_nnz += rows.size();
                } catch (const std::runtime_error& e) {
                    throw IoError(std::string("malformed IVCSC column stream: ") + e.what());
                }
            }
            if (total_nnz != h.nnz) throw IoError("IVCSC payload nnz disagrees with header");
            if (r.remaining() != 0) throw IoError("trailing bytes after IVCSC payload");
            return m;
        }
    }
    throw IoError("unreachable format code");
}

CooMatrix any_to_coo(const AnyMatrix& m) {
    return std::visit(
        [](const auto& mat) {
            using T = std::decay_t<decltype(mat)>;
            if constexpr (std::is_same_v<T, CscMatrix>) return csc_to_coo(mat);
            else if constexpr (std::is_same_v<T, VcscMatrix>) return vcsc_to_coo(mat);
            else return ivcsc_to_coo(mat);
        },
        m);
}

}  // namespace ivsk
