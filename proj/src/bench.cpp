#include "ivsk/bench.hpp"

#include <chrono>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ivsk/analytics.hpp"
#include "ivsk/csc.hpp"
#include "ivsk/ivcsc.hpp"
#include "ivsk/vcsc.hpp"

namespace ivsk {

namespace {

// Elision guard: every repeat folds its result in here.
volatile std::uint64_t g_sink = 0;

void sink(std::uint64_t v) { g_sink = g_sink + v; }

double timed(const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

std::vector<Value> make_input_vector(const CooMatrix& m) {
    std::vector<Value> x(m.dims.ncols);
    for (std::uint64_t c = 0; c < m.dims.ncols; ++c)
        x[c] = value_from_int(static_cast<std::int64_t>(c % 7) + 1, m.value_kind);
    return x;
}

DenseMatrix make_input_matrix(const CooMatrix& m, std::uint64_t cols) {
    DenseMatrix b{{m.dims.ncols, cols}, m.value_kind, {}};
    b.values.resize(b.dims.cell_count());
    for (std::size_t i = 0; i < b.values.size(); ++i)
        b.values[i] = value_from_int(static_cast<std::int64_t>(i % 5) + 1, m.value_kind);
    return b;
}

template <class Matrix, class ForEach>
std::function<void()> op_body(BenchOp op, const CooMatrix& coo, const Matrix& built,
                              const std::function<Matrix(const CooMatrix&)>& construct,
                              ForEach&& for_each, const std::vector<Value>& x,
                              const DenseMatrix& b, Value scalar,
                              const std::function<std::vector<Value>(const Matrix&, std::span<const Value>)>& spmv,
                              const std::function<DenseMatrix(const Matrix&, const DenseMatrix&)>& spmm,
                              const std::function<Matrix(const Matrix&, Value)>& scalar_mul) {
    // Function parameters are temporaries in the caller; capture them by
    // value. The matrices and inputs outlive the returned closure.
    switch (op) {
        case BenchOp::Construct:
            return [&coo, construct] { sink(construct(coo).nnz()); };
        case BenchOp::Iterate:
            return [&built, for_each] {
                std::uint64_t acc = 0;
                for_each(built, [&](std::uint64_t, std::uint64_t r, Value v) { acc += r ^ v.bits; });
                sink(acc);
            };
        case BenchOp::Scalar:
            return [&built, scalar, scalar_mul] { sink(scalar_mul(built, scalar).nnz()); };
        case BenchOp::Spmv:
            return [&built, &x, spmv] { sink(spmv(built, x).back().bits); };
        case BenchOp::Spmm:
            return [&built, &b, spmm] { sink(spmm(built, b).values.back().bits); };
    }
    throw std::logic_error("unknown benchmark operation");
}

}  // namespace

std::string bench_op_name(BenchOp op) {
    switch (op) {
        case BenchOp::Construct: return "construct";
        case BenchOp::Iterate: return "iterate";
        case BenchOp::Scalar: return "scalar";
        case BenchOp::Spmv: return "spmv";
        case BenchOp::Spmm: return "spmm";
    }
    return {};
}

std::string bench_format_name(BenchFormat fmt) {
    switch (fmt) {
        case BenchFormat::Csc: return "csc";
        case BenchFormat::Vcsc: return "vcsc";
        case BenchFormat::Ivcsc: return "ivcsc";
    }
    return {};
}

BenchOp parse_bench_op(const std::string& name) {
    for (BenchOp op : {BenchOp::Construct, BenchOp::Iterate, BenchOp::Scalar, BenchOp::Spmv,
                       BenchOp::Spmm})
        if (bench_op_name(op) == name) return op;
    throw std::invalid_argument("unknown benchmark operation: " + name);
}

BenchFormat parse_bench_format(const std::string& name) {
    for (BenchFormat fmt : {BenchFormat::Csc, BenchFormat::Vcsc, BenchFormat::Ivcsc})
        if (bench_format_name(fmt) == name) return fmt;
    throw std::invalid_argument("unknown benchmark format: " + name);
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
    if (config.repeats < 1) throw std::invalid_argument("benchmark needs at least one repeat");
    std::vector<BenchRecord> records;

    const CooMatrix structure = generate(config.base);
    for (std::uint64_t n_unique : config.unique_sweep) {
        const CooMatrix coo =
            n_unique == config.base.n_unique
                ? structure
                : reassign_values(structure, n_unique, config.base.seed + n_unique);
        const double matrix_mmr = mmr(column_stats(coo));
        const std::vector<Value> x = make_input_vector(coo);
        const DenseMatrix b = make_input_matrix(coo, config.spmm_cols);
        const Value scalar = value_from_int(3, coo.value_kind);

        const CscMatrix csc = csc_from_coo(coo);
        const VcscMatrix vcsc = vcsc_from_coo(coo);
        const IvcscMatrix ivcsc = ivcsc_from_vcsc(vcsc);

        for (BenchFormat fmt : config.formats) {
            for (BenchOp op : config.ops) {
                std::function<void()> body;
                switch (fmt) {
                    case BenchFormat::Csc:
                        body = op_body<CscMatrix>(
                            op, coo, csc, [](const CooMatrix& m) { return csc_from_coo(m); },
                            [](const CscMatrix& m, auto&& fn) { m.for_each(fn); }, x, b, scalar,
                            [](const CscMatrix& m, std::span<const Value> v) { return csc_spmv(m, v); },
                            [](const CscMatrix& m, const DenseMatrix& d) { return csc_spmm(m, d); },
                            [](const CscMatrix& m, Value s) { return csc_scalar_mul(m, s); });
                        break;
                    case BenchFormat::Vcsc:
                        body = op_body<VcscMatrix>(
                            op, coo, vcsc, [](const CooMatrix& m) { return vcsc_from_coo(m); },
                            [](const VcscMatrix& m, auto&& fn) { m.for_each(fn); }, x, b, scalar,
                            [](const VcscMatrix& m, std::span<const Value> v) { return vcsc_spmv(m, v); },
                            [](const VcscMatrix& m, const DenseMatrix& d) { return vcsc_spmm(m, d); },
                            [](const VcscMatrix& m, Value s) { return vcsc_scalar_mul(m, s); });
                        break;
                    case BenchFormat::Ivcsc:
                        body = op_body<IvcscMatrix>(
                            op, coo, ivcsc, [](const CooMatrix& m) { return ivcsc_from_coo(m); },
                            [](const IvcscMatrix& m, auto&& fn) { ivcsc_for_each(m, fn); }, x, b,
                            scalar,
                            [](const IvcscMatrix& m, std::span<const Value> v) { return ivcsc_spmv(m, v); },
                            [](const IvcscMatrix& m, const DenseMatrix& d) { return ivcsc_spmm(m, d); },
                            [](const IvcscMatrix& m, Value s) { return ivcsc_scalar_mul(m, s); });
                        break;
                }

                for (int w = 0; w < config.warmups; ++w) body();

                BenchRecord rec;
                rec.format = bench_format_name(fmt);
                rec.op = bench_op_name(op);
                rec.n_unique = n_unique;
                rec.mmr = matrix_mmr;
                for (int rep = 0; rep < config.repeats; ++rep)
                    rec.repeat_seconds.push_back(timed(body));
                rec.mean_seconds =
                    std::accumulate(rec.repeat_seconds.begin(), rec.repeat_seconds.end(), 0.0) /
                    static_cast<double>(config.repeats);
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    const std::size_t repeats = records.empty() ? 5 : records.front().repeat_seconds.size();
    out << "format,op,n_unique,mmr";
    for (std::size_t i = 1; i <= repeats; ++i) out << ",rep" << i;
    out << ",mean\n";
    out.precision(9);
    for (const BenchRecord& rec : records) {
        out << rec.format << "," << rec.op << "," << rec.n_unique << "," << rec.mmr;
        for (double t : rec.repeat_seconds) out << "," << t;
        out << "," << rec.mean_seconds << "\n";
    }
}

}  // namespace ivsk
