// Timing harness: two untimed warm-ups then five timed repeats per
// (format, operation, sweep point), results accumulated into a volatile sink
// so the optimizer cannot elide the work. Emits CSV for downstream plotting.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ivsk/matgen.hpp"

namespace ivsk {

enum class BenchOp { Construct, Iterate, Scalar, Spmv, Spmm };
enum class BenchFormat { Csc, Vcsc, Ivcsc };

std::string bench_op_name(BenchOp op);
std::string bench_format_name(BenchFormat fmt);
BenchOp parse_bench_op(const std::string& name);
BenchFormat parse_bench_format(const std::string& name);

struct BenchRecord {
    std::string format;
    std::string op;
    std::uint64_t n_unique = 0;
    double mmr = 0.0;
    std::vector<double> repeat_seconds;  // one per timed repeat
    double mean_seconds = 0.0;
};

struct BenchConfig {
    GenSpec base;                          // structure comes from position_seed
    std::vector<std::uint64_t> unique_sweep{10};
    std::vector<BenchFormat> formats{BenchFormat::Csc, BenchFormat::Vcsc, BenchFormat::Ivcsc};
    std::vector<BenchOp> ops{BenchOp::Construct, BenchOp::Iterate, BenchOp::Scalar,
                             BenchOp::Spmv, BenchOp::Spmm};
    int warmups = 2;
    int repeats = 5;
    std::uint64_t spmm_cols = 8;  // right-factor width for SpMM
};

// One record per (format, op, sweep point). Strictly single-threaded during
// timed regions; wall-clock monotonic timer.
std::vector<BenchRecord> run_benchmark(const BenchConfig& config);

// Columns: format,op,n_unique,mmr,rep1..repN,mean (header row included).
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace ivsk
