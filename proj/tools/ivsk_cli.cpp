// Command-line front end: ingestion, conversion, compression statistics,
// matrix generation, redundancy sweeps, and the benchmark harness.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#ifdef _WIN32
#include <io.h>
#define ISATTY _isatty
#define FILENO _fileno
#else
#include <unistd.h>
#define ISATTY isatty
#define FILENO fileno
#endif

#include "ivsk/analytics.hpp"
#include "ivsk/bench.hpp"
#include "ivsk/csc.hpp"
#include "ivsk/io.hpp"
#include "ivsk/ivcsc.hpp"
#include "ivsk/matgen.hpp"
#include "ivsk/vcsc.hpp"

namespace {

using namespace ivsk;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

bool use_color() {
    return ISATTY(FILENO(stdout)) != 0 && std::getenv("IVSK_NO_COLOR") == nullptr;
}

std::string detect_format(const std::string& path, const std::string& override_fmt) {
    if (!override_fmt.empty()) return override_fmt;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".mtx") return "mtx";
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".ivsk") return "ivsk";
    throw UsageError("cannot detect format of '" + path + "'; pass --format mtx|ivsk");
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

CooMatrix load_matrix(const std::string& path, const std::string& override_fmt,
                      const std::string& value_kind) {
    const std::string fmt = detect_format(path, override_fmt);
    if (fmt == "mtx") {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open '" + path + "'");
        std::optional<ValueKind> kind;
        if (!value_kind.empty()) kind = parse_value_kind(value_kind);
        return read_matrix_market(in, kind);
    }
    if (fmt == "ivsk") return any_to_coo(deserialize(read_file_bytes(path)));
    throw UsageError("unknown format '" + fmt + "'");
}

std::vector<std::uint8_t> encode_as(const CooMatrix& m, const std::string& target,
                                    std::uint8_t idx_size) {
    if (target == "csc") return serialize(csc_from_coo(m, {idx_size}));
    if (target == "vcsc") return serialize(vcsc_from_coo(m, {idx_size}));
    if (target == "ivcsc") return serialize(ivcsc_from_coo(m));
    throw UsageError("unknown target format '" + target + "'");
}

void save_matrix(const CooMatrix& m, const std::string& path, const std::string& target,
                 std::uint8_t idx_size) {
    const std::string fmt = detect_format(path, "");
    if (fmt == "mtx") {
        std::ofstream out(path);
        if (!out) throw UsageError("cannot write '" + path + "'");
        write_matrix_market(out, m);
        return;
    }
    write_file_bytes(path, encode_as(m, target, idx_size));
}

std::string gib(std::uint64_t bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(bytes) / (1024.0 * 1024.0 * 1024.0));
    return buf;
}

std::string pct(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", ratio * 100.0);
    return buf;
}

void print_report(const CompressionReport& rep) {
    const char* bold = use_color() ? "\033[1m" : "";
    const char* reset = use_color() ? "\033[0m" : "";
    std::printf("%s%-14s%s %llu x %llu, value kind %s, idx size %u%s\n", bold, "matrix", reset,
                static_cast<unsigned long long>(rep.dims.nrows),
                static_cast<unsigned long long>(rep.dims.ncols),
                value_kind_name(rep.value_kind).c_str(), rep.idx_size,
                rep.model_derived ? " (model-derived sizes)" : "");
    std::printf("%-14s %llu\n", "nnz", static_cast<unsigned long long>(rep.nnz));
    std::printf("%-14s %.3f%%\n", "sparsity", rep.sparsity * 100.0);
    std::printf("%-14s %.6f\n", "mmr", rep.mmr);
    std::printf("%-14s %llu bytes (%s GiB)\n", "dense", (unsigned long long)rep.dense_bytes,
                gib(rep.dense_bytes).c_str());
    std::printf("%-14s %llu bytes (%s GiB)\n", "csc", (unsigned long long)rep.csc_bytes,
                gib(rep.csc_bytes).c_str());
    std::printf("%-14s %llu bytes (%s GiB), %s of csc\n", "vcsc",
                (unsigned long long)rep.vcsc_bytes, gib(rep.vcsc_bytes).c_str(),
                pct(rep.vcsc_ratio).c_str());
    std::printf("%-14s %llu bytes (%s GiB), %s of csc\n", "ivcsc",
                (unsigned long long)rep.ivcsc_bytes, gib(rep.ivcsc_bytes).c_str(),
                pct(rep.ivcsc_ratio).c_str());
}

void write_report_csv(std::ostream& out, const CompressionReport& rep) {
    out << "nrows,ncols,nnz,sparsity,mmr,value_kind,idx_size,dense_bytes,csc_bytes,"
           "vcsc_bytes,vcsc_ratio,ivcsc_bytes,ivcsc_ratio,model_derived\n";
    out << rep.dims.nrows << "," << rep.dims.ncols << "," << rep.nnz << "," << rep.sparsity << ","
        << rep.mmr << "," << value_kind_name(rep.value_kind) << "," << int(rep.idx_size) << ","
        << rep.dense_bytes << "," << rep.csc_bytes << "," << rep.vcsc_bytes << ","
        << rep.vcsc_ratio << "," << rep.ivcsc_bytes << "," << rep.ivcsc_ratio << ","
        << (rep.model_derived ? 1 : 0) << "\n";
}

struct CommonGenFlags {
    std::uint64_t rows = 1000;
    std::uint64_t cols = 25;
    double sparsity = 0.9;
    std::uint64_t seed = 1;
    std::uint64_t position_seed = 1;
    std::string value_kind = "f32";

    GenSpec spec(std::uint64_t n_unique) const {
        return {{rows, cols}, parse_value_kind(value_kind), sparsity, n_unique, seed,
                position_seed};
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--rows", rows, "matrix rows");
        cmd->add_option("--cols", cols, "matrix columns");
        cmd->add_option("--sparsity", sparsity, "fraction of zero cells in [0,1]");
        cmd->add_option("--seed", seed, "value assignment seed");
        cmd->add_option("--position-seed", position_seed, "nonzero structure seed");
        cmd->add_option("--value-kind", value_kind, "value kind (u8..u64, i8..i64, f32, f64)");
    }
};

int run(int argc, char** argv) {
    CLI::App app{"VCSC/IVCSC sparse matrix compression toolkit"};
    app.require_subcommand(1);

    // stats
    std::string stats_input, stats_fmt, stats_kind, stats_csv;
    std::uint8_t stats_idx = 4;
    bool stats_models = false;
    auto* stats = app.add_subcommand("stats", "compression report for a matrix file");
    stats->add_option("input", stats_input, "input .mtx or .ivsk file")->required();
    stats->add_option("--format", stats_fmt, "override format detection (mtx|ivsk)");
    stats->add_option("--value-kind", stats_kind, "value kind for .mtx input");
    stats->add_option("--idx-size", stats_idx, "index width in bytes for CSC/VCSC");
    stats->add_option("--csv", stats_csv, "also write the report as CSV");
    stats->add_flag("--models", stats_models, "use analytic size models instead of encoders");

    // convert
    std::string conv_input, conv_out, conv_to = "ivcsc", conv_fmt, conv_kind;
    std::uint8_t conv_idx = 4;
    auto* convert = app.add_subcommand("convert", "convert between .mtx and .ivsk containers");
    convert->add_option("input", conv_input, "input file")->required();
    convert->add_option("--out", conv_out, "output file (.mtx or .ivsk)")->required();
    convert->add_option("--to", conv_to, "container format for .ivsk output (csc|vcsc|ivcsc)");
    convert->add_option("--format", conv_fmt, "override input format detection");
    convert->add_option("--value-kind", conv_kind, "value kind for .mtx input");
    convert->add_option("--idx-size", conv_idx, "index width for csc/vcsc output");

    // gen
    CommonGenFlags gen_flags;
    std::uint64_t gen_unique = 10;
    std::string gen_out, gen_to = "ivcsc";
    std::uint8_t gen_idx = 4;
    auto* gen = app.add_subcommand("gen", "generate a random matrix with controlled redundancy");
    gen_flags.attach(gen);
    gen->add_option("--unique", gen_unique, "distinct nonzero values in the pool");
    gen->add_option("--out", gen_out, "output file (.mtx or .ivsk)")->required();
    gen->add_option("--to", gen_to, "container format for .ivsk output");
    gen->add_option("--idx-size", gen_idx, "index width for csc/vcsc output");

    // sweep
    CommonGenFlags sweep_flags;
    std::vector<std::uint64_t> sweep_uniques;
    std::string sweep_out;
    std::uint8_t sweep_idx = 4;
    auto* sweep = app.add_subcommand(
        "sweep", "fix a structure, vary the value pool, report sizes per measured MMR");
    sweep_flags.attach(sweep);
    sweep->add_option("--unique-list", sweep_uniques, "pool sizes to sweep")
        ->required()
        ->delimiter(',');
    sweep->add_option("--idx-size", sweep_idx, "index width for CSC/VCSC sizes");
    sweep->add_option("--out", sweep_out, "output CSV (stdout when omitted)");

    // bench
    CommonGenFlags bench_flags;
    std::vector<std::uint64_t> bench_uniques{10};
    std::vector<std::string> bench_ops{"construct", "iterate", "scalar", "spmv", "spmm"};
    std::vector<std::string> bench_formats{"csc", "vcsc", "ivcsc"};
    int bench_repeats = 5;
    std::uint64_t bench_spmm_cols = 8;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "time format operations over a redundancy sweep");
    bench_flags.attach(bench);
    bench->add_option("--unique-list", bench_uniques, "pool sizes to sweep")->delimiter(',');
    bench->add_option("--ops", bench_ops, "operations to time")->delimiter(',');
    bench->add_option("--formats", bench_formats, "formats to time")->delimiter(',');
    bench->add_option("--repeats", bench_repeats, "timed repeats per point");
    bench->add_option("--spmm-cols", bench_spmm_cols, "right-factor columns for spmm");
    bench->add_option("--out", bench_out, "output CSV (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    if (stats->parsed()) {
        const CooMatrix m = load_matrix(stats_input, stats_fmt, stats_kind);
        const CompressionReport rep = compression_report(m, stats_idx, stats_models);
        print_report(rep);
        if (!stats_csv.empty()) {
            std::ofstream out(stats_csv);
            if (!out) throw UsageError("cannot write '" + stats_csv + "'");
            write_report_csv(out, rep);
        }
        return kExitOk;
    }

    if (convert->parsed()) {
        const CooMatrix m = load_matrix(conv_input, conv_fmt, conv_kind);
        save_matrix(m, conv_out, conv_to, conv_idx);
        return kExitOk;
    }

    if (gen->parsed()) {
        const CooMatrix m = generate(gen_flags.spec(gen_unique));
        save_matrix(m, gen_out, gen_to, gen_idx);
        return kExitOk;
    }

    if (sweep->parsed()) {
        const CooMatrix structure = generate(sweep_flags.spec(1));
        std::ostringstream csv;
        csv << "n_unique,mmr,dense_bytes,csc_model,csc_actual,vcsc_model,vcsc_actual,"
               "ivcsc_model,ivcsc_actual\n";
        csv.precision(6);
        csv.setf(std::ios::fixed);
        for (std::uint64_t n_unique : sweep_uniques) {
            const CooMatrix m =
                reassign_values(structure, n_unique, sweep_flags.seed + n_unique);
            const auto stats_cols = column_stats(m);
            const std::uint8_t val = m.value_kind.width_bytes;
            const VcscMatrix vcsc = vcsc_from_coo(m, {sweep_idx});
            csv << n_unique << "," << mmr(stats_cols) << ","
                << dense_size_bytes(m.dims, val) << ","
                << csc_size_model(m.nnz(), m.dims.ncols, val, sweep_idx) << ","
                << csc_byte_size(csc_from_coo(m, {sweep_idx})) << ","
                << vcsc_size_model(stats_cols, val, sweep_idx) << "," << vcsc_byte_size(vcsc)
                << "," << ivcsc_size_model(stats_cols, val) << ","
                << ivcsc_byte_size(ivcsc_from_vcsc(vcsc)) << "\n";
        }
        if (sweep_out.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream out(sweep_out);
            if (!out) throw UsageError("cannot write '" + sweep_out + "'");
            out << csv.str();
        }
        return kExitOk;
    }

    if (bench->parsed()) {
        BenchConfig config;
        config.base = bench_flags.spec(bench_uniques.empty() ? 1 : bench_uniques.front());
        config.unique_sweep = bench_uniques;
        config.formats.clear();
        for (const auto& name : bench_formats) config.formats.push_back(parse_bench_format(name));
        config.ops.clear();
        for (const auto& name : bench_ops) config.ops.push_back(parse_bench_op(name));
        config.repeats = bench_repeats;
        config.spmm_cols = bench_spmm_cols;
        const auto records = run_benchmark(config);
        if (bench_out.empty()) {
            write_bench_csv(std::cout, records);
        } else {
            std::ofstream out(bench_out);
            if (!out) throw UsageError("cannot write '" + bench_out + "'");
            write_bench_csv(out, records);
        }
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
}
