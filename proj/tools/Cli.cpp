#include <CLI11.hpp>

#include "apfp/ArithmeticOperations.h"
#include "apfp/Dse.h"
#include "apfp/Karatsuba.h"
#include "apfp/MatrixIo.h"
#include "apfp/MatrixMultiplication.h"
#include "apfp/MpfrInterop.h"
#include "apfp/Oracle.h"
#include "apfp/PackedFloat.h"
#include "apfp/Random.h"

#include <gmpxx.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Streams CSV either to stdout or to the file given by --csv. Every schema
// is versioned in a leading comment line.
class CsvOutput {
   public:
    explicit CsvOutput(std::string const &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("Cannot open " + path + " for writing.");
            }
        }
    }

    std::ostream &Stream() { return file_ ? *file_ : std::cout; }

   private:
    std::unique_ptr<std::ofstream> file_;
};

struct CommonOptions {
    int width = apfp::kDefaultWidthBits;
    int mult_base_bits = 72;
    int add_base_bits = 64;
    uint64_t seed = apfp::kDefaultSeed;
    std::string csv_path;
};

void AddWidthOption(CLI::App *cmd, int &width) {
    cmd->add_option("--width", width, "Total width in bits, a multiple of 512")
        ->check(CLI::Validator(
            [](std::string &value) {
                const int w = std::stoi(value);
                return (w >= 512 && w % 512 == 0) ? std::string()
                                                  : std::string("width must be a multiple of 512");
            },
            "WIDTH"));
}

////////////////////////////////////////////////////////////////////////////////
// bench-mul
////////////////////////////////////////////////////////////////////////////////

int BenchMul(CommonOptions const &opts, int64_t trials, int threads, bool hot_operand) {
    const apfp::MulConfig mul{opts.mult_base_bits, opts.add_base_bits};
    apfp::RandomNumberGenerator rng(opts.seed);

    // Precompute operand arrays so the timed loop streams through memory the
    // way the benchmark harness feeds the pipeline.
    const int64_t unique = std::min<int64_t>(trials, 1 << 12);
    std::vector<apfp::PackedFloat> a, b;
    a.reserve(static_cast<size_t>(unique));
    b.reserve(static_cast<size_t>(unique));
    for (int64_t i = 0; i < unique; ++i) {
        a.push_back(rng.NextNumber(opts.width));
        b.push_back(rng.NextNumber(opts.width));
    }

    const auto run = [&](bool hot) {
        const auto ranges = apfp::PartitionRows(static_cast<int>(trials), threads);
        std::vector<std::thread> workers;
        const auto start = Clock::now();
        for (const auto &[begin, end] : ranges) {
            workers.emplace_back([&, begin = begin, end = end] {
                apfp::PackedFloat sink(opts.width);
                for (int i = begin; i < end; ++i) {
                    const size_t j = hot ? 0 : static_cast<size_t>(i) % a.size();
                    sink = apfp::Multiply(a[j], b[j], mul);
                }
                // Keep the result observable so the loop cannot be elided.
                volatile uint64_t guard = sink.Words()[0];
                (void)guard;
            });
        }
        for (auto &worker : workers) {
            worker.join();
        }
        return SecondsSince(start);
    };

    CsvOutput csv(opts.csv_path);
    auto &out = csv.Stream();
    out << "# schema: apfp.bench-mul.v1\n";
    out << "operation,width_bits,mult_base_bits,add_base_bits,threads,mode,operations,seconds,"
           "ops_per_second\n";
    const auto emit = [&](std::string const &mode, double seconds) {
        out << "multiply," << opts.width << "," << opts.mult_base_bits << ","
            << opts.add_base_bits << "," << threads << "," << mode << "," << trials << ","
            << seconds << "," << (trials / seconds) << "\n";
    };
    emit("streaming", run(false));
    if (hot_operand) {
        emit("hot", run(true));
    }
    return 0;
}

////////////////////////////////////////////////////////////////////////////////
// bench-gemm
////////////////////////////////////////////////////////////////////////////////

int BenchGemm(CommonOptions const &opts, std::vector<int> const &sizes, int tile_n, int tile_m,
              int compute_units) {
    apfp::GemmConfig cfg;
    cfg.tile_n = tile_n;
    cfg.tile_m = tile_m;
    cfg.compute_units = compute_units;
    cfg.mul = {opts.mult_base_bits, opts.add_base_bits};

    CsvOutput csv(opts.csv_path);
    auto &out = csv.Stream();
    out << "# schema: apfp.bench-gemm.v1\n";
    out << "n,width_bits,tile_n,tile_m,compute_units,multiply_adds,seconds,mac_per_second\n";
    for (const int n : sizes) {
        apfp::RandomNumberGenerator rng(opts.seed);
        const apfp::PackedMatrix a = rng.NextMatrix(n, n, opts.width);
        const apfp::PackedMatrix b = rng.NextMatrix(n, n, opts.width);
        apfp::PackedMatrix c(n, n, opts.width);
        const auto start = Clock::now();
        apfp::GemmTiled(a, b, c, cfg);
        const double seconds = SecondsSince(start);
        const auto macs = static_cast<int64_t>(n) * n * n;
        out << n << "," << opts.width << "," << cfg.tile_n << "," << cfg.tile_m << ","
            << cfg.compute_units << "," << macs << "," << seconds << "," << (macs / seconds)
            << "\n";
    }
    return 0;
}

////////////////////////////////////////////////////////////////////////////////
// dse
////////////////////////////////////////////////////////////////////////////////

int Dse(std::vector<int> const &widths, std::vector<int> const &mult_bases,
        std::vector<int> const &add_bases, int tile_n, int tile_m, std::string const &csv_path) {
    const auto reports =
        apfp::dse::Sweep(widths, mult_bases, add_bases, std::make_pair(tile_n, tile_m));
    CsvOutput csv(csv_path);
    auto &out = csv.Stream();
    out << "# schema: apfp.dse.v1\n";
    out << "width,mult_base_bits,add_base_bits,recursion_depth,base_mult_count,base_mult_width,"
           "adder_stage_count_worst,modeled_bit_ops,modeled_bit_ops_schoolbook,"
           "modeled_adder_bits,modeled_resource_bits,modeled_delay_bits,arithmetic_intensity,"
           "pareto_efficient\n";
    for (const auto &r : reports) {
        out << r.width << "," << r.mult_base_bits << "," << r.add_base_bits << ","
            << r.recursion_depth << "," << r.base_mult_count << "," << r.base_mult_width << ","
            << r.adder_stage_count_worst << "," << r.modeled_bit_ops << ","
            << r.modeled_bit_ops_schoolbook << "," << r.modeled_adder_bits << ","
            << r.modeled_resource_bits << "," << r.modeled_delay_bits << ","
            << (r.arithmetic_intensity ? std::to_string(*r.arithmetic_intensity) : "") << ","
            << (r.pareto_efficient ? 1 : 0) << "\n";
    }
    return 0;
}

////////////////////////////////////////////////////////////////////////////////
// verify
////////////////////////////////////////////////////////////////////////////////

void DumpMismatch(std::ostream &out, std::string const &operation, apfp::PackedFloat const &a,
                  apfp::PackedFloat const &b, apfp::PackedFloat const &got,
                  apfp::PackedFloat const &want) {
    const auto hex = [](apfp::PackedFloat const &x) {
        std::string s;
        const auto bytes = x.ToBytes();
        for (auto it = bytes.rbegin(); it != bytes.rend(); ++it) {
            static const char digits[] = "0123456789abcdef";
            s += digits[*it >> 4];
            s += digits[*it & 0xF];
        }
        return s;
    };
    out << "mismatch in " << operation << "\n";
    out << "  a      = " << hex(a) << "\n";
    out << "  b      = " << hex(b) << "\n";
    out << "  result = " << hex(got) << "\n";
    out << "  expect = " << hex(want) << "\n";
}

int Verify(CommonOptions const &opts, int64_t trials) {
    const apfp::MulConfig mul{opts.mult_base_bits, opts.add_base_bits};
    const int width = opts.width;
    auto &out = std::cout;
    out << "apfp verify report\n";
    out << "width_bits: " << width << "\n";
    out << "mantissa_bits: " << width - apfp::kWordBits << "\n";
    out << "trials: " << trials << "\n";
    out << "seed: " << opts.seed << "\n";
    out << "mult_base_bits: " << mul.mult_base_bits << "\n";
    out << "add_base_bits: " << mul.add_base_bits << "\n";

    bool failed = false;
    const auto check = [&](std::string const &operation, apfp::PackedFloat const &a,
                           apfp::PackedFloat const &b, apfp::PackedFloat const &got,
                           apfp::PackedFloat const &want) {
        if (got != want) {
            DumpMismatch(out, operation, a, b, got, want);
            failed = true;
            return false;
        }
        return true;
    };

    apfp::RandomNumberGenerator rng(opts.seed);
    int64_t mul_ok = 0, add_ok = 0, mad_ok = 0, pack_ok = 0, bytes_ok = 0;
    for (int64_t i = 0; i < trials; ++i) {
        const apfp::PackedFloat a = rng.NextNumber(width);
        const apfp::PackedFloat b = rng.NextNumber(width);
        const apfp::PackedFloat c = rng.NextNumber(width);
        mul_ok += check("multiply", a, b, apfp::Multiply(a, b, mul),
                        apfp::oracle::RefMultiply(a, b));
        add_ok += check("add", a, b, apfp::Add(a, b), apfp::oracle::RefAdd(a, b));
        mad_ok += check("multiply_add", a, b, apfp::MultiplyAdd(a, b, c, mul),
                        apfp::oracle::RefMultiplyAdd(a, b, c));
        const apfp::PackedFloat repacked =
            apfp::PackedFloat::Pack(a.GetSign(), a.GetExponent(), a.GetMantissa());
        pack_ok += check("pack_roundtrip", a, a, repacked, a);
        const auto bytes = a.ToBytes();
        bytes_ok += check("serialize_roundtrip", a, a,
                          apfp::PackedFloat::FromBytes(width, bytes.data()), a);
    }
    out << "multiply vs reference: " << mul_ok << "/" << trials << " match\n";
    out << "add vs reference: " << add_ok << "/" << trials << " match\n";
    out << "multiply_add vs reference: " << mad_ok << "/" << trials << " match\n";
    out << "pack/unpack roundtrip: " << pack_ok << "/" << trials << " match\n";
    out << "serialize roundtrip: " << bytes_ok << "/" << trials << " match\n";

    // Directed cases: a subtraction whose tail is shifted out entirely (the
    // sticky path), and exact cancellation.
    {
        const apfp::PackedFloat one = apfp::PackedFloat::One(width);
        const int mantissa_bits = width - apfp::kWordBits;
        apfp::WideUint msb(mantissa_bits);
        msb.SetWord(msb.NumWords() - 1, uint64_t(1) << ((mantissa_bits - 1) % 64));
        const apfp::PackedFloat tiny =
            apfp::PackedFloat::Pack(true, 1 - 2 * mantissa_bits, msb);
        const apfp::PackedFloat got = apfp::Add(one, tiny);
        const apfp::PackedFloat want = apfp::oracle::RefAdd(one, tiny);
        const bool sticky_ok =
            check("directed_sticky", one, tiny, got, want) &&
            !got.IsZero() && got.GetExponent() == 0;
        out << "directed sticky subtraction: " << (sticky_ok ? "match" : "MISMATCH") << "\n";

        const apfp::PackedFloat x = rng.NextNumber(width);
        const apfp::PackedFloat minus_x =
            apfp::PackedFloat::Pack(!x.GetSign(), x.GetExponent(), x.GetMantissa());
        const apfp::PackedFloat cancel = apfp::Add(x, minus_x);
        const bool cancel_ok = cancel == apfp::PackedFloat::Zero(width) && cancel.IsZero();
        if (!cancel_ok) {
            DumpMismatch(out, "directed_cancellation", x, minus_x, cancel,
                         apfp::PackedFloat::Zero(width));
            failed = true;
        }
        out << "directed cancellation: " << (cancel_ok ? "match" : "MISMATCH") << "\n";
    }

    // Differential comparison against the reference software when built in.
    if (apfp::mpfr_interop::Available()) {
        int64_t ref_mul_ok = 0, ref_add_ok = 0;
        for (int64_t i = 0; i < trials; ++i) {
            const apfp::PackedFloat a = rng.NextNumber(width);
            const apfp::PackedFloat b = rng.NextNumber(width);
            ref_mul_ok += check("reference_multiply", a, b, apfp::Multiply(a, b, mul),
                                apfp::mpfr_interop::RefMultiply(a, b));
            ref_add_ok += check("reference_add", a, b, apfp::Add(a, b),
                                apfp::mpfr_interop::RefAdd(a, b));
        }
        out << "reference library comparison: " << ref_mul_ok << "/" << trials << " multiply, "
            << ref_add_ok << "/" << trials << " add\n";
    } else {
        out << "reference library comparison: skipped (not built in)\n";
    }

    out << "result: " << (failed ? "FAIL" : "PASS") << "\n";
    return failed ? 1 : 0;
}

////////////////////////////////////////////////////////////////////////////////
// convert
////////////////////////////////////////////////////////////////////////////////

// Text form: one value per line, column-major, preceded by a header. Values
// are emitted as [-]0x<mantissa hex>p<exponent> and parsed from either that
// form or plain decimal (scientific notation allowed).
apfp::PackedFloat ParseValue(std::string const &text, int width_bits) {
    const int mantissa_bits = width_bits - apfp::kWordBits;
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s == "0") {
        return apfp::PackedFloat::Zero(width_bits);
    }
    if (s.rfind("0x", 0) == 0) {
        const auto p = s.find('p');
        if (p == std::string::npos) {
            throw std::runtime_error("Missing exponent in hex value: " + text);
        }
        const apfp::WideUint mantissa =
            apfp::WideUint::FromHexString(mantissa_bits, s.substr(2, p - 2));
        const int64_t exponent = std::stoll(s.substr(p + 1));
        return apfp::PackedFloat::Pack(negative, exponent, mantissa);
    }
    // Decimal: digits[.digits][e[+-]digits] = D * 10^E exactly, then one
    // round-to-zero. Negative powers of ten go through a single exact
    // floor division at a precision beyond the mantissa.
    std::string digits;
    int64_t frac_digits = 0;
    int64_t exp10 = 0;
    size_t i = 0;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
        digits += s[i];
    }
    if (i < s.size() && s[i] == '.') {
        for (++i; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
            digits += s[i];
            ++frac_digits;
        }
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        exp10 = std::stoll(s.substr(i + 1));
        i = s.size();
    }
    if (digits.empty() || i != s.size()) {
        throw std::runtime_error("Cannot parse value: " + text);
    }
    mpz_class d(digits, 10);
    if (negative) {
        d = -d;
    }
    const int64_t e = exp10 - frac_digits;
    if (d == 0) {
        return apfp::PackedFloat::Zero(width_bits);
    }
    if (e >= 0) {
        mpz_class scaled = d;
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e));
        scaled *= p10;
        return apfp::oracle::RoundToZero({scaled, 0}, mantissa_bits);
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-e));
    // floor(|d| * 2^shift / den) keeps well over mantissa_bits significant
    // bits, so the subsequent rounding sees every bit it can retain.
    const auto shift = static_cast<mp_bitcnt_t>(
        mantissa_bits + mpz_sizeinbase(den.get_mpz_t(), 2) + 1);
    mpz_class num = abs(d);
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), shift);
    mpz_class q = num / den;
    if (d < 0) {
        q = -q;
    }
    return apfp::oracle::RoundToZero({q, -static_cast<__int128>(shift)}, mantissa_bits);
}

int Convert(std::string const &input, std::string const &output, bool to_binary, int width_bits) {
    if (to_binary) {
        std::ifstream in(input);
        if (!in) {
            throw std::runtime_error("Cannot open " + input + " for reading.");
        }
        std::string magic;
        int version = 0;
        in >> magic >> version;
        if (magic != "apfp-text" || version != 1) {
            throw std::runtime_error("Not an apfp-text stream.");
        }
        int rows = 0, cols = 0, width = 0;
        in >> rows >> cols >> width;
        if (!in) {
            throw std::runtime_error("Malformed apfp-text header.");
        }
        apfp::PackedMatrix matrix(rows, cols, width);
        std::string token;
        for (int j = 0; j < cols; ++j) {
            for (int i = 0; i < rows; ++i) {
                if (!(in >> token)) {
                    throw std::runtime_error("Truncated apfp-text stream.");
                }
                matrix(i, j) = ParseValue(token, width);
            }
        }
        apfp::WriteMatrixFile(output, matrix);
    } else {
        const apfp::PackedMatrix matrix = apfp::ReadMatrixFile(input);
        std::ofstream out(output);
        if (!out) {
            throw std::runtime_error("Cannot open " + output + " for writing.");
        }
        out << "apfp-text 1\n";
        out << matrix.Rows() << " " << matrix.Cols() << " " << matrix.WidthBits() << "\n";
        for (int j = 0; j < matrix.Cols(); ++j) {
            for (int i = 0; i < matrix.Rows(); ++i) {
                out << matrix(i, j).ToString() << "\n";
            }
        }
    }
    (void)width_bits;
    return 0;
}

std::vector<int> ParseIntList(std::string const &text) {
    std::vector<int> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        values.push_back(std::stoi(item));
    }
    if (values.empty()) {
        throw std::runtime_error("Empty list: " + text);
    }
    return values;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Arbitrary-precision floating-point toolkit"};
    app.require_subcommand(1);

    CommonOptions opts;
    int64_t trials = 10000;
    int threads = 1;
    bool hot_operand = false;
    std::string sizes = "8,16,32";
    int tile_n = 32;
    int tile_m = 32;
    int compute_units = 1;
    std::string widths = "512";
    std::string mult_bases = "18,36,72,144";
    std::string add_bases = "32,64,128,256";
    std::string input, output;
    bool to_binary = false;
    bool to_text = false;

    const auto add_common = [&](CLI::App *cmd, bool with_csv = true) {
        AddWidthOption(cmd, opts.width);
        cmd->add_option("--mult-base-bits", opts.mult_base_bits,
                        "Width at which the multiplier falls back on schoolbook");
        cmd->add_option("--add-base-bits", opts.add_base_bits, "Bits per addition stage");
        cmd->add_option("--seed", opts.seed, "Random seed");
        if (with_csv) {
            cmd->add_option("--csv", opts.csv_path, "Write CSV to this file instead of stdout");
        }
    };

    auto *bench_mul = app.add_subcommand("bench-mul", "Multiplier throughput benchmark");
    add_common(bench_mul);
    bench_mul->add_option("--trials", trials, "Operations to execute");
    bench_mul->add_option("--threads", threads, "Worker threads");
    bench_mul->add_flag("--hot-operand", hot_operand,
                        "Also measure a hot loop over a single operand pair");

    auto *bench_gemm = app.add_subcommand("bench-gemm", "Matrix multiplication benchmark");
    add_common(bench_gemm);
    bench_gemm->add_option("--sizes", sizes, "Comma-separated square matrix sizes");
    bench_gemm->add_option("--tile-n", tile_n, "Output tile rows");
    bench_gemm->add_option("--tile-m", tile_m, "Output tile columns");
    bench_gemm->add_option("--compute-units", compute_units, "Parallel workers");

    auto *dse = app.add_subcommand("dse", "Design-space sweep over the configuration grid");
    dse->add_option("--widths", widths, "Comma-separated widths");
    dse->add_option("--mult-bases", mult_bases, "Comma-separated multiplier base widths");
    dse->add_option("--add-bases", add_bases, "Comma-separated adder stage widths");
    dse->add_option("--tile-n", tile_n, "Tile rows for arithmetic intensity");
    dse->add_option("--tile-m", tile_m, "Tile columns for arithmetic intensity");
    dse->add_option("--csv", opts.csv_path, "Write CSV to this file instead of stdout");

    auto *verify = app.add_subcommand("verify", "Differential verification against the oracle");
    add_common(verify, /*with_csv=*/false);
    verify->add_option("--trials", trials, "Random operand pairs per check");

    auto *convert = app.add_subcommand("convert", "Convert between text and binary matrices");
    convert->add_option("--input", input, "Input file")->required();
    convert->add_option("--output", output, "Output file")->required();
    convert->add_flag("--to-binary", to_binary, "Text to binary");
    convert->add_flag("--to-text", to_text, "Binary to text");
    AddWidthOption(convert, opts.width);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench_mul->parsed()) {
            return BenchMul(opts, trials, threads, hot_operand);
        }
        if (bench_gemm->parsed()) {
            return BenchGemm(opts, ParseIntList(sizes), tile_n, tile_m, compute_units);
        }
        if (dse->parsed()) {
            return Dse(ParseIntList(widths), ParseIntList(mult_bases), ParseIntList(add_bases),
                       tile_n, tile_m, opts.csv_path);
        }
        if (verify->parsed()) {
            return Verify(opts, trials);
        }
        if (convert->parsed()) {
            if (to_binary == to_text) {
                std::cerr << "convert requires exactly one of --to-binary or --to-text\n";
                return 2;
            }
            return Convert(input, output, to_binary, opts.width);
        }
    } catch (std::exception const &error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
