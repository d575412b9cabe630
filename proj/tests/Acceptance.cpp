// Acceptance checks for the numerical contract of the library: one line per
// criterion, nonzero exit if any fails. The first argument must be the path
// to the command line tool, which the last criterion drives end to end.

#include "apfp/ArithmeticOperations.h"
#include "apfp/Dse.h"
#include "apfp/Karatsuba.h"
#include "apfp/MatrixIo.h"
#include "apfp/MatrixMultiplication.h"
#include "apfp/MpfrInterop.h"
#include "apfp/Oracle.h"
#include "apfp/PackedFloat.h"
#include "apfp/Random.h"
#include "apfp/WideUint.h"

#include <gmpxx.h>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void Run(int index, std::string const &name,
         std::function<bool(std::string &)> const &body) {
    std::string detail;
    bool ok = false;
    bool skipped = false;
    try {
        ok = body(detail);
        skipped = detail.rfind("skipped", 0) == 0;
    } catch (std::exception const &error) {
        detail = std::string("exception: ") + error.what();
    }
    const char *status = skipped ? "SKIP" : (ok ? "PASS" : "FAIL");
    if (!ok && !skipped) {
        ++failures;
    }
    std::printf("criterion %2d: %s  %s%s%s\n", index, status, name.c_str(),
                detail.empty() ? "" : "  [", detail.empty() ? "" : (detail + "]").c_str());
    std::fflush(stdout);
}

apfp::WideUint RandomUint(apfp::RandomNumberGenerator &rng, int bits) {
    apfp::WideUint r(bits);
    for (int i = 0; i < r.NumWords(); ++i) {
        r.SetWord(i, rng.NextWord());
    }
    return r;
}

std::string Format(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.2f", value);
    return buffer;
}

////////////////////////////////////////////////////////////////////////////////
// 1: exhaustive 8-bit multiplier correctness
////////////////////////////////////////////////////////////////////////////////

bool Criterion1(std::string &detail) {
    const auto start = Clock::now();
    int64_t checked = 0;
    for (const int base : {2, 4}) {
        const apfp::MulConfig cfg{base, 64};
        for (int x = 0; x < 256; ++x) {
            for (int y = 0; y < 256; ++y) {
                const auto a = apfp::WideUint::FromUint64(8, static_cast<uint64_t>(x));
                const auto b = apfp::WideUint::FromUint64(8, static_cast<uint64_t>(y));
                if (apfp::MulKaratsuba(a, b, cfg).ToUint64() !=
                    static_cast<uint64_t>(x * y)) {
                    detail = "wrong product for " + std::to_string(x) + " * " +
                             std::to_string(y) + " at base " + std::to_string(base);
                    return false;
                }
                ++checked;
            }
        }
    }
    const double seconds = SecondsSince(start);
    detail = std::to_string(checked) + " products in " + Format(seconds) + " s";
    return seconds < 1.0;
}

////////////////////////////////////////////////////////////////////////////////
// 2: randomized multiplier correctness across widths and bases
////////////////////////////////////////////////////////////////////////////////

bool Criterion2(std::string &detail) {
    const auto start = Clock::now();
    apfp::RandomNumberGenerator rng(1002);
    int64_t checked = 0;
    for (const int bits : {64, 512, 1024}) {
        for (const int base : {18, 36, 72, 144}) {
            const apfp::MulConfig cfg{base, 64};
            for (int trial = 0; trial < 10000; ++trial) {
                const apfp::WideUint a = RandomUint(rng, bits);
                const apfp::WideUint b = RandomUint(rng, bits);
                if (apfp::MulKaratsuba(a, b, cfg) != apfp::MulSchoolbook(a, b)) {
                    detail = "mismatch at width " + std::to_string(bits) + ", base " +
                             std::to_string(base);
                    return false;
                }
                ++checked;
            }
        }
    }
    const double seconds = SecondsSince(start);
    detail = std::to_string(checked) + " pairs in " + Format(seconds) + " s";
    return seconds < 60.0;
}

////////////////////////////////////////////////////////////////////////////////
// 3: worked decomposition
////////////////////////////////////////////////////////////////////////////////

bool Criterion3(std::string &detail) {
    const auto a = apfp::WideUint::FromUint64(8, 171);
    const auto b = apfp::WideUint::FromUint64(8, 205);
    apfp::KaratsubaTrace trace;
    const apfp::WideUint p = apfp::MulKaratsubaTraced(a, b, apfp::MulConfig{4, 64}, trace);
    const bool ok = p.ToUint64() == 35055 && trace.c0.ToUint64() == 143 &&
                    trace.c2.ToUint64() == 120 && trace.t.ToUint64() == 1 &&
                    !trace.t_negative && trace.c1.ToUint64() == 262;
    detail = "c0=" + std::to_string(trace.c0.ToUint64()) +
             " c2=" + std::to_string(trace.c2.ToUint64()) +
             " t=" + std::to_string(trace.t.ToUint64()) +
             " c1=" + std::to_string(trace.c1.ToUint64()) +
             " product=" + std::to_string(p.ToUint64());
    return ok;
}

////////////////////////////////////////////////////////////////////////////////
// 4: floating-point operations against the exact oracle
////////////////////////////////////////////////////////////////////////////////

bool Criterion4(std::string &detail) {
    const auto start = Clock::now();
    const int width = 512;
    apfp::RandomNumberGenerator rng(1004);
    int64_t operations = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        const apfp::PackedFloat a = rng.NextNumber(width);
        const apfp::PackedFloat b = rng.NextNumber(width);
        const apfp::PackedFloat c = rng.NextNumber(width);
        if (apfp::Multiply(a, b) != apfp::oracle::RefMultiply(a, b)) {
            detail = "multiply mismatch: " + a.ToString() + " * " + b.ToString();
            return false;
        }
        if (apfp::Add(a, b) != apfp::oracle::RefAdd(a, b)) {
            detail = "add mismatch: " + a.ToString() + " + " + b.ToString();
            return false;
        }
        if (apfp::MultiplyAdd(a, b, c) != apfp::oracle::RefMultiplyAdd(a, b, c)) {
            detail = "multiply-add mismatch";
            return false;
        }
        operations += 3;
    }

    // Directed: 1 - 2^-500 truncates to the all-ones mantissa just below 1.
    const apfp::PackedFloat one = apfp::PackedFloat::One(width);
    apfp::WideUint tiny_mantissa(448);
    tiny_mantissa.SetWord(6, uint64_t(1) << 63);
    const apfp::PackedFloat tiny = apfp::PackedFloat::Pack(true, -499, tiny_mantissa);
    const apfp::PackedFloat near_one = apfp::Add(one, tiny);
    mpz_class mantissa;
    mpz_import(mantissa.get_mpz_t(), 7, -1, sizeof(uint64_t), 0, 0,
               near_one.GetMantissa().Words());
    if (near_one.GetExponent() != 0 || mantissa != (mpz_class(1) << 448) - 1 ||
        near_one != apfp::oracle::RefAdd(one, tiny)) {
        detail = "directed subtraction wrong: " + near_one.ToString();
        return false;
    }

    // Directed: exact cancellation collapses to the canonical zero.
    const apfp::PackedFloat x = rng.NextNumber(width);
    const apfp::PackedFloat minus_x =
        apfp::PackedFloat::Pack(!x.GetSign(), x.GetExponent(), x.GetMantissa());
    if (apfp::Add(x, minus_x) != apfp::PackedFloat::Zero(width)) {
        detail = "cancellation did not produce zero";
        return false;
    }

    detail = std::to_string(operations) + " operations in " +
             Format(SecondsSince(start)) + " s";
    return true;
}

////////////////////////////////////////////////////////////////////////////////
// 5: differential against the reference library
////////////////////////////////////////////////////////////////////////////////

bool Criterion5(std::string &detail) {
    if (!apfp::mpfr_interop::Available()) {
        detail = "skipped: reference library not built in";
        return true;
    }
    const auto start = Clock::now();
    apfp::RandomNumberGenerator rng(1005);
    int64_t operations = 0;
    for (const int width : {512, 1024}) {
        for (int trial = 0; trial < 10000; ++trial) {
            const apfp::PackedFloat a = rng.NextNumber(width);
            const apfp::PackedFloat b = rng.NextNumber(width);
            if (apfp::Multiply(a, b) != apfp::mpfr_interop::RefMultiply(a, b)) {
                detail = "multiply mismatch at width " + std::to_string(width);
                return false;
            }
            if (apfp::Add(a, b) != apfp::mpfr_interop::RefAdd(a, b)) {
                detail = "add mismatch at width " + std::to_string(width);
                return false;
            }
            operations += 2;
        }
    }
    detail = std::to_string(operations) + " operations at 448- and 960-bit significands in " +
             Format(SecondsSince(start)) + " s";
    return true;
}

////////////////////////////////////////////////////////////////////////////////
// 6: matrix multiplication against the naive reference
////////////////////////////////////////////////////////////////////////////////

bool Criterion6(std::string &detail) {
    const auto start = Clock::now();
    apfp::RandomNumberGenerator rng(1006);
    for (const int n : {1, 2, 3, 5, 31, 32, 33, 64, 100}) {
        const apfp::PackedMatrix a = rng.NextMatrix(n, n, 512);
        const apfp::PackedMatrix b = rng.NextMatrix(n, n, 512);
        const apfp::PackedMatrix c0 = rng.NextMatrix(n, n, 512);
        apfp::PackedMatrix reference = c0;
        apfp::oracle::GemmNaive(a, b, reference);
        for (const auto &[tile_n, tile_m] : {std::pair{8, 8}, {32, 32}}) {
            for (const int units : {1, 2, 4}) {
                apfp::PackedMatrix c = c0;
                apfp::GemmTiled(a, b, c, apfp::GemmConfig{tile_n, tile_m, units, {}});
                if (c != reference) {
                    detail = "mismatch at n=" + std::to_string(n) + " tile " +
                             std::to_string(tile_n) + "x" + std::to_string(tile_m) + " units " +
                             std::to_string(units);
                    return false;
                }
            }
        }
    }
    const double seconds = SecondsSince(start);
    detail = "all shapes, tilings and worker counts in " + Format(seconds) + " s";
    return seconds < 300.0;
}

////////////////////////////////////////////////////////////////////////////////
// 7: design-space model numbers
////////////////////////////////////////////////////////////////////////////////

bool Criterion7(std::string &detail) {
    const auto deep = apfp::dse::CountBaseMults(512, 18);
    if (deep.count != 243 || deep.depth != 5) {
        detail = "512/18 expected 243 leaves at depth 5, got " + std::to_string(deep.count) +
                 " at depth " + std::to_string(deep.depth);
        return false;
    }
    const auto shallow = apfp::dse::CountBaseMults(512, 72);
    if (shallow.count != 27 || shallow.depth != 3) {
        detail = "512/72 expected 27 leaves at depth 3, got " + std::to_string(shallow.count) +
                 " at depth " + std::to_string(shallow.depth);
        return false;
    }
    if (apfp::ArithmeticIntensity(32, 32) != 16.0) {
        detail = "32x32 intensity expected 16";
        return false;
    }
    const auto reports = apfp::dse::Sweep({512}, {18, 36, 72, 144}, {32, 64, 128, 256});
    for (const auto &r : reports) {
        if (r.mult_base_bits == 72 && r.add_base_bits >= 64 && !r.pareto_efficient) {
            detail = "(72, " + std::to_string(r.add_base_bits) + ") not on the Pareto front";
            return false;
        }
    }
    detail = "leaf counts, intensity and Pareto membership as expected";
    return true;
}

////////////////////////////////////////////////////////////////////////////////
// 8: serialization round trips
////////////////////////////////////////////////////////////////////////////////

bool Criterion8(std::string &detail) {
    apfp::RandomNumberGenerator rng(1008);
    int64_t checked = 0;
    for (const int width : {512, 1024}) {
        for (int trial = 0; trial < 10000; ++trial) {
            const apfp::PackedFloat x = rng.NextNumber(width);
            if (apfp::PackedFloat::Pack(x.GetSign(), x.GetExponent(), x.GetMantissa()) != x) {
                detail = "pack/unpack roundtrip failed at width " + std::to_string(width);
                return false;
            }
            const auto bytes = x.ToBytes();
            if (apfp::PackedFloat::FromBytes(width, bytes.data()) != x ||
                apfp::PackedFloat::FromWords(width, x.Words()) != x) {
                detail = "serialize roundtrip failed at width " + std::to_string(width);
                return false;
            }
            ++checked;
        }
    }
    const apfp::PackedMatrix m = rng.NextMatrix(9, 4, 512);
    const std::string path = "/tmp/apfp_acceptance_matrix.bin";
    apfp::WriteMatrixFile(path, m);
    const apfp::PackedMatrix back = apfp::ReadMatrixFile(path);
    std::remove(path.c_str());
    if (back != m) {
        detail = "matrix file roundtrip failed";
        return false;
    }
    detail = std::to_string(checked) + " value roundtrips and one matrix file";
    return true;
}

////////////////////////////////////////////////////////////////////////////////
// 9: multiplication cost scaling
////////////////////////////////////////////////////////////////////////////////

double TimeMultiply(int width, int trials) {
    apfp::RandomNumberGenerator rng(1009);
    std::vector<apfp::PackedFloat> a, b;
    for (int i = 0; i < trials; ++i) {
        a.push_back(rng.NextNumber(width));
        b.push_back(rng.NextNumber(width));
    }
    const apfp::MulConfig cfg{64, 64};
    double best = 1e300;
    for (int repeat = 0; repeat < 3; ++repeat) {
        const auto start = Clock::now();
        for (int i = 0; i < trials; ++i) {
            volatile uint64_t guard = apfp::Multiply(a[i], b[i], cfg).Words()[0];
            (void)guard;
        }
        best = std::min(best, SecondsSince(start) / trials);
    }
    return best;
}

bool Criterion9(std::string &detail) {
    const double t512 = TimeMultiply(512, 2000);
    const double t4096 = TimeMultiply(4096, 250);
    const double ratio = t4096 / t512;
    detail = "per-op " + Format(t512 * 1e6) + " us vs " + Format(t4096 * 1e6) +
             " us, ratio " + Format(ratio) + "x (bound 45x)";
    return ratio < 45.0;
}

////////////////////////////////////////////////////////////////////////////////
// 10: command line determinism and CSV schemas
////////////////////////////////////////////////////////////////////////////////

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult RunCommand(std::string const &command) {
    CommandResult result{-1, {}};
    FILE *pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return result;
    }
    char buffer[4096];
    size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.output.append(buffer, n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool SchemaValid(std::string const &csv, std::string const &name, std::string &detail) {
    std::istringstream stream(csv);
    std::string line;
    if (!std::getline(stream, line) || line != "# schema: apfp." + name + ".v1") {
        detail = name + ": missing schema line, got \"" + line + "\"";
        return false;
    }
    std::string header;
    if (!std::getline(stream, header) || header.empty()) {
        detail = name + ": missing header line";
        return false;
    }
    const auto columns = std::count(header.begin(), header.end(), ',');
    int rows = 0;
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        if (std::count(line.begin(), line.end(), ',') != columns) {
            detail = name + ": ragged row \"" + line + "\"";
            return false;
        }
        ++rows;
    }
    if (rows == 0) {
        detail = name + ": no data rows";
        return false;
    }
    return true;
}

std::string ReadFile(std::string const &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool Criterion10(std::string const &cli, std::string &detail) {
    const std::string verify_cmd = cli + " verify --width 512 --trials 200 --seed 42 2>&1";
    const CommandResult first = RunCommand(verify_cmd);
    const CommandResult second = RunCommand(verify_cmd);
    if (first.exit_code != 0 || second.exit_code != 0) {
        detail = "verify exited with " + std::to_string(first.exit_code) + "/" +
                 std::to_string(second.exit_code);
        return false;
    }
    if (first.output != second.output) {
        detail = "verify output differs between runs";
        return false;
    }
    if (first.output.find("result: PASS") == std::string::npos) {
        detail = "verify did not report PASS";
        return false;
    }

    const std::string dse_a = "/tmp/apfp_acceptance_dse_a.csv";
    const std::string dse_b = "/tmp/apfp_acceptance_dse_b.csv";
    if (RunCommand(cli + " dse --csv " + dse_a).exit_code != 0 ||
        RunCommand(cli + " dse --csv " + dse_b).exit_code != 0) {
        detail = "dse sweep failed";
        return false;
    }
    const std::string dse_csv = ReadFile(dse_a);
    const bool dse_same = dse_csv == ReadFile(dse_b);
    std::remove(dse_a.c_str());
    std::remove(dse_b.c_str());
    if (!dse_same) {
        detail = "dse CSV differs between runs";
        return false;
    }
    if (!SchemaValid(dse_csv, "dse", detail)) {
        return false;
    }

    const std::string bench_mul_path = "/tmp/apfp_acceptance_bench_mul.csv";
    if (RunCommand(cli + " bench-mul --trials 100 --seed 42 --csv " + bench_mul_path)
            .exit_code != 0) {
        detail = "bench-mul failed";
        return false;
    }
    const std::string bench_mul_csv = ReadFile(bench_mul_path);
    std::remove(bench_mul_path.c_str());
    if (!SchemaValid(bench_mul_csv, "bench-mul", detail)) {
        return false;
    }

    const std::string bench_gemm_path = "/tmp/apfp_acceptance_bench_gemm.csv";
    if (RunCommand(cli + " bench-gemm --sizes 4,8 --seed 42 --csv " + bench_gemm_path)
            .exit_code != 0) {
        detail = "bench-gemm failed";
        return false;
    }
    const std::string bench_gemm_csv = ReadFile(bench_gemm_path);
    std::remove(bench_gemm_path.c_str());
    if (!SchemaValid(bench_gemm_csv, "bench-gemm", detail)) {
        return false;
    }

    detail = "verify deterministic, CSV schemas valid";
    return true;
}

}  // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path to apfp-cli>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];

    Run(1, "exhaustive 8-bit multiplier correctness", Criterion1);
    Run(2, "randomized multiplier correctness across widths and bases", Criterion2);
    Run(3, "worked decomposition of 171 * 205", Criterion3);
    Run(4, "floating-point operations against the exact oracle", Criterion4);
    Run(5, "differential against the reference library", Criterion5);
    Run(6, "tiled matrix product against the naive reference", Criterion6);
    Run(7, "design-space model numbers and Pareto front", Criterion7);
    Run(8, "serialization round trips", Criterion8);
    Run(9, "multiplication cost scaling from 512 to 4096 bits", Criterion9);
    Run(10, "command line determinism and CSV schemas",
        [&cli](std::string &detail) { return Criterion10(cli, detail); });

    if (failures != 0) {
        std::printf("%d criteria failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
