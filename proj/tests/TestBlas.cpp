#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apfp/Blas.h"
#include "apfp/Oracle.h"
#include "apfp/Random.h"

#include <vector>

using apfp::BlasTrans;
using apfp::Gemm;
using apfp::GemmConfig;
using apfp::LimbNumber;
using apfp::PackedFloat;
using apfp::PackedMatrix;
using apfp::RandomNumberGenerator;

namespace {

constexpr int kWidth = 512;
constexpr int kPrecision = kWidth - 64;

// Column-major limb-number storage with an explicit leading dimension.
struct HostMatrix {
    int rows, cols, ld;
    std::vector<LimbNumber> data;

    HostMatrix(int rows_, int cols_, int ld_ = 0)
        : rows(rows_), cols(cols_), ld(ld_ ? ld_ : rows_),
          data(static_cast<size_t>(ld) * cols, LimbNumber::Zero(kPrecision)) {}

    LimbNumber &At(int i, int j) { return data[static_cast<size_t>(j) * ld + i]; }
    LimbNumber const &At(int i, int j) const {
        return data[static_cast<size_t>(j) * ld + i];
    }

    apfp::ConstIndexFn Reader() const {
        return [this](size_t i) -> LimbNumber const & { return data[i]; };
    }
    apfp::IndexFn Writer() {
        return [this](size_t i) -> LimbNumber & { return data[i]; };
    }
};

HostMatrix RandomHost(RandomNumberGenerator &rng, int rows, int cols, int ld = 0) {
    HostMatrix m(rows, cols, ld);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            m.At(i, j) = apfp::ToLimbs(rng.NextNumber(kWidth), kPrecision);
        }
    }
    return m;
}

PackedMatrix ToPacked(HostMatrix const &m, bool transpose) {
    const int rows = transpose ? m.cols : m.rows;
    const int cols = transpose ? m.rows : m.cols;
    PackedMatrix p(rows, cols, kWidth);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            p(i, j) = apfp::FromLimbs(transpose ? m.At(j, i) : m.At(i, j), kWidth);
        }
    }
    return p;
}

void CheckAgainstReference(HostMatrix const &a, BlasTrans trans_a, HostMatrix const &b,
                           BlasTrans trans_b, HostMatrix const &c0, int m, int n, int k) {
    PackedMatrix reference = ToPacked(c0, false);
    apfp::oracle::GemmNaive(ToPacked(a, trans_a == BlasTrans::transpose),
                            ToPacked(b, trans_b == BlasTrans::transpose), reference);

    HostMatrix c = c0;
    Gemm(trans_a, trans_b, m, n, k, a.Reader(), a.ld, b.Reader(), b.ld, c.Writer(), c.ld,
         GemmConfig{8, 8, 2, {}}, kWidth);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            REQUIRE(apfp::FromLimbs(c.At(i, j), kWidth) == reference(i, j));
        }
    }
}

}  // namespace

TEST_CASE("Empty problems are no-ops") {
    HostMatrix a(0, 0), b(0, 0), c(0, 0);
    Gemm(BlasTrans::normal, BlasTrans::normal, 0, 0, 0, a.Reader(), 1, b.Reader(), 1,
         c.Writer(), 1);

    // k = 0 with nonempty C adds nothing but must leave C intact.
    RandomNumberGenerator rng(40);
    HostMatrix c2 = RandomHost(rng, 3, 4);
    const HostMatrix before = c2;
    HostMatrix a2(3, 0), b2(0, 4);
    Gemm(BlasTrans::normal, BlasTrans::normal, 3, 4, 0, a2.Reader(), a2.ld, b2.Reader(), 1,
         c2.Writer(), c2.ld);
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 3; ++i) {
            CHECK(apfp::FromLimbs(c2.At(i, j), kWidth) ==
                  apfp::FromLimbs(before.At(i, j), kWidth));
        }
    }
}

TEST_CASE("All four transpose combinations match the reference") {
    RandomNumberGenerator rng(41);
    const int m = 7, n = 5, k = 6;

    SUBCASE("normal normal") {
        const HostMatrix a = RandomHost(rng, m, k);
        const HostMatrix b = RandomHost(rng, k, n);
        const HostMatrix c = RandomHost(rng, m, n);
        CheckAgainstReference(a, BlasTrans::normal, b, BlasTrans::normal, c, m, n, k);
    }
    SUBCASE("transpose normal") {
        const HostMatrix a = RandomHost(rng, k, m);
        const HostMatrix b = RandomHost(rng, k, n);
        const HostMatrix c = RandomHost(rng, m, n);
        CheckAgainstReference(a, BlasTrans::transpose, b, BlasTrans::normal, c, m, n, k);
    }
    SUBCASE("normal transpose") {
        const HostMatrix a = RandomHost(rng, m, k);
        const HostMatrix b = RandomHost(rng, n, k);
        const HostMatrix c = RandomHost(rng, m, n);
        CheckAgainstReference(a, BlasTrans::normal, b, BlasTrans::transpose, c, m, n, k);
    }
    SUBCASE("transpose transpose") {
        const HostMatrix a = RandomHost(rng, k, m);
        const HostMatrix b = RandomHost(rng, n, k);
        const HostMatrix c = RandomHost(rng, m, n);
        CheckAgainstReference(a, BlasTrans::transpose, b, BlasTrans::transpose, c, m, n, k);
    }
}

TEST_CASE("Padded leading dimensions") {
    RandomNumberGenerator rng(42);
    const int m = 4, n = 3, k = 5;
    const HostMatrix a = RandomHost(rng, m, k, /*ld=*/9);
    const HostMatrix b = RandomHost(rng, k, n, /*ld=*/11);
    const HostMatrix c = RandomHost(rng, m, n, /*ld=*/6);
    CheckAgainstReference(a, BlasTrans::normal, b, BlasTrans::normal, c, m, n, k);

    // Padding rows beyond m must never be touched.
    HostMatrix padded = c;
    padded.At(m, 0) = apfp::ToLimbs(rng.NextNumber(kWidth), kPrecision);
    const LimbNumber sentinel = padded.At(m, 0);
    Gemm(BlasTrans::normal, BlasTrans::normal, m, n, k, a.Reader(), a.ld, b.Reader(), b.ld,
         padded.Writer(), padded.ld);
    CHECK(apfp::FromLimbs(padded.At(m, 0), kWidth) == apfp::FromLimbs(sentinel, kWidth));
}

TEST_CASE("Output keeps the caller's precision") {
    RandomNumberGenerator rng(43);
    const int m = 3, n = 3, k = 3;
    const HostMatrix a = RandomHost(rng, m, k);
    const HostMatrix b = RandomHost(rng, k, n);

    // C stores a narrower significand than the compute width.
    HostMatrix c(m, n);
    for (auto &x : c.data) {
        x = apfp::ToLimbs(rng.NextNumber(kWidth), 100);
    }
    Gemm(BlasTrans::normal, BlasTrans::normal, m, n, k, a.Reader(), a.ld, b.Reader(), b.ld,
         c.Writer(), c.ld);
    for (auto const &x : c.data) {
        CHECK(x.precision_bits == 100);
    }
}

TEST_CASE("Dimension validation") {
    HostMatrix a(4, 5), b(5, 6), c(4, 6);
    CHECK_THROWS_AS(Gemm(BlasTrans::normal, BlasTrans::normal, 4, 6, 5, a.Reader(), 3,
                         b.Reader(), b.ld, c.Writer(), c.ld),
                    apfp::ContractError);
    CHECK_THROWS_AS(Gemm(BlasTrans::normal, BlasTrans::normal, 4, 6, 5, a.Reader(), a.ld,
                         b.Reader(), 4, c.Writer(), c.ld),
                    apfp::ContractError);
    CHECK_THROWS_AS(Gemm(BlasTrans::normal, BlasTrans::normal, -1, 6, 5, a.Reader(), a.ld,
                         b.Reader(), b.ld, c.Writer(), c.ld),
                    apfp::ContractError);
    // Transposed A is k x m in storage, so lda must cover k.
    CHECK_THROWS_AS(Gemm(BlasTrans::transpose, BlasTrans::normal, 5, 6, 4, a.Reader(), 3,
                         b.Reader(), b.ld, c.Writer(), c.ld),
                    apfp::ContractError);
}
