#pragma once

#include "apfp/MatrixMultiplication.h"
#include "apfp/PackedFloat.h"
#include "apfp/WideUint.h"

#include <cstdint>
#include <random>

namespace apfp {

inline constexpr uint64_t kDefaultSeed = 42;
inline constexpr int64_t kDefaultExponentMin = -64;
inline constexpr int64_t kDefaultExponentMax = 64;

// Deterministic operand generator. Built on the fixed mt19937_64 sequence and
// a rejection-sampled bounded draw, so a seed reproduces the same stream on
// every platform. Mantissas are uniform with the top bit forced (normalized);
// exponents stay in a small range so that benchmarks and differential tests
// never trip the exponent range check.
class RandomNumberGenerator {
   public:
    explicit RandomNumberGenerator(uint64_t seed = kDefaultSeed) : engine_(seed) {}

    uint64_t NextWord() { return engine_(); }

    // Uniform in [low, high], unbiased.
    int64_t NextInRange(int64_t low, int64_t high);

    WideUint NextMantissa(int bits);

    PackedFloat NextNumber(int width_bits = kDefaultWidthBits,
                           int64_t exponent_min = kDefaultExponentMin,
                           int64_t exponent_max = kDefaultExponentMax);

    PackedMatrix NextMatrix(int rows, int cols, int width_bits = kDefaultWidthBits,
                            int64_t exponent_min = kDefaultExponentMin,
                            int64_t exponent_max = kDefaultExponentMax);

   private:
    std::mt19937_64 engine_;
};

}  // namespace apfp
