#include "apfp/Random.h"

namespace apfp {

int64_t RandomNumberGenerator::NextInRange(int64_t low, int64_t high) {
    const uint64_t range = static_cast<uint64_t>(high - low) + 1;
    if (range == 0) {  // full 64-bit range
        return static_cast<int64_t>(engine_());
    }
    // Reject the tail that would bias the modulus.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return low + static_cast<int64_t>(draw % range);
}

WideUint RandomNumberGenerator::NextMantissa(int bits) {
    WideUint result(bits);
    for (int i = 0; i < result.NumWords(); ++i) {
        result.SetWord(i, engine_());
    }
    result.SetWord(result.NumWords() - 1,
                   result.Word(result.NumWords() - 1) | (uint64_t(1) << ((bits - 1) % 64)));
    return result;
}

PackedFloat RandomNumberGenerator::NextNumber(int width_bits, int64_t exponent_min,
                                              int64_t exponent_max) {
    const bool sign = engine_() & 1;
    const int64_t exponent = NextInRange(exponent_min, exponent_max);
    return PackedFloat::Pack(sign, exponent, NextMantissa(width_bits - kWordBits));
}

PackedMatrix RandomNumberGenerator::NextMatrix(int rows, int cols, int width_bits,
                                               int64_t exponent_min, int64_t exponent_max) {
    PackedMatrix result(rows, cols, width_bits);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            result(i, j) = NextNumber(width_bits, exponent_min, exponent_max);
        }
    }
    return result;
}

}  // namespace apfp
