#include "apfp/Oracle.h"

#include <cstdlib>

namespace apfp {
namespace oracle {

namespace {

mpz_class MantissaToMpz(PackedFloat const &x) {
    const WideUint mantissa = x.GetMantissa();
    mpz_class result;
    mpz_import(result.get_mpz_t(), static_cast<size_t>(mantissa.NumWords()), -1,
               sizeof(uint64_t), 0, 0, mantissa.Words());
    return result;
}

}  // namespace

ExactValue FromPacked(PackedFloat const &x) {
    if (x.IsZero()) {
        return {mpz_class(0), 0};
    }
    mpz_class mantissa = MantissaToMpz(x);
    if (x.GetSign()) {
        mantissa = -mantissa;
    }
    // value = 0.m * 2^e = m * 2^(e - mantissa_bits)
    return {mantissa, x.GetExponent() - x.MantissaBits()};
}

ExactValue ExactMul(ExactValue const &a, ExactValue const &b) {
    return {a.mantissa * b.mantissa, a.exponent + b.exponent};
}

ExactValue ExactAdd(ExactValue const &a, ExactValue const &b) {
    if (a.mantissa == 0) {
        return b;
    }
    if (b.mantissa == 0) {
        return a;
    }
    const __int128 exponent = a.exponent < b.exponent ? a.exponent : b.exponent;
    mpz_class am = a.mantissa;
    mpz_class bm = b.mantissa;
    mpz_mul_2exp(am.get_mpz_t(), am.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exponent - exponent));
    mpz_mul_2exp(bm.get_mpz_t(), bm.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exponent - exponent));
    return {am + bm, exponent};
}

PackedFloat RoundToZero(ExactValue const &x, int mantissa_bits) {
    if (x.mantissa == 0) {
        return PackedFloat::Zero(mantissa_bits + kWordBits);
    }
    const bool sign = x.mantissa < 0;
    mpz_class magnitude = abs(x.mantissa);
    const auto bit_length =
        static_cast<int64_t>(mpz_sizeinbase(magnitude.get_mpz_t(), 2));
    // value = magnitude * 2^exponent = 0.f * 2^(exponent + bit_length) with
    // the significand left-aligned to mantissa_bits; dropping low bits on the
    // way is exactly truncation toward zero.
    const __int128 result_exponent = x.exponent + bit_length;
    if (result_exponent < kExponentMin || result_exponent > kExponentMax) {
        throw RangeError("Exponent overflow in reference rounding.");
    }
    if (bit_length >= mantissa_bits) {
        mpz_tdiv_q_2exp(magnitude.get_mpz_t(), magnitude.get_mpz_t(),
                        static_cast<mp_bitcnt_t>(bit_length - mantissa_bits));
    } else {
        mpz_mul_2exp(magnitude.get_mpz_t(), magnitude.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(mantissa_bits - bit_length));
    }
    WideUint mantissa(mantissa_bits);
    size_t exported = 0;
    mpz_export(mantissa.Words(), &exported, -1, sizeof(uint64_t), 0, 0, magnitude.get_mpz_t());
    mantissa.MaskTopWord();
    return PackedFloat::Pack(sign, static_cast<int64_t>(result_exponent), mantissa);
}

PackedFloat RefMultiply(PackedFloat const &a, PackedFloat const &b) {
    return RoundToZero(ExactMul(FromPacked(a), FromPacked(b)), a.MantissaBits());
}

PackedFloat RefAdd(PackedFloat const &a, PackedFloat const &b) {
    return RoundToZero(ExactAdd(FromPacked(a), FromPacked(b)), a.MantissaBits());
}

PackedFloat RefMultiplyAdd(PackedFloat const &a, PackedFloat const &b, PackedFloat const &c) {
    return RefAdd(RefMultiply(a, b), c);
}

void GemmNaive(PackedMatrix const &a, PackedMatrix const &b, PackedMatrix &c) {
    if (a.Cols() != b.Rows() || a.Rows() != c.Rows() || b.Cols() != c.Cols()) {
        throw ContractError("Mismatched matrix dimensions.");
    }
    for (int i = 0; i < c.Rows(); ++i) {
        for (int j = 0; j < c.Cols(); ++j) {
            for (int k = 0; k < a.Cols(); ++k) {
                c(i, j) = RefAdd(RefMultiply(a(i, k), b(k, j)), c(i, j));
            }
        }
    }
}

}  // namespace oracle
}  // namespace apfp
