#include "apfp/ArithmeticOperations.h"

#include "apfp/Karatsuba.h"

#include <cassert>

namespace apfp {

namespace {

void CheckWidths(PackedFloat const &a, PackedFloat const &b) {
    if (a.WidthBits() != b.WidthBits()) {
        throw ContractError("Operands must have the same packed width.");
    }
}

PackedFloat PackChecked(bool sign, __int128 exponent, WideUint const &mantissa) {
    if (exponent < kExponentMin || exponent > kExponentMax) {
        throw RangeError("Exponent overflow in floating-point operation.");
    }
    return PackedFloat::Pack(sign, static_cast<int64_t>(exponent), mantissa);
}

}  // namespace

PackedFloat Multiply(PackedFloat const &a, PackedFloat const &b, MulConfig const &cfg) {
    CheckWidths(a, b);
    if (a.IsZero() || b.IsZero()) {
        return PackedFloat::Zero(a.WidthBits());
    }
    const int mantissa_bits = a.MantissaBits();
    const bool sign = a.GetSign() != b.GetSign();
    // Significands are in [1/2, 1), so the exact product lies in [1/4, 1) and
    // needs at most one renormalization shift.
    const WideUint product = MulKaratsuba(a.GetMantissa(), b.GetMantissa(), cfg);
    const bool msb_set = product.GetBit(2 * mantissa_bits - 1);
    __int128 exponent =
        static_cast<__int128>(a.GetExponent()) + b.GetExponent() - (msb_set ? 0 : 1);
    const WideUint shifted = msb_set ? product : ShiftLeft(product, 1);
    // Keep the top mantissa_bits bits; everything below is truncated.
    const WideUint mantissa = Extract(shifted, mantissa_bits, mantissa_bits);
    return PackChecked(sign, exponent, mantissa);
}

PackedFloat Add(PackedFloat const &a_in, PackedFloat const &b_in) {
    CheckWidths(a_in, b_in);
    if (a_in.IsZero()) {
        return b_in.IsZero() ? PackedFloat::Zero(a_in.WidthBits()) : b_in;
    }
    if (b_in.IsZero()) {
        return a_in;
    }
    const int width_bits = a_in.WidthBits();
    const int mantissa_bits = a_in.MantissaBits();

    // Order the operands so that a is the one with the larger magnitude:
    // compare exponents, then mantissas. Normalization makes the exponent
    // comparison decisive whenever it is strict.
    const WideUint a_mantissa_in = a_in.GetMantissa();
    const WideUint b_mantissa_in = b_in.GetMantissa();
    const bool a_larger = a_in.GetExponent() != b_in.GetExponent()
                              ? a_in.GetExponent() > b_in.GetExponent()
                              : Compare(a_mantissa_in, b_mantissa_in) >= 0;
    PackedFloat const &a = a_larger ? a_in : b_in;
    PackedFloat const &b = a_larger ? b_in : a_in;
    WideUint const &a_mantissa = a_larger ? a_mantissa_in : b_mantissa_in;
    WideUint const &b_mantissa = a_larger ? b_mantissa_in : a_mantissa_in;

    const bool subtraction = a.GetSign() != b.GetSign();
    const __int128 shift = static_cast<__int128>(a.GetExponent()) - b.GetExponent();

    // Work at 2M + 1 bits: M guard bits below the operands plus one overflow
    // bit on top, with everything shifted out beyond that folded into sticky.
    const int extended_bits = 2 * mantissa_bits + 1;
    const WideUint a_extended = ShiftLeft(Resize(a_mantissa, extended_bits), mantissa_bits);
    WideUint b_extended(extended_bits);
    bool sticky = false;
    if (shift >= extended_bits) {
        sticky = true;  // b is nonzero here
    } else {
        const auto aligned = ShiftRightSticky(
            ShiftLeft(Resize(b_mantissa, extended_bits), mantissa_bits),
            static_cast<int64_t>(shift));
        b_extended = aligned.shifted;
        sticky = aligned.sticky;
    }

    bool sign = a.GetSign();
    __int128 exponent = a.GetExponent();
    WideUint mantissa(mantissa_bits);
    if (!subtraction) {
        const auto sum = AddStaged(a_extended, b_extended, kWordBits);
        assert(!sum.carry);
        if (sum.sum.GetBit(2 * mantissa_bits)) {
            // Mantissa overflow: drop one more bit (truncated) and bump the
            // exponent.
            mantissa = Extract(sum.sum, mantissa_bits + 1, mantissa_bits);
            exponent += 1;
        } else {
            mantissa = Extract(sum.sum, mantissa_bits, mantissa_bits);
        }
    } else {
        const auto diff = SubStaged(a_extended, b_extended, kWordBits);
        assert(!diff.borrow);
        WideUint d = diff.difference;
        if (sticky) {
            // The discarded tail makes the exact difference strictly smaller
            // than d; stepping d down before renormalizing is what keeps the
            // truncated result on the correct side.
            const auto adjusted = SubStaged(d, WideUint::FromUint64(extended_bits, 1), kWordBits);
            assert(!adjusted.borrow);
            d = adjusted.difference;
        }
        if (d.IsZero()) {
            return PackedFloat::Zero(width_bits);
        }
        const int leading_zeros = 2 * mantissa_bits - BitLength(d);
        mantissa = Extract(ShiftLeft(d, leading_zeros), mantissa_bits, mantissa_bits);
        exponent -= leading_zeros;
    }
    return PackChecked(sign, exponent, mantissa);
}

PackedFloat MultiplyAdd(PackedFloat const &a, PackedFloat const &b, PackedFloat const &c,
                        MulConfig const &cfg) {
    return Add(Multiply(a, b, cfg), c);
}

}  // namespace apfp
