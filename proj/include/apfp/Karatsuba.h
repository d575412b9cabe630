#pragma once

#include "apfp/WideUint.h"

#include <cassert>

namespace apfp {

// Top-level decomposition values of one Karatsuba step, exposed for
// inspection: the product is c0 + c1 * 2^h + c2 * 2^2h with
// c1 = c0 + c2 - s * t, t = |a1 - a0| * |b1 - b0| and s its sign.
struct KaratsubaTrace {
    WideUint c0;
    WideUint c2;
    WideUint t;
    bool t_negative;  // true when (a1 - a0) * (b1 - b0) < 0
    WideUint c1;
};

// Exact product of two equal-width operands at width 2B. Recursively splits
// at h = ceil(B / 2) into three half-width multiplications until the operand
// width drops to cfg.mult_base_bits, where schoolbook multiplication takes
// over. Wide additions are staged at cfg.add_base_bits.
WideUint MulKaratsuba(WideUint const &a, WideUint const &b, MulConfig const &cfg = {});

// Same computation, recording the top decomposition step into trace. Only
// meaningful when the width exceeds cfg.mult_base_bits so that at least one
// split happens.
WideUint MulKaratsubaTraced(WideUint const &a, WideUint const &b, MulConfig const &cfg,
                            KaratsubaTrace &trace);

// Compile-time specialized variant: the recursion structure is resolved
// entirely by the template instantiation, one specialization per width, as a
// hardware generator would elaborate it. Bit-identical to MulKaratsuba.
template <int bits, int base_bits, int add_bits = 64>
WideUint StaticKaratsuba(WideUint const &a, WideUint const &b) {
    static_assert(bits >= 1);
    static_assert(base_bits >= 2);
    assert(a.Bits() == bits && b.Bits() == bits);
    if constexpr (bits <= base_bits) {
        return MulSchoolbook(a, b);
    } else {
        constexpr int h = (bits + 1) / 2;
        const WideUint a0 = Extract(a, 0, h);
        const WideUint a1 = Extract(a, h, h);
        const WideUint b0 = Extract(b, 0, h);
        const WideUint b1 = Extract(b, h, h);

        const WideUint c0 = StaticKaratsuba<h, base_bits, add_bits>(a0, b0);
        const WideUint c2 = StaticKaratsuba<h, base_bits, add_bits>(a1, b1);

        const SignedMagnitude a_diff = AbsDiff(a1, a0);
        const SignedMagnitude b_diff = AbsDiff(b1, b0);
        const WideUint t =
            StaticKaratsuba<h, base_bits, add_bits>(a_diff.magnitude, b_diff.magnitude);
        const bool t_negative = a_diff.sign != b_diff.sign;

        // c1 = c0 + c2 - s * t never leaves [0, 2^(2h + 2)).
        const auto c0c2 = AddStaged(Resize(c0, 2 * h + 2), Resize(c2, 2 * h + 2), add_bits);
        assert(!c0c2.carry);
        WideUint c1(2 * h + 2);
        if (t_negative) {
            const auto r = AddStaged(c0c2.sum, Resize(t, 2 * h + 2), add_bits);
            assert(!r.carry);
            c1 = r.sum;
        } else {
            const auto r = SubStaged(c0c2.sum, Resize(t, 2 * h + 2), add_bits);
            assert(!r.borrow);
            c1 = r.difference;
        }

        const auto low =
            AddStaged(Resize(c0, 2 * bits), ShiftLeft(Resize(c1, 2 * bits), h), add_bits);
        assert(!low.carry);
        const auto full = AddStaged(low.sum, ShiftLeft(Resize(c2, 2 * bits), 2 * h), add_bits);
        assert(!full.carry);
        return full.sum;
    }
}

}  // namespace apfp
