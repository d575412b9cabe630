#include "apfp/Karatsuba.h"

#include <cassert>
#include <stdexcept>

namespace apfp {

namespace {

WideUint Recurse(WideUint const &a, WideUint const &b, MulConfig const &cfg,
                 KaratsubaTrace *trace) {
    const int bits = a.Bits();
    if (bits <= cfg.mult_base_bits) {
        return MulSchoolbook(a, b);
    }
    const int h = (bits + 1) / 2;
    // a = a0 + a1 * 2^h with the high half zero-extended to h bits, so all
    // three recursive products run at equal width.
    const WideUint a0 = Extract(a, 0, h);
    const WideUint a1 = Extract(a, h, h);
    const WideUint b0 = Extract(b, 0, h);
    const WideUint b1 = Extract(b, h, h);

    const WideUint c0 = Recurse(a0, b0, cfg, nullptr);
    const WideUint c2 = Recurse(a1, b1, cfg, nullptr);

    const SignedMagnitude a_diff = AbsDiff(a1, a0);
    const SignedMagnitude b_diff = AbsDiff(b1, b0);
    const WideUint t = Recurse(a_diff.magnitude, b_diff.magnitude, cfg, nullptr);
    const bool t_negative = a_diff.sign != b_diff.sign;

    // c1 = c0 + c2 - s * t, computed at 2h + 2 bits; the middle coefficient
    // a0 * b1 + a1 * b0 always fits there, and so do both intermediate sums.
    const auto c0c2 =
        AddStaged(Resize(c0, 2 * h + 2), Resize(c2, 2 * h + 2), cfg.add_base_bits);
    assert(!c0c2.carry);
    WideUint c1(2 * h + 2);
    if (t_negative) {
        const auto r = AddStaged(c0c2.sum, Resize(t, 2 * h + 2), cfg.add_base_bits);
        assert(!r.carry);
        c1 = r.sum;
    } else {
        const auto r = SubStaged(c0c2.sum, Resize(t, 2 * h + 2), cfg.add_base_bits);
        assert(!r.borrow);
        c1 = r.difference;
    }

    if (trace != nullptr) {
        *trace = {c0, c2, t, t_negative, c1};
    }

    // c = c0 + c1 * 2^h + c2 * 2^2h at 2B bits. The partial sums are bounded
    // by the exact product, so no addition can carry out.
    const auto low =
        AddStaged(Resize(c0, 2 * bits), ShiftLeft(Resize(c1, 2 * bits), h), cfg.add_base_bits);
    assert(!low.carry);
    const auto full =
        AddStaged(low.sum, ShiftLeft(Resize(c2, 2 * bits), 2 * h), cfg.add_base_bits);
    assert(!full.carry);
    return full.sum;
}

}  // namespace

WideUint MulKaratsuba(WideUint const &a, WideUint const &b, MulConfig const &cfg) {
    if (a.Bits() != b.Bits()) {
        throw std::invalid_argument("MulKaratsuba operands must have equal widths.");
    }
    if (cfg.mult_base_bits < 2 || cfg.add_base_bits < 1) {
        throw std::invalid_argument("Invalid MulConfig.");
    }
    return Recurse(a, b, cfg, nullptr);
}

WideUint MulKaratsubaTraced(WideUint const &a, WideUint const &b, MulConfig const &cfg,
                            KaratsubaTrace &trace) {
    if (a.Bits() != b.Bits()) {
        throw std::invalid_argument("MulKaratsuba operands must have equal widths.");
    }
    return Recurse(a, b, cfg, &trace);
}

}  // namespace apfp
