#include "apfp/MpfrInterop.h"

#ifdef APFP_HAVE_MPFR

#include <gmpxx.h>
#include <mpfr.h>

namespace apfp {
namespace mpfr_interop {

namespace {

void ToMpfr(mpfr_t rop, PackedFloat const &x) {
    if (x.IsZero()) {
        mpfr_set_zero(rop, 1);
        return;
    }
    const WideUint mantissa = x.GetMantissa();
    mpz_class m;
    mpz_import(m.get_mpz_t(), static_cast<size_t>(mantissa.NumWords()), -1, sizeof(uint64_t), 0,
               0, mantissa.Words());
    if (x.GetSign()) {
        m = -m;
    }
    // 0.m * 2^e = m * 2^(e - mantissa_bits); exact at this precision.
    mpfr_set_z_2exp(rop, m.get_mpz_t(), x.GetExponent() - x.MantissaBits(), MPFR_RNDZ);
}

PackedFloat FromMpfr(mpfr_t const &x, int width_bits) {
    if (mpfr_zero_p(x)) {
        return PackedFloat::Zero(width_bits);
    }
    const int mantissa_bits = width_bits - kWordBits;
    mpz_class m;
    const mpfr_exp_t exp2 = mpfr_get_z_2exp(m.get_mpz_t(), x);
    const bool sign = m < 0;
    mpz_class magnitude = abs(m);
    // The significand of a normalized nonzero value carries exactly the
    // working precision in bits.
    WideUint mantissa(mantissa_bits);
    size_t exported = 0;
    mpz_export(mantissa.Words(), &exported, -1, sizeof(uint64_t), 0, 0, magnitude.get_mpz_t());
    mantissa.MaskTopWord();
    return PackedFloat::Pack(sign, static_cast<int64_t>(exp2) + mantissa_bits, mantissa);
}

template <typename Operation>
PackedFloat Binary(PackedFloat const &a, PackedFloat const &b, Operation op) {
    const int width_bits = a.WidthBits();
    const int precision = width_bits - kWordBits;
    mpfr_t ma, mb, mr;
    mpfr_init2(ma, precision);
    mpfr_init2(mb, precision);
    mpfr_init2(mr, precision);
    ToMpfr(ma, a);
    ToMpfr(mb, b);
    op(mr, ma, mb);
    const PackedFloat result = FromMpfr(mr, width_bits);
    mpfr_clear(ma);
    mpfr_clear(mb);
    mpfr_clear(mr);
    return result;
}

}  // namespace

bool Available() { return true; }

PackedFloat RefMultiply(PackedFloat const &a, PackedFloat const &b) {
    return Binary(a, b,
                  [](mpfr_t r, mpfr_t const &x, mpfr_t const &y) { mpfr_mul(r, x, y, MPFR_RNDZ); });
}

PackedFloat RefAdd(PackedFloat const &a, PackedFloat const &b) {
    return Binary(a, b,
                  [](mpfr_t r, mpfr_t const &x, mpfr_t const &y) { mpfr_add(r, x, y, MPFR_RNDZ); });
}

}  // namespace mpfr_interop
}  // namespace apfp

#else  // APFP_HAVE_MPFR

namespace apfp {
namespace mpfr_interop {

bool Available() { return false; }

PackedFloat RefMultiply(PackedFloat const &, PackedFloat const &) {
    throw std::runtime_error("Built without the multiple-precision reference library.");
}

PackedFloat RefAdd(PackedFloat const &, PackedFloat const &) {
    throw std::runtime_error("Built without the multiple-precision reference library.");
}

}  // namespace mpfr_interop
}  // namespace apfp

#endif  // APFP_HAVE_MPFR
