#include "apfp/PackedFloat.h"

#include <cassert>
#include <cstring>

namespace apfp {

namespace {

void CheckWidth(int width_bits) {
    if (width_bits < kStorageGranularity || width_bits % kStorageGranularity != 0) {
        throw ContractError("PackedFloat width must be a positive multiple of 512 bits.");
    }
}

uint64_t EncodeSignExponent(bool sign, int64_t exponent) {
    return (static_cast<uint64_t>(exponent) & ((uint64_t(1) << 63) - 1)) |
           (static_cast<uint64_t>(sign) << 63);
}

}  // namespace

PackedFloat::PackedFloat(int width_bits) : width_bits_(width_bits) {
    CheckWidth(width_bits);
    words_.resize(static_cast<size_t>(NumWords()), 0);
    words_[0] = EncodeSignExponent(false, kExponentMin);
}

PackedFloat PackedFloat::Zero(int width_bits) { return PackedFloat(width_bits); }

PackedFloat PackedFloat::One(int width_bits) {
    WideUint mantissa(width_bits - kWordBits);
    mantissa.SetWord(mantissa.NumWords() - 1, uint64_t(1) << ((mantissa.Bits() - 1) % kWordBits));
    return Pack(false, 1, mantissa);
}

PackedFloat PackedFloat::Pack(bool sign, int64_t exponent, WideUint const &mantissa) {
    const int width_bits = mantissa.Bits() + kWordBits;
    CheckWidth(width_bits);
    if (mantissa.IsZero()) {
        return PackedFloat(width_bits);
    }
    if (exponent < kExponentMin || exponent > kExponentMax) {
        throw RangeError("Exponent outside the 63-bit two's-complement range.");
    }
    assert(mantissa.GetBit(mantissa.Bits() - 1));  // normalized
    PackedFloat result(width_bits);
    result.words_[0] = EncodeSignExponent(sign, exponent);
    for (int i = 0; i < mantissa.NumWords(); ++i) {
        result.words_[static_cast<size_t>(i + 1)] = mantissa.Word(i);
    }
    return result;
}

WideUint PackedFloat::GetMantissa() const {
    return WideUint::FromWords(MantissaBits(), words_.data() + 1, NumWords() - 1);
}

bool PackedFloat::IsZero() const {
    for (int i = 1; i < NumWords(); ++i) {
        if (words_[static_cast<size_t>(i)] != 0) {
            return false;
        }
    }
    return true;
}

PackedFloat PackedFloat::FromWords(int width_bits, uint64_t const *words) {
    CheckWidth(width_bits);
    PackedFloat result(width_bits);
    std::copy(words, words + result.NumWords(), result.words_.begin());
    return result;
}

std::vector<uint8_t> PackedFloat::ToBytes() const {
    std::vector<uint8_t> bytes(static_cast<size_t>(BytesPerValue(width_bits_)));
    for (int i = 0; i < NumWords(); ++i) {
        const uint64_t w = words_[static_cast<size_t>(i)];
        for (int j = 0; j < 8; ++j) {
            bytes[static_cast<size_t>(8 * i + j)] = static_cast<uint8_t>(w >> (8 * j));
        }
    }
    return bytes;
}

PackedFloat PackedFloat::FromBytes(int width_bits, uint8_t const *bytes) {
    CheckWidth(width_bits);
    PackedFloat result(width_bits);
    for (int i = 0; i < result.NumWords(); ++i) {
        uint64_t w = 0;
        for (int j = 0; j < 8; ++j) {
            w |= static_cast<uint64_t>(bytes[8 * i + j]) << (8 * j);
        }
        result.words_[static_cast<size_t>(i)] = w;
    }
    return result;
}

std::string PackedFloat::ToString() const {
    if (IsZero()) {
        return "0";
    }
    std::string result = GetSign() ? "-0x" : "0x";
    result += GetMantissa().ToHexString();
    result += "p";
    result += std::to_string(GetExponent());
    return result;
}

bool operator==(PackedFloat const &a, PackedFloat const &b) {
    if (a.width_bits_ != b.width_bits_) {
        return false;
    }
    if (a.IsZero() || b.IsZero()) {
        return a.IsZero() && b.IsZero();
    }
    return a.words_ == b.words_;
}

LimbNumber LimbNumber::Zero(int precision_bits) {
    LimbNumber result;
    result.precision_bits = precision_bits;
    result.limbs.resize(static_cast<size_t>((precision_bits + kWordBits - 1) / kWordBits), 0);
    return result;
}

bool LimbNumber::IsZero() const {
    for (const uint64_t limb : limbs) {
        if (limb != 0) {
            return false;
        }
    }
    return true;
}

PackedFloat FromLimbs(LimbNumber const &x, int width_bits) {
    const int mantissa_bits = width_bits - kWordBits;
    if (x.precision_bits < 1 || x.precision_bits > mantissa_bits) {
        throw RangeError("Limb precision exceeds the packed mantissa width.");
    }
    if (x.IsZero()) {
        return PackedFloat::Zero(width_bits);
    }
    // The significand occupies the top precision_bits of the limb array; move
    // it to the top of the packed mantissa field. The mantissa width is a
    // multiple of 64, so it is never narrower than the limb array.
    const int limb_bits = static_cast<int>(x.limbs.size()) * kWordBits;
    const WideUint significand =
        WideUint::FromWords(limb_bits, x.limbs.data(), static_cast<int>(x.limbs.size()));
    const WideUint mantissa =
        ShiftLeft(Resize(significand, mantissa_bits), mantissa_bits - limb_bits);
    return PackedFloat::Pack(x.sign < 0, x.exponent, mantissa);
}

LimbNumber ToLimbs(PackedFloat const &x, int precision_bits) {
    if (precision_bits < 1 || precision_bits > x.MantissaBits()) {
        throw RangeError("Requested precision exceeds the packed mantissa width.");
    }
    LimbNumber result = LimbNumber::Zero(precision_bits);
    if (x.IsZero()) {
        return result;
    }
    result.sign = x.GetSign() ? -1 : 1;
    result.exponent = x.GetExponent();
    // Keep the top precision_bits of the mantissa (truncating toward zero)
    // and left-align them in the limb array.
    const int limb_bits = static_cast<int>(result.limbs.size()) * kWordBits;
    const WideUint kept = Extract(x.GetMantissa(), x.MantissaBits() - precision_bits, precision_bits);
    const WideUint aligned = ShiftLeft(Resize(kept, limb_bits), limb_bits - precision_bits);
    for (size_t i = 0; i < result.limbs.size(); ++i) {
        result.limbs[i] = aligned.Word(static_cast<int>(i));
    }
    return result;
}

}  // namespace apfp
