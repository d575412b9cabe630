#pragma once

#include "apfp/WideUint.h"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace apfp {

// Thrown when an exponent leaves the representable range or a precision
// exceeds the packed mantissa field. Arithmetic never wraps silently.
struct RangeError : std::range_error {
    using std::range_error::range_error;
};

// Thrown on malformed call contracts (mismatched widths, bad dimensions).
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kWordBits = 64;
inline constexpr int kStorageGranularity = 512;
inline constexpr int kDefaultWidthBits = 512;

// 63-bit two's-complement exponent range; the most negative value is reserved
// as the canonical zero exponent but remains representable.
inline constexpr int64_t kExponentMin = -(int64_t(1) << 62);
inline constexpr int64_t kExponentMax = (int64_t(1) << 62) - 1;

// One arbitrary-precision floating-point number of W = n * 512 bits,
// value = (-1)^sign * 0.mantissa * 2^exponent with the mantissa MSB set for
// nonzero values (significand in [1/2, 1)).
//
// The stored words are the serialized layout itself: word 0 carries the
// exponent in bits [0, 62] and the sign in bit 63; words 1 .. W/64 - 1 carry
// the mantissa least-significant word first.
class PackedFloat {
   public:
    explicit PackedFloat(int width_bits = kDefaultWidthBits);

    static PackedFloat Zero(int width_bits = kDefaultWidthBits);
    static PackedFloat One(int width_bits = kDefaultWidthBits);

    // Mantissa width implies the total width: mantissa.Bits() + 64. A zero
    // mantissa canonicalizes sign and exponent; otherwise the mantissa MSB
    // must be set. Exponents outside the 63-bit range raise RangeError.
    static PackedFloat Pack(bool sign, int64_t exponent, WideUint const &mantissa);

    int WidthBits() const { return width_bits_; }
    int MantissaBits() const { return width_bits_ - kWordBits; }
    int NumWords() const { return width_bits_ / kWordBits; }

    bool GetSign() const { return words_[0] >> 63; }
    int64_t GetExponent() const {
        // Sign-extend the low 63 bits.
        return static_cast<int64_t>(words_[0] << 1) >> 1;
    }
    WideUint GetMantissa() const;
    bool IsZero() const;

    // Serialized form: NumWords() little-endian 64-bit words.
    uint64_t const *Words() const { return words_.data(); }
    static PackedFloat FromWords(int width_bits, uint64_t const *words);

    std::vector<uint8_t> ToBytes() const;
    static PackedFloat FromBytes(int width_bits, uint8_t const *bytes);
    static int BytesPerValue(int width_bits) { return width_bits / 8; }

    // Value as [-]0x<mantissa hex>p<exponent>, or "0".
    std::string ToString() const;

    // All mantissa-zero values compare equal to zero regardless of their
    // sign/exponent bits; everything else compares by serialized words.
    friend bool operator==(PackedFloat const &a, PackedFloat const &b);
    friend bool operator!=(PackedFloat const &a, PackedFloat const &b) { return !(a == b); }

   private:
    int width_bits_;
    WordVector words_;
};

// The runtime reference representation numbers are converted from: a sign, an
// exponent, a precision, and little-endian mantissa limbs with the significand
// left-aligned (the top bit of the last limb is the significand MSB; unused
// low bits of limb 0 are zero).
struct LimbNumber {
    int precision_bits = 0;
    int sign = 1;  // +1 or -1
    int64_t exponent = 0;
    std::vector<uint64_t> limbs;

    static LimbNumber Zero(int precision_bits);
    bool IsZero() const;
};

// Lossless when precision_bits <= width_bits - 64: the significand is
// left-aligned into the packed mantissa with low bits zero-filled.
PackedFloat FromLimbs(LimbNumber const &x, int width_bits = kDefaultWidthBits);

// Truncates toward zero when precision_bits is below the packed mantissa
// width; at equal precision the roundtrip with FromLimbs is the identity.
LimbNumber ToLimbs(PackedFloat const &x, int precision_bits);

}  // namespace apfp
