#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace apfp {

// Inline capacity covers 512-bit operands and their 1024-bit products without
// touching the heap, which keeps the multiplier recursion allocation-free for
// the default configuration.
using WordVector = boost::container::small_vector<uint64_t, 16>;

// Fixed-width unsigned integer. The width is set per value and is an explicit
// part of every operation's contract: add/sub preserve it, multiplication of
// two width-B values yields width 2B. All bits above the width are kept zero.
class WideUint {
   public:
    WideUint() : bits_(0) {}

    explicit WideUint(int bits);

    static WideUint FromUint64(int bits, uint64_t value);
    static WideUint FromWords(int bits, uint64_t const *words, int num_words);
    static WideUint FromHexString(int bits, std::string_view hex);

    int Bits() const { return bits_; }
    int NumWords() const { return static_cast<int>(words_.size()); }

    // Reads zero beyond the stored words so callers can index freely.
    uint64_t Word(int i) const {
        return (i >= 0 && i < NumWords()) ? words_[static_cast<size_t>(i)] : 0;
    }
    void SetWord(int i, uint64_t value);

    uint64_t const *Words() const { return words_.data(); }
    uint64_t *Words() { return words_.data(); }

    // Re-establishes the zero-above-width invariant after direct word writes.
    void MaskTopWord();

    bool IsZero() const;
    bool GetBit(int i) const;
    uint64_t ToUint64() const { return Word(0); }

    // Full-width hex, zero padded, no prefix.
    std::string ToHexString() const;

    friend bool operator==(WideUint const &a, WideUint const &b) {
        return a.bits_ == b.bits_ && a.words_ == b.words_;
    }
    friend bool operator!=(WideUint const &a, WideUint const &b) { return !(a == b); }

   private:
    int bits_;
    WordVector words_;
};

// Sign-magnitude pair as produced by AbsDiff. Zero always carries a positive
// sign so that the representation stays canonical.
struct SignedMagnitude {
    bool sign;  // true = negative
    WideUint magnitude;
};

// Runtime knobs of the multiplier: the width at which the Karatsuba recursion
// falls back on schoolbook multiplication, and the number of bits combined per
// addition stage.
struct MulConfig {
    int mult_base_bits = 72;
    int add_base_bits = 64;
};

struct AddStagedResult {
    WideUint sum;
    bool carry;
};

struct SubStagedResult {
    WideUint difference;
    bool borrow;
};

struct ShiftRightStickyResult {
    WideUint shifted;
    bool sticky;
};

// Addition/subtraction decomposed into carry-propagating stages of
// stage_bits each. The staging mirrors how a pipelined adder would chunk the
// carry chain; the numerical result never depends on stage_bits.
AddStagedResult AddStaged(WideUint const &a, WideUint const &b, int stage_bits);
SubStagedResult SubStaged(WideUint const &a, WideUint const &b, int stage_bits);

// |a - b| with the sign tracked explicitly; sign is false when a == b.
SignedMagnitude AbsDiff(WideUint const &a, WideUint const &b);

// -1, 0, or 1 as a is less than, equal to, or greater than b.
int Compare(WideUint const &a, WideUint const &b);

// Word-by-word product accumulation with double-width partial products.
WideUint MulSchoolbook(WideUint const &a, WideUint const &b);

// Shifts preserve the operand width; left shifts drop overflowing high bits,
// right shifts report whether any dropped bit was set.
WideUint ShiftLeft(WideUint const &a, int64_t shift);
ShiftRightStickyResult ShiftRightSticky(WideUint const &a, int64_t shift);

// Zero bits above the most significant set bit; Bits() for zero.
int CountLeadingZeros(WideUint const &a);
int BitLength(WideUint const &a);

// The bit range [start_bit, start_bit + bits) of a as a width-bits value;
// bits beyond a's width read as zero.
WideUint Extract(WideUint const &a, int start_bit, int bits);

// Same value at a new width; truncates high bits when narrowing.
WideUint Resize(WideUint const &a, int bits);

}  // namespace apfp
