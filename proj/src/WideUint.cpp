#include "apfp/WideUint.h"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace apfp {

namespace {

constexpr int kWordBits = 64;

int WordsForBits(int bits) { return (bits + kWordBits - 1) / kWordBits; }

uint64_t LowMask(int bits) {
    assert(bits >= 0 && bits <= kWordBits);
    return (bits == kWordBits) ? ~uint64_t(0) : ((uint64_t(1) << bits) - 1);
}

int HexValue(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

WideUint::WideUint(int bits) : bits_(bits) {
    if (bits < 1) {
        throw std::invalid_argument("WideUint width must be positive.");
    }
    words_.resize(static_cast<size_t>(WordsForBits(bits)), 0);
}

void WideUint::MaskTopWord() {
    const int rem = bits_ % kWordBits;
    if (rem != 0) {
        words_.back() &= LowMask(rem);
    }
}

WideUint WideUint::FromUint64(int bits, uint64_t value) {
    WideUint result(bits);
    result.words_[0] = value;
    result.MaskTopWord();
    return result;
}

WideUint WideUint::FromWords(int bits, uint64_t const *words, int num_words) {
    WideUint result(bits);
    const int n = std::min(num_words, result.NumWords());
    std::copy(words, words + n, result.words_.begin());
    result.MaskTopWord();
    return result;
}

WideUint WideUint::FromHexString(int bits, std::string_view hex) {
    if (hex.substr(0, 2) == "0x" || hex.substr(0, 2) == "0X") {
        hex.remove_prefix(2);
    }
    WideUint result(bits);
    int bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
        const int v = HexValue(*it);
        if (v < 0) {
            throw std::invalid_argument("Invalid hex digit in WideUint literal.");
        }
        if (bit < bits) {
            result.words_[static_cast<size_t>(bit / kWordBits)] |= uint64_t(v) << (bit % kWordBits);
        }
        bit += 4;
    }
    result.MaskTopWord();
    return result;
}

void WideUint::SetWord(int i, uint64_t value) {
    assert(i >= 0 && i < NumWords());
    words_[static_cast<size_t>(i)] = value;
    MaskTopWord();
}

bool WideUint::IsZero() const {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

bool WideUint::GetBit(int i) const {
    if (i < 0 || i >= bits_) {
        return false;
    }
    return (words_[static_cast<size_t>(i / kWordBits)] >> (i % kWordBits)) & 1;
}

std::string WideUint::ToHexString() const {
    const int digits = (bits_ + 3) / 4;
    std::string result(static_cast<size_t>(digits), '0');
    for (int d = 0; d < digits; ++d) {
        const int bit = 4 * d;
        const uint64_t nibble = (Word(bit / kWordBits) >> (bit % kWordBits)) & 0xF;
        result[static_cast<size_t>(digits - 1 - d)] = "0123456789abcdef"[nibble];
    }
    return result;
}

namespace {

// Word-granular add/sub over [0, num_words), used both directly when stages
// align with words and as the inner kernel of the bit-granular staged path.
bool AddWords(uint64_t const *a, uint64_t const *b, uint64_t *out, int num_words, bool carry_in) {
    unsigned __int128 carry = carry_in ? 1 : 0;
    for (int i = 0; i < num_words; ++i) {
        const unsigned __int128 t = static_cast<unsigned __int128>(a[i]) + b[i] + carry;
        out[i] = static_cast<uint64_t>(t);
        carry = t >> kWordBits;
    }
    return carry != 0;
}

bool SubWords(uint64_t const *a, uint64_t const *b, uint64_t *out, int num_words, bool borrow_in) {
    bool borrow = borrow_in;
    for (int i = 0; i < num_words; ++i) {
        const unsigned __int128 t =
            static_cast<unsigned __int128>(a[i]) - b[i] - (borrow ? 1 : 0);
        out[i] = static_cast<uint64_t>(t);
        borrow = (t >> kWordBits) != 0;
    }
    return borrow;
}

// Writes the low `bits` bits of src into dest starting at dest bit position
// `start_bit`. The caller guarantees the range lies inside dest.
void Deposit(WideUint &dest, int start_bit, WideUint const &src, int bits) {
    for (int done = 0; done < bits;) {
        const int pos = start_bit + done;
        const int word = pos / kWordBits;
        const int offset = pos % kWordBits;
        const int chunk = std::min(bits - done, kWordBits - offset);
        const uint64_t value = Extract(src, done, chunk).Word(0);
        const uint64_t mask = LowMask(chunk) << offset;
        dest.SetWord(word, (dest.Word(word) & ~mask) | ((value << offset) & mask));
        done += chunk;
    }
}

}  // namespace

AddStagedResult AddStaged(WideUint const &a, WideUint const &b, int stage_bits) {
    if (a.Bits() != b.Bits()) {
        throw std::invalid_argument("AddStaged operands must have equal widths.");
    }
    if (stage_bits < 1) {
        throw std::invalid_argument("stage_bits must be positive.");
    }
    const int bits = a.Bits();
    WideUint sum(bits);
    if (stage_bits % kWordBits == 0 || stage_bits >= bits) {
        // Stage boundaries coincide with word boundaries, so one word loop is
        // exactly the staged computation.
        bool carry = AddWords(a.Words(), b.Words(), sum.Words(), a.NumWords(), false);
        const int rem = bits % kWordBits;
        if (rem != 0) {
            // The carry out of a width that ends mid-word is that word's next bit.
            carry = (sum.Word(sum.NumWords() - 1) >> rem) & 1;
            sum.MaskTopWord();
        }
        return {sum, carry};
    }
    bool carry = false;
    for (int lo = 0; lo < bits; lo += stage_bits) {
        const int width = std::min(stage_bits, bits - lo);
        WideUint av = Extract(a, lo, width);
        WideUint bv = Extract(b, lo, width);
        WideUint sv(width);
        bool stage_carry = AddWords(av.Words(), bv.Words(), sv.Words(), av.NumWords(), carry);
        const int rem = width % kWordBits;
        if (rem != 0) {
            stage_carry = (sv.Word(sv.NumWords() - 1) >> rem) & 1;
            sv.MaskTopWord();
        }
        Deposit(sum, lo, sv, width);
        carry = stage_carry;
    }
    return {sum, carry};
}

SubStagedResult SubStaged(WideUint const &a, WideUint const &b, int stage_bits) {
    if (a.Bits() != b.Bits()) {
        throw std::invalid_argument("SubStaged operands must have equal widths.");
    }
    if (stage_bits < 1) {
        throw std::invalid_argument("stage_bits must be positive.");
    }
    const int bits = a.Bits();
    WideUint diff(bits);
    if (stage_bits % kWordBits == 0 || stage_bits >= bits) {
        bool borrow = SubWords(a.Words(), b.Words(), diff.Words(), a.NumWords(), false);
        const int rem = bits % kWordBits;
        if (rem != 0) {
            // The word-level difference wrapped modulo a full word; the true
            // borrow out of a width that ends mid-word is that bit position.
            borrow = (diff.Word(diff.NumWords() - 1) >> rem) & 1;
            diff.MaskTopWord();
        }
        return {diff, borrow};
    }
    bool borrow = false;
    for (int lo = 0; lo < bits; lo += stage_bits) {
        const int width = std::min(stage_bits, bits - lo);
        WideUint av = Extract(a, lo, width);
        WideUint bv = Extract(b, lo, width);
        WideUint dv(width);
        bool stage_borrow = SubWords(av.Words(), bv.Words(), dv.Words(), av.NumWords(), borrow);
        const int rem = width % kWordBits;
        if (rem != 0) {
            stage_borrow = (dv.Word(dv.NumWords() - 1) >> rem) & 1;
            dv.MaskTopWord();
        }
        Deposit(diff, lo, dv, width);
        borrow = stage_borrow;
    }
    return {diff, borrow};
}

int Compare(WideUint const &a, WideUint const &b) {
    assert(a.Bits() == b.Bits());
    for (int i = std::max(a.NumWords(), b.NumWords()) - 1; i >= 0; --i) {
        if (a.Word(i) != b.Word(i)) {
            return a.Word(i) < b.Word(i) ? -1 : 1;
        }
    }
    return 0;
}

SignedMagnitude AbsDiff(WideUint const &a, WideUint const &b) {
    if (a.Bits() != b.Bits()) {
        throw std::invalid_argument("AbsDiff operands must have equal widths.");
    }
    const bool negative = Compare(a, b) < 0;
    WideUint magnitude(a.Bits());
    if (negative) {
        SubWords(b.Words(), a.Words(), magnitude.Words(), a.NumWords(), false);
    } else {
        SubWords(a.Words(), b.Words(), magnitude.Words(), a.NumWords(), false);
    }
    magnitude.MaskTopWord();
    return {negative, magnitude};
}

WideUint MulSchoolbook(WideUint const &a, WideUint const &b) {
    if (a.Bits() != b.Bits()) {
        throw std::invalid_argument("MulSchoolbook operands must have equal widths.");
    }
    WideUint result(2 * a.Bits());
    const int n = a.NumWords();
    // The product fits 2 * Bits() exactly, but intermediate rows need up to
    // n + 1 + n words; accumulate into a scratch of that size.
    WordVector acc(static_cast<size_t>(2 * n), 0);
    for (int i = 0; i < n; ++i) {
        uint64_t carry = 0;
        const uint64_t ai = a.Word(i);
        for (int j = 0; j < n; ++j) {
            const unsigned __int128 t = static_cast<unsigned __int128>(ai) * b.Word(j) +
                                        acc[static_cast<size_t>(i + j)] + carry;
            acc[static_cast<size_t>(i + j)] = static_cast<uint64_t>(t);
            carry = static_cast<uint64_t>(t >> kWordBits);
        }
        acc[static_cast<size_t>(i + n)] = carry;
    }
    for (int i = 0; i < result.NumWords(); ++i) {
        result.SetWord(i, i < 2 * n ? acc[static_cast<size_t>(i)] : 0);
    }
    return result;
}

WideUint ShiftLeft(WideUint const &a, int64_t shift) {
    assert(shift >= 0);
    WideUint result(a.Bits());
    if (shift >= a.Bits()) {
        return result;
    }
    const int word_shift = static_cast<int>(shift / kWordBits);
    const int bit_shift = static_cast<int>(shift % kWordBits);
    for (int i = result.NumWords() - 1; i >= word_shift; --i) {
        uint64_t w = a.Word(i - word_shift) << bit_shift;
        if (bit_shift != 0 && i - word_shift - 1 >= 0) {
            w |= a.Word(i - word_shift - 1) >> (kWordBits - bit_shift);
        }
        result.SetWord(i, w);
    }
    return result;
}

ShiftRightStickyResult ShiftRightSticky(WideUint const &a, int64_t shift) {
    assert(shift >= 0);
    WideUint result(a.Bits());
    if (shift >= a.Bits()) {
        return {result, !a.IsZero()};
    }
    const int word_shift = static_cast<int>(shift / kWordBits);
    const int bit_shift = static_cast<int>(shift % kWordBits);
    bool sticky = false;
    for (int i = 0; i < word_shift; ++i) {
        sticky |= a.Word(i) != 0;
    }
    if (bit_shift != 0) {
        sticky |= (a.Word(word_shift) & LowMask(bit_shift)) != 0;
    }
    for (int i = 0; i + word_shift < a.NumWords(); ++i) {
        uint64_t w = a.Word(i + word_shift) >> bit_shift;
        if (bit_shift != 0) {
            w |= a.Word(i + word_shift + 1) << (kWordBits - bit_shift);
        }
        result.SetWord(i, w);
    }
    return {result, sticky};
}

int CountLeadingZeros(WideUint const &a) {
    for (int i = a.NumWords() - 1; i >= 0; --i) {
        const uint64_t w = a.Word(i);
        if (w != 0) {
            const int top = i * kWordBits + (kWordBits - 1 - __builtin_clzll(w));
            return a.Bits() - 1 - top;
        }
    }
    return a.Bits();
}

int BitLength(WideUint const &a) { return a.Bits() - CountLeadingZeros(a); }

WideUint Extract(WideUint const &a, int start_bit, int bits) {
    assert(start_bit >= 0);
    // Bits beyond a's width read as zero because the stored top word is masked
    // and Word() returns zero past the end.
    WideUint result(bits);
    const int word_shift = start_bit / kWordBits;
    const int bit_shift = start_bit % kWordBits;
    for (int i = 0; i < result.NumWords(); ++i) {
        uint64_t w = a.Word(i + word_shift) >> bit_shift;
        if (bit_shift != 0) {
            w |= a.Word(i + word_shift + 1) << (kWordBits - bit_shift);
        }
        result.SetWord(i, w);
    }
    return result;
}

WideUint Resize(WideUint const &a, int bits) {
    WideUint result(bits);
    for (int i = 0; i < result.NumWords(); ++i) {
        result.SetWord(i, a.Word(i));
    }
    return result;
}

}  // namespace apfp
