#pragma once

#include "apfp/MatrixMultiplication.h"
#include "apfp/PackedFloat.h"

#include <gmpxx.h>

namespace apfp {
namespace oracle {

// Exact reference semantics for differential testing: values are lifted to
// unbounded precision, operated on exactly, and rounded toward zero once at
// the end. Shares only the packed format with the production code, none of
// the arithmetic.
struct ExactValue {
    mpz_class mantissa;  // signed, unbounded
    __int128 exponent;   // value = mantissa * 2^exponent; wide enough that
                         // exact products cannot overflow before rounding
};

ExactValue FromPacked(PackedFloat const &x);

ExactValue ExactMul(ExactValue const &a, ExactValue const &b);
ExactValue ExactAdd(ExactValue const &a, ExactValue const &b);

// The unique packed value v with |v| <= |x| < |v| + 1 ulp.
PackedFloat RoundToZero(ExactValue const &x, int mantissa_bits);

PackedFloat RefMultiply(PackedFloat const &a, PackedFloat const &b);
PackedFloat RefAdd(PackedFloat const &a, PackedFloat const &b);
PackedFloat RefMultiplyAdd(PackedFloat const &a, PackedFloat const &b, PackedFloat const &c);

// Textbook triple loop accumulating in ascending k with the reference
// operations; the ground truth for the tiled engine.
void GemmNaive(PackedMatrix const &a, PackedMatrix const &b, PackedMatrix &c);

}  // namespace oracle
}  // namespace apfp
