#pragma once

#include "apfp/PackedFloat.h"
#include "apfp/WideUint.h"

namespace apfp {

// Round-to-zero floating-point operations. Results carry at most one unit in
// the last place of truncation error below the exact value and are always
// normalized or canonical zero. Operands must share the same width.

// Mantissa product via the Karatsuba multiplier, truncated toward zero.
PackedFloat Multiply(PackedFloat const &a, PackedFloat const &b, MulConfig const &cfg = {});

// Exponent-aligned mantissa add/subtract. Alignment captures a sticky bit so
// that sign-differing operands round toward zero correctly even when the
// smaller operand is shifted out entirely.
PackedFloat Add(PackedFloat const &a, PackedFloat const &b);

// Add(Multiply(a, b), c): the product is rounded before the addition, the
// same two-step rounding as the chained multiplier and adder pipelines.
PackedFloat MultiplyAdd(PackedFloat const &a, PackedFloat const &b, PackedFloat const &c,
                        MulConfig const &cfg = {});

}  // namespace apfp
