#pragma once

#include "apfp/PackedFloat.h"

namespace apfp {
namespace mpfr_interop {

// Differential harness against the multiple-precision reference library the
// packed format was designed to match bit for bit. Compiled to stubs that
// report unavailability when the library is absent at build time.

bool Available();

// Round-to-zero multiply/add computed by the reference library at the packed
// mantissa precision, converted back to packed form. Throws when the library
// is unavailable.
PackedFloat RefMultiply(PackedFloat const &a, PackedFloat const &b);
PackedFloat RefAdd(PackedFloat const &a, PackedFloat const &b);

}  // namespace mpfr_interop
}  // namespace apfp
