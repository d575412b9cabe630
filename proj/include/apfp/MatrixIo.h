#pragma once

#include "apfp/MatrixMultiplication.h"

#include <iosfwd>
#include <string>

namespace apfp {

// Binary matrix container: 8-byte magic "APFPMAT\0", u32 version, u32
// reserved, u64 rows, u64 cols, u64 width_bits, then rows * cols serialized
// values in column-major order. All fields little-endian.
inline constexpr uint32_t kMatrixFormatVersion = 1;

void WriteMatrix(std::ostream &stream, PackedMatrix const &matrix);
PackedMatrix ReadMatrix(std::istream &stream);

void WriteMatrixFile(std::string const &path, PackedMatrix const &matrix);
PackedMatrix ReadMatrixFile(std::string const &path);

}  // namespace apfp
