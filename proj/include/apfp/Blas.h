#pragma once

#include "apfp/MatrixMultiplication.h"
#include "apfp/PackedFloat.h"

#include <cstddef>
#include <functional>

namespace apfp {

enum class BlasTrans { normal, transpose };

// Caller-supplied indexing functions mapping a flat index into external
// limb-based storage. The facade never assumes a layout beyond what the
// leading dimensions describe.
using ConstIndexFn = std::function<LimbNumber const &(size_t)>;
using IndexFn = std::function<LimbNumber &(size_t)>;

// C = op(A) * op(B) + C with op given by the transpose flags, standard
// column-major parameter semantics: C is m x n, op(A) is m x k, op(B) is
// k x n, and the leading dimensions describe the stored (untransposed)
// matrices. Operands are gathered into packed form at width_bits, multiplied
// with the tiled engine, and scattered back through index_c at each element's
// own precision.
void Gemm(BlasTrans trans_a, BlasTrans trans_b, int m, int n, int k, ConstIndexFn index_a,
          int lda, ConstIndexFn index_b, int ldb, IndexFn index_c, int ldc,
          GemmConfig const &cfg = {}, int width_bits = kDefaultWidthBits);

}  // namespace apfp
