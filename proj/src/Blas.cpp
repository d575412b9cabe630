#include "apfp/Blas.h"

namespace apfp {

namespace {

// Gathers op(X) of logical shape rows x cols into packed column-major form.
// Transposition is applied by swapping the storage indexing, never by
// materializing a transposed copy.
PackedMatrix Gather(ConstIndexFn const &index, int ld, BlasTrans trans, int rows, int cols,
                    int width_bits) {
    PackedMatrix result(rows, cols, width_bits);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            const size_t flat = trans == BlasTrans::normal
                                    ? static_cast<size_t>(j) * ld + i
                                    : static_cast<size_t>(i) * ld + j;
            result(i, j) = FromLimbs(index(flat), width_bits);
        }
    }
    return result;
}

}  // namespace

void Gemm(BlasTrans trans_a, BlasTrans trans_b, int m, int n, int k, ConstIndexFn index_a,
          int lda, ConstIndexFn index_b, int ldb, IndexFn index_c, int ldc,
          GemmConfig const &cfg, int width_bits) {
    if (m < 0 || n < 0 || k < 0) {
        throw ContractError("Negative GEMM dimension.");
    }
    const int a_rows = trans_a == BlasTrans::normal ? m : k;
    const int b_rows = trans_b == BlasTrans::normal ? k : n;
    if (lda < std::max(a_rows, 1) || ldb < std::max(b_rows, 1) || ldc < std::max(m, 1)) {
        throw ContractError("Leading dimension below the stored extent.");
    }
    if (m == 0 || n == 0) {
        return;
    }

    const PackedMatrix a = Gather(index_a, lda, trans_a, m, k, width_bits);
    const PackedMatrix b = Gather(index_b, ldb, trans_b, k, n, width_bits);
    PackedMatrix c(m, n, width_bits);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            c(i, j) = FromLimbs(index_c(static_cast<size_t>(j) * ldc + i), width_bits);
        }
    }

    GemmTiled(a, b, c, cfg);

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) {
            LimbNumber &out = index_c(static_cast<size_t>(j) * ldc + i);
            out = ToLimbs(c(i, j), out.precision_bits);
        }
    }
}

}  // namespace apfp
