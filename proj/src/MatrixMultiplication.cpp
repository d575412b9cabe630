#include "apfp/MatrixMultiplication.h"

#include <algorithm>
#include <thread>

namespace apfp {

PackedMatrix::PackedMatrix(int rows, int cols, int width_bits, int leading_dimension)
    : rows_(rows),
      cols_(cols),
      leading_dimension_(leading_dimension == 0 ? std::max(rows, 1) : leading_dimension),
      width_bits_(width_bits) {
    if (rows < 0 || cols < 0 || leading_dimension_ < std::max(rows, 1)) {
        throw ContractError("Invalid matrix dimensions.");
    }
    storage_.assign(static_cast<size_t>(leading_dimension_) * cols_, PackedFloat(width_bits));
}

PackedMatrix PackedMatrix::Identity(int n, int width_bits) {
    PackedMatrix result(n, n, width_bits);
    for (int i = 0; i < n; ++i) {
        result(i, i) = PackedFloat::One(width_bits);
    }
    return result;
}

bool operator==(PackedMatrix const &a, PackedMatrix const &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.width_bits_ != b.width_bits_) {
        return false;
    }
    for (int j = 0; j < a.cols_; ++j) {
        for (int i = 0; i < a.rows_; ++i) {
            if (a(i, j) != b(i, j)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::pair<int, int>> PartitionRows(int n, int p) {
    std::vector<std::pair<int, int>> ranges;
    ranges.reserve(static_cast<size_t>(p));
    const int base = n / p;
    const int extra = n % p;
    int begin = 0;
    for (int i = 0; i < p; ++i) {
        const int size = base + (i < extra ? 1 : 0);
        ranges.emplace_back(begin, begin + size);
        begin += size;
    }
    return ranges;
}

double ArithmeticIntensity(int tile_n, int tile_m) {
    return static_cast<double>(tile_n) * tile_m / (tile_n + tile_m);
}

namespace {

// One worker's share: all tiles whose rows fall inside [row_begin, row_end).
// Tiles clamp at the matrix edges; within a tile, each output element is
// seeded with the incoming C value and accumulated over ascending k.
void ComputeRowRange(PackedMatrix const &a, PackedMatrix const &b, PackedMatrix &c,
                     GemmConfig const &cfg, int row_begin, int row_end) {
    const int size_k = a.Cols();
    const int size_m = b.Cols();
    for (int n0 = row_begin; n0 < row_end; n0 += cfg.tile_n) {
        const int n1 = std::min(n0 + cfg.tile_n, row_end);
        for (int m0 = 0; m0 < size_m; m0 += cfg.tile_m) {
            const int m1 = std::min(m0 + cfg.tile_m, size_m);
            for (int k = 0; k < size_k; ++k) {
                for (int i = n0; i < n1; ++i) {
                    for (int j = m0; j < m1; ++j) {
                        c(i, j) = Add(Multiply(a(i, k), b(k, j), cfg.mul), c(i, j));
                    }
                }
            }
        }
    }
}

}  // namespace

void GemmTiled(PackedMatrix const &a, PackedMatrix const &b, PackedMatrix &c,
               GemmConfig const &cfg) {
    if (a.Cols() != b.Rows() || a.Rows() != c.Rows() || b.Cols() != c.Cols()) {
        throw ContractError("Mismatched matrix dimensions.");
    }
    if (a.WidthBits() != b.WidthBits() || a.WidthBits() != c.WidthBits()) {
        throw ContractError("Mismatched packed widths.");
    }
    if (cfg.tile_n < 1 || cfg.tile_m < 1 || cfg.compute_units < 1) {
        throw ContractError("Invalid GemmConfig.");
    }
    const auto ranges = PartitionRows(c.Rows(), cfg.compute_units);
    if (cfg.compute_units == 1) {
        ComputeRowRange(a, b, c, cfg, 0, c.Rows());
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(ranges.size());
    for (const auto &[begin, end] : ranges) {
        workers.emplace_back(ComputeRowRange, std::cref(a), std::cref(b), std::ref(c),
                             std::cref(cfg), begin, end);
    }
    for (auto &worker : workers) {
        worker.join();
    }
}

}  // namespace apfp
