#pragma once

#include "apfp/ArithmeticOperations.h"
#include "apfp/PackedFloat.h"

#include <utility>
#include <vector>

namespace apfp {

// Tiling and parallelism knobs of the matrix multiplication engine. None of
// them affect results: every output element is accumulated in a fixed order.
struct GemmConfig {
    int tile_n = 32;
    int tile_m = 32;
    int compute_units = 1;
    MulConfig mul;
};

// Dense column-major matrix of packed values sharing one width.
class PackedMatrix {
   public:
    PackedMatrix(int rows, int cols, int width_bits = kDefaultWidthBits,
                 int leading_dimension = 0);

    int Rows() const { return rows_; }
    int Cols() const { return cols_; }
    int LeadingDimension() const { return leading_dimension_; }
    int WidthBits() const { return width_bits_; }

    PackedFloat &operator()(int i, int j) {
        return storage_[static_cast<size_t>(j) * leading_dimension_ + i];
    }
    PackedFloat const &operator()(int i, int j) const {
        return storage_[static_cast<size_t>(j) * leading_dimension_ + i];
    }

    static PackedMatrix Identity(int n, int width_bits = kDefaultWidthBits);

    friend bool operator==(PackedMatrix const &a, PackedMatrix const &b);
    friend bool operator!=(PackedMatrix const &a, PackedMatrix const &b) { return !(a == b); }

   private:
    int rows_;
    int cols_;
    int leading_dimension_;
    int width_bits_;
    std::vector<PackedFloat> storage_;
};

// P contiguous disjoint row ranges [begin, end) covering [0, n), sizes
// differing by at most one; the leading n mod P ranges take the extra row.
std::vector<std::pair<int, int>> PartitionRows(int n, int p);

// Multiply-adds per operand loaded for a tile_n x tile_m output tile:
// tile_n * tile_m / (tile_n + tile_m).
double ArithmeticIntensity(int tile_n, int tile_m);

// C = A * B + C over packed values. Outer-product tiling: per output tile, a
// column strip of A and a row strip of B feed rank-1 updates accumulated in
// ascending k. Row ranges are distributed over compute_units workers that own
// disjoint regions of C, so the result is bit-identical for any
// configuration, including the naive triple loop.
void GemmTiled(PackedMatrix const &a, PackedMatrix const &b, PackedMatrix &c,
               GemmConfig const &cfg = {});

}  // namespace apfp
