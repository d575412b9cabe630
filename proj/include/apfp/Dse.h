#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace apfp {
namespace dse {

// Analytic cost model of the multiplier/adder configuration space. Hardware
// resource counts and clock frequencies are not portable quantities, so the
// sweep scores each configuration with exact structural numbers instead:
// recursion shape, leaf multiplication work, addition widths, and pipeline
// staging derived from them.

struct SplitCount {
    int depth;
    int64_t count;  // 3^depth
    int leaf_width;
};

// Replays the ceil(B / 2) split rule down to base_bits.
SplitCount CountBaseMults(int width, int base_bits);

// Stages needed to add add_width bits when each stage combines
// add_base_bits: ceil(add_width / add_base_bits).
int AdderStageCount(int add_width, int add_base_bits);

struct DseReport {
    int width;
    int mult_base_bits;
    int add_base_bits;
    int recursion_depth;
    int64_t base_mult_count;
    int base_mult_width;
    // Stages of the widest addition in the design, the 2 * width
    // recombination.
    int adder_stage_count_worst;
    // Leaf multiplication work: base_mult_count * leaf_width^2 bit
    // operations. Doubling the width at a fixed base scales this by exactly
    // 3, against exactly 4 for the schoolbook model below.
    int64_t modeled_bit_ops;
    int64_t modeled_bit_ops_schoolbook;  // width^2
    // Total bits across every addition in the recursion (two half-width
    // absolute differences, two middle-term adds at 2h + 2, one 2B
    // recombination per node).
    int64_t modeled_adder_bits;
    // Adder bits plus one word of staging overhead per pipeline stage
    // boundary; the stand-in for area.
    int64_t modeled_resource_bits;
    // Combinational bits on the critical stage: a schoolbook leaf modeled at
    // four times its width plus one addition stage; the stand-in for delay.
    int modeled_delay_bits;
    // Present when tile sizes were supplied to the sweep.
    std::optional<double> arithmetic_intensity;
    bool pareto_efficient = false;
};

DseReport ScoreConfiguration(int width, int mult_base_bits, int add_base_bits);

// Marks the configurations not strictly dominated in
// (modeled_resource_bits, modeled_delay_bits), minimizing both, grouped per
// width.
void MarkParetoEfficient(std::vector<DseReport> &reports);

// Cross product of the three axes, scored and Pareto-marked.
std::vector<DseReport> Sweep(std::vector<int> const &widths,
                             std::vector<int> const &mult_bases,
                             std::vector<int> const &add_bases,
                             std::optional<std::pair<int, int>> tile = std::nullopt);

}  // namespace dse
}  // namespace apfp
