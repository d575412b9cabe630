#include "apfp/Dse.h"

#include "apfp/MatrixMultiplication.h"

#include <array>
#include <stdexcept>

namespace apfp {
namespace dse {

namespace {

constexpr int64_t kStageOverheadBits = 64;
constexpr int kLeafDelayFactor = 4;

// Addition widths of one recursion node of width B: the two absolute
// differences at h, the two middle-term additions at 2h + 2, and the 2B
// recombination.
std::array<int, 5> NodeAdditionWidths(int node_width) {
    const int h = (node_width + 1) / 2;
    return {h, h, 2 * h + 2, 2 * h + 2, 2 * node_width};
}

}  // namespace

SplitCount CountBaseMults(int width, int base_bits) {
    if (width < 1 || base_bits < 2) {
        throw std::invalid_argument("Invalid width or base for CountBaseMults.");
    }
    int depth = 0;
    int64_t count = 1;
    int w = width;
    while (w > base_bits) {
        w = (w + 1) / 2;
        ++depth;
        count *= 3;
    }
    return {depth, count, w};
}

int AdderStageCount(int add_width, int add_base_bits) {
    if (add_width < 1 || add_base_bits < 1) {
        throw std::invalid_argument("Invalid widths for AdderStageCount.");
    }
    return (add_width + add_base_bits - 1) / add_base_bits;
}

DseReport ScoreConfiguration(int width, int mult_base_bits, int add_base_bits) {
    const SplitCount split = CountBaseMults(width, mult_base_bits);

    int64_t adder_bits = 0;
    int64_t stage_boundaries = 0;
    int64_t nodes = 1;
    int w = width;
    for (int level = 0; level < split.depth; ++level) {
        for (const int add_width : NodeAdditionWidths(w)) {
            adder_bits += nodes * add_width;
            stage_boundaries += nodes * (AdderStageCount(add_width, add_base_bits) - 1);
        }
        w = (w + 1) / 2;
        nodes *= 3;
    }

    DseReport report;
    report.width = width;
    report.mult_base_bits = mult_base_bits;
    report.add_base_bits = add_base_bits;
    report.recursion_depth = split.depth;
    report.base_mult_count = split.count;
    report.base_mult_width = split.leaf_width;
    report.adder_stage_count_worst = AdderStageCount(2 * width, add_base_bits);
    report.modeled_bit_ops =
        split.count * static_cast<int64_t>(split.leaf_width) * split.leaf_width;
    report.modeled_bit_ops_schoolbook = static_cast<int64_t>(width) * width;
    report.modeled_adder_bits = adder_bits;
    report.modeled_resource_bits = adder_bits + kStageOverheadBits * stage_boundaries;
    report.modeled_delay_bits = kLeafDelayFactor * split.leaf_width + add_base_bits;
    return report;
}

void MarkParetoEfficient(std::vector<DseReport> &reports) {
    for (auto &report : reports) {
        report.pareto_efficient = true;
        for (const auto &other : reports) {
            if (&other == &report || other.width != report.width) {
                continue;
            }
            const bool no_worse = other.modeled_resource_bits <= report.modeled_resource_bits &&
                                  other.modeled_delay_bits <= report.modeled_delay_bits;
            const bool better = other.modeled_resource_bits < report.modeled_resource_bits ||
                                other.modeled_delay_bits < report.modeled_delay_bits;
            if (no_worse && better) {
                report.pareto_efficient = false;
                break;
            }
        }
    }
}

std::vector<DseReport> Sweep(std::vector<int> const &widths, std::vector<int> const &mult_bases,
                             std::vector<int> const &add_bases,
                             std::optional<std::pair<int, int>> tile) {
    if (widths.empty() || mult_bases.empty() || add_bases.empty()) {
        throw std::invalid_argument("Sweep axes must be non-empty.");
    }
    std::vector<DseReport> reports;
    reports.reserve(widths.size() * mult_bases.size() * add_bases.size());
    for (const int width : widths) {
        for (const int mult_base : mult_bases) {
            for (const int add_base : add_bases) {
                DseReport report = ScoreConfiguration(width, mult_base, add_base);
                if (tile) {
                    report.arithmetic_intensity = ArithmeticIntensity(tile->first, tile->second);
                }
                reports.push_back(report);
            }
        }
    }
    MarkParetoEfficient(reports);
    return reports;
}

}  // namespace dse
}  // namespace apfp
