#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apfp/ArithmeticOperations.h"
#include "apfp/Dse.h"
#include "apfp/Karatsuba.h"
#include "apfp/MatrixMultiplication.h"
#include "apfp/PackedFloat.h"
#include "apfp/WideUint.h"

#include <string>
#include <vector>

namespace py = pybind11;

namespace {

// Arbitrary Python ints cross the boundary as hex strings; the volumes here
// are interactive, not performance sensitive.
apfp::WideUint UintFromPyInt(py::int_ const &value, int bits) {
    const auto builtins = py::module_::import("builtins");
    if (py::cast<int>(value.attr("bit_length")()) > bits) {
        throw std::invalid_argument("Integer does not fit the requested width.");
    }
    const std::string hex = py::cast<std::string>(builtins.attr("format")(value, "x"));
    return apfp::WideUint::FromHexString(bits, hex);
}

py::int_ PyIntFromUint(apfp::WideUint const &value) {
    const auto builtins = py::module_::import("builtins");
    return builtins.attr("int")(py::str(value.ToHexString()), 16);
}

apfp::MulConfig MakeConfig(int mult_base_bits, int add_base_bits) {
    return apfp::MulConfig{mult_base_bits, add_base_bits};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Arbitrary-precision floating-point kernels";

    m.def(
        "karatsuba",
        [](py::int_ const &a, py::int_ const &b, int bits, int mult_base_bits,
           int add_base_bits) {
            return PyIntFromUint(apfp::MulKaratsuba(UintFromPyInt(a, bits),
                                                    UintFromPyInt(b, bits),
                                                    MakeConfig(mult_base_bits, add_base_bits)));
        },
        py::arg("a"), py::arg("b"), py::arg("bits"), py::arg("mult_base_bits") = 72,
        py::arg("add_base_bits") = 64,
        "Exact product of two bits-wide integers via the recursive multiplier");

    m.def(
        "schoolbook",
        [](py::int_ const &a, py::int_ const &b, int bits) {
            return PyIntFromUint(apfp::MulSchoolbook(UintFromPyInt(a, bits),
                                                     UintFromPyInt(b, bits)));
        },
        py::arg("a"), py::arg("b"), py::arg("bits"));

    py::class_<apfp::PackedFloat>(m, "Float")
        .def(py::init<int>(), py::arg("width_bits") = apfp::kDefaultWidthBits)
        .def_static("zero", &apfp::PackedFloat::Zero,
                    py::arg("width_bits") = apfp::kDefaultWidthBits)
        .def_static("one", &apfp::PackedFloat::One,
                    py::arg("width_bits") = apfp::kDefaultWidthBits)
        .def_static(
            "pack",
            [](bool sign, int64_t exponent, py::int_ const &mantissa, int width_bits) {
                return apfp::PackedFloat::Pack(
                    sign, exponent, UintFromPyInt(mantissa, width_bits - apfp::kWordBits));
            },
            py::arg("sign"), py::arg("exponent"), py::arg("mantissa"),
            py::arg("width_bits") = apfp::kDefaultWidthBits)
        .def_property_readonly("sign", &apfp::PackedFloat::GetSign)
        .def_property_readonly("exponent", &apfp::PackedFloat::GetExponent)
        .def_property_readonly(
            "mantissa", [](apfp::PackedFloat const &x) { return PyIntFromUint(x.GetMantissa()); })
        .def_property_readonly("width_bits", &apfp::PackedFloat::WidthBits)
        .def_property_readonly("mantissa_bits", &apfp::PackedFloat::MantissaBits)
        .def("is_zero", &apfp::PackedFloat::IsZero)
        .def("to_bytes",
             [](apfp::PackedFloat const &x) {
                 const auto bytes = x.ToBytes();
                 return py::bytes(reinterpret_cast<char const *>(bytes.data()), bytes.size());
             })
        .def_static(
            "from_bytes",
            [](int width_bits, py::bytes const &data) {
                const std::string raw = data;
                if (static_cast<int>(raw.size()) != apfp::PackedFloat::BytesPerValue(width_bits)) {
                    throw std::invalid_argument("Serialized size does not match the width.");
                }
                return apfp::PackedFloat::FromBytes(
                    width_bits, reinterpret_cast<uint8_t const *>(raw.data()));
            },
            py::arg("width_bits"), py::arg("data"))
        .def("__eq__", [](apfp::PackedFloat const &a, apfp::PackedFloat const &b) { return a == b; })
        .def("__repr__", &apfp::PackedFloat::ToString);

    m.def(
        "multiply",
        [](apfp::PackedFloat const &a, apfp::PackedFloat const &b, int mult_base_bits,
           int add_base_bits) {
            return apfp::Multiply(a, b, MakeConfig(mult_base_bits, add_base_bits));
        },
        py::arg("a"), py::arg("b"), py::arg("mult_base_bits") = 72,
        py::arg("add_base_bits") = 64);
    m.def("add", &apfp::Add, py::arg("a"), py::arg("b"));
    m.def(
        "multiply_add",
        [](apfp::PackedFloat const &a, apfp::PackedFloat const &b, apfp::PackedFloat const &c,
           int mult_base_bits, int add_base_bits) {
            return apfp::MultiplyAdd(a, b, c, MakeConfig(mult_base_bits, add_base_bits));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("mult_base_bits") = 72,
        py::arg("add_base_bits") = 64);

    m.def(
        "gemm",
        [](std::vector<apfp::PackedFloat> const &a, std::vector<apfp::PackedFloat> const &b,
           std::vector<apfp::PackedFloat> const &c, int m_rows, int n_cols, int k_inner,
           int tile_n, int tile_m, int compute_units) {
            if (static_cast<int>(a.size()) != m_rows * k_inner ||
                static_cast<int>(b.size()) != k_inner * n_cols ||
                static_cast<int>(c.size()) != m_rows * n_cols) {
                throw std::invalid_argument("Column-major operand sizes do not match m, n, k.");
            }
            const int width = c.empty() ? apfp::kDefaultWidthBits : c.front().WidthBits();
            apfp::PackedMatrix ma(m_rows, k_inner, width), mb(k_inner, n_cols, width),
                mc(m_rows, n_cols, width);
            for (int j = 0; j < k_inner; ++j) {
                for (int i = 0; i < m_rows; ++i) {
                    ma(i, j) = a[static_cast<size_t>(j) * m_rows + i];
                }
            }
            for (int j = 0; j < n_cols; ++j) {
                for (int i = 0; i < k_inner; ++i) {
                    mb(i, j) = b[static_cast<size_t>(j) * k_inner + i];
                }
            }
            for (int j = 0; j < n_cols; ++j) {
                for (int i = 0; i < m_rows; ++i) {
                    mc(i, j) = c[static_cast<size_t>(j) * m_rows + i];
                }
            }
            apfp::GemmConfig cfg;
            cfg.tile_n = tile_n;
            cfg.tile_m = tile_m;
            cfg.compute_units = compute_units;
            apfp::GemmTiled(ma, mb, mc, cfg);
            std::vector<apfp::PackedFloat> result;
            result.reserve(c.size());
            for (int j = 0; j < n_cols; ++j) {
                for (int i = 0; i < m_rows; ++i) {
                    result.push_back(mc(i, j));
                }
            }
            return result;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("m"), py::arg("n"), py::arg("k"),
        py::arg("tile_n") = 32, py::arg("tile_m") = 32, py::arg("compute_units") = 1,
        "C = A * B + C over column-major value lists");

    m.def(
        "count_base_mults",
        [](int width, int base_bits) {
            const auto s = apfp::dse::CountBaseMults(width, base_bits);
            return py::make_tuple(s.depth, s.count, s.leaf_width);
        },
        py::arg("width"), py::arg("base_bits"),
        "(recursion depth, leaf multiplication count, leaf width)");
    m.def("adder_stage_count", &apfp::dse::AdderStageCount, py::arg("add_width"),
          py::arg("add_base_bits"));
    m.def("arithmetic_intensity", &apfp::ArithmeticIntensity, py::arg("tile_n"),
          py::arg("tile_m"));

    m.def(
        "dse_sweep",
        [](std::vector<int> const &widths, std::vector<int> const &mult_bases,
           std::vector<int> const &add_bases) {
            py::list rows;
            for (const auto &r : apfp::dse::Sweep(widths, mult_bases, add_bases)) {
                py::dict row;
                row["width"] = r.width;
                row["mult_base_bits"] = r.mult_base_bits;
                row["add_base_bits"] = r.add_base_bits;
                row["recursion_depth"] = r.recursion_depth;
                row["base_mult_count"] = r.base_mult_count;
                row["base_mult_width"] = r.base_mult_width;
                row["adder_stage_count_worst"] = r.adder_stage_count_worst;
                row["modeled_bit_ops"] = r.modeled_bit_ops;
                row["modeled_bit_ops_schoolbook"] = r.modeled_bit_ops_schoolbook;
                row["modeled_adder_bits"] = r.modeled_adder_bits;
                row["modeled_resource_bits"] = r.modeled_resource_bits;
                row["modeled_delay_bits"] = r.modeled_delay_bits;
                row["pareto_efficient"] = r.pareto_efficient;
                rows.append(row);
            }
            return rows;
        },
        py::arg("widths"), py::arg("mult_bases"), py::arg("add_bases"));

    m.attr("DEFAULT_WIDTH_BITS") = apfp::kDefaultWidthBits;
    m.attr("WORD_BITS") = apfp::kWordBits;
    m.attr("EXPONENT_MIN") = apfp::kExponentMin;
    m.attr("EXPONENT_MAX") = apfp::kExponentMax;
}
