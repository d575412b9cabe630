"""Arbitrary-precision floating-point kernels."""

from ._core import (
    DEFAULT_WIDTH_BITS,
    EXPONENT_MAX,
    EXPONENT_MIN,
    WORD_BITS,
    Float,
    add,
    adder_stage_count,
    arithmetic_intensity,
    count_base_mults,
    dse_sweep,
    gemm,
    karatsuba,
    multiply,
    multiply_add,
    schoolbook,
)

__all__ = [
    "DEFAULT_WIDTH_BITS",
    "EXPONENT_MAX",
    "EXPONENT_MIN",
    "WORD_BITS",
    "Float",
    "add",
    "adder_stage_count",
    "arithmetic_intensity",
    "count_base_mults",
    "dse_sweep",
    "gemm",
    "karatsuba",
    "multiply",
    "multiply_add",
    "schoolbook",
]

__version__ = "0.1.0"
