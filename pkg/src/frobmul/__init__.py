"""Multiplication of long GF(2)[x] polynomials with an additive FFT over GF(2^m).

The pipeline converts both inputs to the novelpoly basis, collapses the first
log2(m) butterfly layers into bit-matrix products (the Frobenius partition
encode), runs a truncated LCH butterfly, multiplies pointwise and inverts.
"""
from .fft_core import ButterflyPlan, direct_eval, i_lch_butterfly, lch_butterfly, plan_butterflies
from .frobenius_encode import (
    EncodeMatrix, PartitionSpec, bit_transpose_block, build_encode_matrix, decode, encode,
    enumerate_partition, m4r_mat_vec, partition_spec,
)
from .gf_cantor import (
    FieldParams, build_field_params, cantor_to_poly, frobenius_order_of_basis, gf_add, gf_mul, gf_sqr,
    poly_to_cantor, subspace_eval,
)
from .multiplier import (
    MulPlan, SizeBoundError, fp_polymul, frobenius_value_check, karatsuba_mul, naive_mul, plan_mul,
    pointwise_mul,
)
from .poly_basis import BitPoly, basis_cvt, i_basis_cvt

__version__ = "0.1.0"

__all__ = [
    "BitPoly", "ButterflyPlan", "EncodeMatrix", "FieldParams", "MulPlan", "PartitionSpec", "SizeBoundError",
    "basis_cvt", "bit_transpose_block", "build_encode_matrix", "build_field_params", "cantor_to_poly",
    "decode", "direct_eval", "encode", "enumerate_partition", "fp_polymul", "frobenius_order_of_basis",
    "frobenius_value_check", "gf_add", "gf_mul", "gf_sqr", "i_basis_cvt", "i_lch_butterfly",
    "karatsuba_mul", "lch_butterfly", "m4r_mat_vec", "naive_mul", "partition_spec", "plan_butterflies",
    "plan_mul", "pointwise_mul", "poly_to_cantor", "subspace_eval",
]
