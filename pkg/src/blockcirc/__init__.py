"""Block circulant erasure codes and availability-sampling analysis."""

from .field import (BinaryField, Field, FieldError, PrimeField, build_field,
                    default_modulus, is_characteristic_two)
from .topology import TopologyParams, build_sets
from .grs import ERASURE, GrsSpec, brs_multipliers, brs_spec
from .bc_code import BcCode, ShortenedBcCode, build
from .bc_decoder import (DecodeOutcome, FULLY_RECOVERED, UNCORRECTABLE,
                         decode, distributed_plan)
from .product_rs import ProductSpec
from .das import DasParams, MetricsReport, PrecisionConfig, PrecisionLossError
from .das_sim import SimConfig, SimReport, simulate

__version__ = "0.1.0"

__all__ = [
    "BcCode", "BinaryField", "DasParams", "DecodeOutcome", "ERASURE",
    "FULLY_RECOVERED", "Field", "FieldError", "GrsSpec", "MetricsReport",
    "PrecisionConfig", "PrecisionLossError", "PrimeField", "ProductSpec",
    "ShortenedBcCode", "SimConfig", "SimReport", "TopologyParams",
    "UNCORRECTABLE", "brs_multipliers", "brs_spec", "build", "build_field",
    "build_sets", "decode", "default_modulus", "distributed_plan",
    "is_characteristic_two", "simulate",
]
