"""Hamming-code components, admissible families and switched 1-perfect codes."""

from perfcode.components import Component, component_basis, in_component
from perfcode.family import (
    ColumnChoice,
    LambdaCode,
    SwitchFamily,
    build_family,
    check_admissible,
    default_choice,
    switch,
    validate_lambda,
)
from perfcode.gf import FieldSpec, field
from perfcode.hamming import HammingCode, build
from perfcode.verify import PerfectCodeOracle, VerifyReport, embedding_check, is_perfect

__all__ = [
    "ColumnChoice",
    "Component",
    "FieldSpec",
    "HammingCode",
    "LambdaCode",
    "PerfectCodeOracle",
    "SwitchFamily",
    "VerifyReport",
    "build",
    "build_family",
    "check_admissible",
    "component_basis",
    "default_choice",
    "embedding_check",
    "field",
    "in_component",
    "is_perfect",
    "switch",
    "validate_lambda",
]
