"""Finite-field towers, traces, discrete logarithms and characters."""

from finmono.finitefield.characters import (
    CharacterOrderError,
    additive_char,
    character_exponent,
    character_gauss_sum,
    mult_char,
)
from finmono.finitefield.tower import (
    BudgetExceededError,
    FFElem,
    FieldLevel,
    FieldTower,
    TowerStep,
    UnrelatedLevelsError,
    absolute_trace,
    build_extension,
    dlog_table,
    embed,
    enumerate_level,
    field_of_degree,
    is_irreducible,
    norm_to,
    prime_field,
    smallest_irreducible,
)

__all__ = [
    "BudgetExceededError",
    "CharacterOrderError",
    "FFElem",
    "FieldLevel",
    "FieldTower",
    "TowerStep",
    "UnrelatedLevelsError",
    "absolute_trace",
    "additive_char",
    "build_extension",
    "character_exponent",
    "character_gauss_sum",
    "dlog_table",
    "embed",
    "enumerate_level",
    "field_of_degree",
    "is_irreducible",
    "mult_char",
    "norm_to",
    "prime_field",
    "smallest_irreducible",
]
