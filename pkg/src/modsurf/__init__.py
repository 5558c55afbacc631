"""Real elliptic modular surfaces from finite-index subgroups of PSL(2,Z).

Submodules:

- ``psl2``: exact SL(2,Z)/PSL(2,Z) arithmetic, words, parabolic normal forms
- ``subgroup``: coset representations, cusps, genus, loop generators
- ``gamma_family``: the level-2 family G_k and its fundamental domains
- ``genus1``: the j-function and real forms of genus-1 curves
- ``fibers``: I_m / I*_m fibres and lifts of the monodromy
- ``surface``: Hodge numbers and real topology of the resulting surfaces
"""
from .psl2 import INF, IDENTITY, S, T, GeneratorWord, Mat, matrix_to_word, parabolic_normal_form
from .subgroup import (
    CosetRepresentation, cusps, from_generators, from_permutations, invariants,
    parabolic_generator_system,
)
from .gamma_family import build_gamma_k, gamma2
from .genus1 import equivalent, is_definable_over_R, j_normalized, real_component_count
from .fibers import FiberType, enumerate_lifts, summarize_lifts
from .surface import all_star_model, hodge_invariants, models, real_topology_extremal

__version__ = "0.1.0"

__all__ = [
    "INF", "IDENTITY", "S", "T", "GeneratorWord", "Mat", "matrix_to_word", "parabolic_normal_form",
    "CosetRepresentation", "cusps", "from_generators", "from_permutations", "invariants",
    "parabolic_generator_system", "build_gamma_k", "gamma2", "equivalent",
    "is_definable_over_R", "j_normalized", "real_component_count", "FiberType",
    "enumerate_lifts", "summarize_lifts", "all_star_model", "hodge_invariants", "models",
    "real_topology_extremal",
]
