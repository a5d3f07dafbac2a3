"""Constructive nilpotent G-functions, one per existence argument, plus the
standard digraph families."""

from ._common import Construction, ConstructionCertificate
from .boolean import (
    complete_loops_class2,
    double_cycle_function,
    gab_andnet,
    loops_added_nilpotent,
    primitive_andnet,
    strong_loop_nilpotent,
    strong_wheel_nilpotent,
    undirected_class3,
    universal_class3,
    xor_class2,
)
from .decomposition import DecompositionPlan, build_decomposition, nilpotent_3letter
from .families import (
    FAMILIES,
    complete,
    complete_loops,
    cycle,
    double_cycle,
    gen_family,
    tight_full,
    tight_general,
    wheel,
    wheel_good_arc,
)
from .nonboolean import (
    default_component_functions,
    extend_alphabet,
    extend_from_initial,
    nilpotent_3letter_class2,
    nilpotent_4letter,
)

__all__ = [
    "Construction",
    "ConstructionCertificate",
    "DecompositionPlan",
    "FAMILIES",
    "build_decomposition",
    "complete",
    "complete_loops",
    "complete_loops_class2",
    "cycle",
    "default_component_functions",
    "double_cycle",
    "double_cycle_function",
    "extend_alphabet",
    "extend_from_initial",
    "gab_andnet",
    "gen_family",
    "loops_added_nilpotent",
    "nilpotent_3letter",
    "nilpotent_3letter_class2",
    "nilpotent_4letter",
    "primitive_andnet",
    "strong_loop_nilpotent",
    "strong_wheel_nilpotent",
    "tight_full",
    "tight_general",
    "undirected_class3",
    "universal_class3",
    "wheel",
    "wheel_good_arc",
    "xor_class2",
]
