"""Quantized interacting particle systems.

Domany-Kinzel cellular automata, their Markov chains on loop-decorated
graphs, the quantum coin U = 2 K L^T - J, the zeta function
det(I - uU)^-1 and the absolute zeta function of its cyclotomic form.
"""
from .abszeta import (
    AutomorphyWitness,
    CyclotomicForm,
    Theorem5Report,
    absolute_zeta,
    check_functional_equation,
    cyclotomic_polynomial,
    detect_automorphy,
    epsilon_factor,
    mellin_Z,
    subset_sum_Z,
    theorem5_expand,
    to_cyclotomic_form,
)
from .errors import (
    DomainError,
    ExactnessWarning,
    FormMismatch,
    InternalConsistencyError,
    NotAutomorphic,
    NotCyclotomic,
    PoleError,
    QipsError,
    ReconstructionError,
    SignMismatch,
    StructureError,
    TheoremViolation,
)
from .graph_markov import ArcSet, Graph, MarkovChain, build_component_graph, chain_from_block, random_chain
from .ips_core import (
    Configuration,
    DKParams,
    GlobalOperator,
    LocalOperator,
    build_dk_local,
    classify_local,
    global_from_local,
    sample_next_states,
    sample_trajectory,
    split_blocks,
)
from .multiple_zeta import log_multiple_gamma, multiple_gamma, multiple_hurwitz_zeta, multiple_sine
from .pipeline import ModelSpec, combined_reciprocal, dk_chains, recognise
from .polynomial import Polynomial, RationalFunction
from .quantizer import QuantumCoin, build_coupling, quantize, symmetrize, unitarity_defect, walk_evolve
from .zeta import (
    charpoly,
    corollary4_spectrum,
    rationalize_poly,
    theorem2_rhs,
    verify_theorem2,
    zeta_function,
    zeta_reciprocal,
)

__all__ = [
    "absolute_zeta",
    "ArcSet",
    "AutomorphyWitness",
    "build_component_graph",
    "build_coupling",
    "build_dk_local",
    "chain_from_block",
    "charpoly",
    "check_functional_equation",
    "classify_local",
    "combined_reciprocal",
    "Configuration",
    "corollary4_spectrum",
    "cyclotomic_polynomial",
    "CyclotomicForm",
    "detect_automorphy",
    "dk_chains",
    "DKParams",
    "DomainError",
    "epsilon_factor",
    "ExactnessWarning",
    "FormMismatch",
    "global_from_local",
    "GlobalOperator",
    "Graph",
    "InternalConsistencyError",
    "LocalOperator",
    "log_multiple_gamma",
    "MarkovChain",
    "mellin_Z",
    "ModelSpec",
    "multiple_gamma",
    "multiple_hurwitz_zeta",
    "multiple_sine",
    "NotAutomorphic",
    "NotCyclotomic",
    "PoleError",
    "Polynomial",
    "QipsError",
    "quantize",
    "QuantumCoin",
    "random_chain",
    "RationalFunction",
    "rationalize_poly",
    "recognise",
    "ReconstructionError",
    "sample_next_states",
    "sample_trajectory",
    "SignMismatch",
    "split_blocks",
    "StructureError",
    "subset_sum_Z",
    "symmetrize",
    "theorem2_rhs",
    "theorem5_expand",
    "Theorem5Report",
    "TheoremViolation",
    "to_cyclotomic_form",
    "unitarity_defect",
    "verify_theorem2",
    "walk_evolve",
    "zeta_function",
    "zeta_reciprocal",
]

__version__ = "0.1.0"
