"""
GIFS Services Package
Attractor algorithms, code-space arithmetic, rendering and the render pipeline
"""

from .hutchinson import (
    eval_map,
    lipschitz_bound,
    hutchinson,
    simplified_hutchinson,
    fixed_point,
    attractor_radius,
)
from .metric import hausdorff_distance, directed_distance
from .validation import ContractivityReport, validate_contractive
from .deterministic import DeterministicState, det_step, det_run, det_run_simplified, decimate
from .chaos_game import ChaosState, RngSpec, chaos_init, chaos_step, chaos_points, chaos_run
from .affine import (
    CoefficientTables,
    build_tables_full,
    eval_f_alpha_closed,
    build_B_shortcut,
    attractor_shortcut,
    attractor_from_seed,
)
from .comparison import compare_runs

__all__ = [
    "eval_map",
    "lipschitz_bound",
    "hutchinson",
    "simplified_hutchinson",
    "fixed_point",
    "attractor_radius",
    "hausdorff_distance",
    "directed_distance",
    "ContractivityReport",
    "validate_contractive",
    "DeterministicState",
    "det_step",
    "det_run",
    "det_run_simplified",
    "decimate",
    "ChaosState",
    "RngSpec",
    "chaos_init",
    "chaos_step",
    "chaos_points",
    "chaos_run",
    "CoefficientTables",
    "build_tables_full",
    "eval_f_alpha_closed",
    "build_B_shortcut",
    "attractor_shortcut",
    "attractor_from_seed",
    "compare_runs",
]
