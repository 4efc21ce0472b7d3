"""Hopfield-style optimisation of real quadratic and Hermitian forms on hypercubes."""
from .augment import AugmentedNetwork, augment, augment_complex, augment_real, solve_dummy_weights
from .dynamics import (
    Trajectory,
    energy,
    parallel_step,
    pre_activation,
    run_parallel,
    run_serial,
    serial_step,
)
from .forms import HollowReduction, decompose, eval_form, hollow_reduce
from .hypercube import csgn, random_vertex, sgn, vertices_complex, vertices_real
from .network import Network
from .oracle import brute_force_extrema, census, is_corner_positive, verify_theorem
from .stability import SlackReport, is_anti_stable, is_stable, minimality_slack
from .synthesis import PatternSet, check_patterns, synthesize_complex, synthesize_real
from .toeplitz import ToeplitzSpec, eval_toeplitz_complex, eval_toeplitz_real, toeplitz_dense

__version__ = "0.1.0"
