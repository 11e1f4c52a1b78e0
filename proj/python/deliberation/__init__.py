"""Iterative deliberation over metric spaces with voting rules.

Points are plain lists: floats for euclidean points, 0/1 for approval ballots,
candidate indices (best first) for rankings.
"""

from ._core import (
    EXAMPLES,
    DeliberationError,
    Space,
    check_constraints,
    distance,
    iteration_bound,
    kemeny_bruteforce,
    move,
    potential_scoring,
    potential_stv,
    reproduce,
    run,
    verify,
    winner,
)

__all__ = [
    "EXAMPLES",
    "DeliberationError",
    "Space",
    "check_constraints",
    "distance",
    "iteration_bound",
    "kemeny_bruteforce",
    "move",
    "potential_scoring",
    "potential_stv",
    "reproduce",
    "run",
    "verify",
    "winner",
]
__version__ = "0.1.0"
