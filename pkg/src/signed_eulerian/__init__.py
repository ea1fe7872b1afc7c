"""Eulerian numbers refined by sign, for the symmetric and hyperoctahedral groups."""

__version__ = "0.1.0"

from .combinatorics import Permutation, SignedPermutation, descent_count, statistics  # noqa: E402
from .eulerian import (  # noqa: E402
    DistributionTable, b_eulerian_table, b_pm_eulerian_table, brute_force_table,
    eulerian_table, pm_eulerian_table, table,
)
from .roots import certify_conjecture_sweep, certify_real_rooted, interlacing_probe  # noqa: E402
from .shuffles import ShuffleSpec, simulate  # noqa: E402
