"""Partitions of [0, N] into two sets with equal representation functions."""

from .construction import chen_lev_step, claim3_sets, theorem1_construct, theorem1_lengths
from .intset import IntSet, difference_set_contains
from .repfn import cross_rep_profile, eq_2_5_check, rep_count, rep_profile
from .solver import ProgressionSpec, SolveOutcome, Status, decision_rule, solve
from .thue_morse import digit_chain_classify, is_evil, tm_prefix

__all__ = [
    "IntSet", "difference_set_contains",
    "rep_count", "rep_profile", "cross_rep_profile", "eq_2_5_check",
    "is_evil", "tm_prefix", "digit_chain_classify",
    "chen_lev_step", "theorem1_lengths", "theorem1_construct", "claim3_sets",
    "ProgressionSpec", "SolveOutcome", "Status", "solve", "decision_rule",
]
