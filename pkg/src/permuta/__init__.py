"""Finite-group, group-algebra and free-group tools for checking when
permutable subgroups must be normal."""

from .errors import PermutaError
from .grammar import parse_group
from .groups import FiniteGroup, SubgroupSet, all_subgroups, generate_group
from .permutations import Perm

__all__ = ["FiniteGroup", "Perm", "PermutaError", "SubgroupSet", "all_subgroups", "generate_group", "parse_group"]
__version__ = "0.1.0"
