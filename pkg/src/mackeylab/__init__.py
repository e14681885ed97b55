"""Exact computation in the orbit, Mackey, and Hecke categories of a finite
group: morphism bases, composition, modules over the categories, free covers,
resolutions, Ext/Tor, and an executable verification suite."""

from .groups import (FiniteGroup, Subgroup, Family, DoubleCosets,
                     build_group, catalog_group, make_family, sylow,
                     weyl_group, double_cosets, chain_length)
from .linalg import RingSpec, ZZ, QQ, GF, Zloc, PresentedModule

__all__ = [
    "FiniteGroup", "Subgroup", "Family", "DoubleCosets",
    "build_group", "catalog_group", "make_family", "sylow", "weyl_group",
    "double_cosets", "chain_length",
    "RingSpec", "ZZ", "QQ", "GF", "Zloc", "PresentedModule",
]
