"""The skeletal orbit category: objects are the family's class
representatives, morphisms G/H -> G/K are the G-maps alpha_g: xH |-> xgK
with g^-1 H g <= K.  Applying alpha_g then alpha_h yields alpha_{gh}, so
the endomorphisms of G/H compose opposite to the Weyl group: a_g o a_h =
a_{hg}."""

from __future__ import annotations

from dataclasses import dataclass

from .catbase import CategoryError, SkeletalCategory
from .groups import Family, Subgroup, coset_rep, left_coset_reps


@dataclass(frozen=True)
class OrbitArrow:
    """The G-map G/src -> G/dst with src |-> g*dst; g is the minimal coset
    representative."""

    src: Subgroup
    dst: Subgroup
    g: int

    def sort_key(self):
        return (self.g,)

    def __repr__(self):
        return f"a[{self.g}]"


class OrbitCategory(SkeletalCategory):
    name = "orbit"

    def __init__(self, family: Family):
        super().__init__(family)

    def _hom_basis(self, x: Subgroup, y: Subgroup):
        G = self.group
        out = []
        for g in left_coset_reps(G, y):
            conj = x.conjugate(g)  # x^g = g^-1 x g
            if conj <= y:
                out.append(OrbitArrow(x, y, g))
        return tuple(out)

    def _compose(self, f: OrbitArrow, e: OrbitArrow):
        # e: x->y (x |-> e.g y), f: y->z; composite x |-> e.g f.g z
        G = self.group
        g = coset_rep(G, G.mul(e.g, f.g), f.dst)
        return {OrbitArrow(e.src, f.dst, g): 1}

    def identity(self, x: Subgroup):
        return OrbitArrow(x, x, 0)

    def endomorphism_arrows(self, x: Subgroup):
        return self.hom_basis(x, x)


def orbit_hom_basis(cat: OrbitCategory, H: Subgroup, K: Subgroup):
    return cat.hom_basis(H, K)
