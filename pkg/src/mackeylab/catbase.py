"""Shared machinery for the skeletal categories: morphism arrows with integer
structure constants, and ring-linear combinations of them.

Each category exposes:

* ``objects()`` -- canonical family class representatives, smallest first;
* ``hom_basis(x, y)`` -- deterministic tuple of basis arrows x -> y;
* ``compose(f, e)`` -- the expansion of f o e (e first) as an integer
  combination of basis arrows;
* ``identity(x)``.

The full group is accepted as the destination of ``hom_basis``/``compose``
even when it is not in the family; free modules "at G/G" (the constant
module, the Burnside functor, the fixed-point base) are built through this.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .groups import Family, FiniteGroup, Subgroup
from .linalg import RingSpec, Scalar


class CategoryError(ValueError):
    pass


class SkeletalCategory:
    """Base class: caching and the generic pieces of the arrow calculus."""

    name = "abstract"

    def __init__(self, family: Family):
        self.family = family
        self.group: FiniteGroup = family.group
        self._hom_cache: dict = {}
        self._comp_cache: dict = {}

    def objects(self) -> tuple[Subgroup, ...]:
        return self.family.objects()

    def terminal(self) -> Subgroup:
        return self.group.full_subgroup()

    def hom_basis(self, x: Subgroup, y: Subgroup):
        key = (x.elements, y.elements)
        got = self._hom_cache.get(key)
        if got is None:
            got = self._hom_basis(x, y)
            self._hom_cache[key] = got
        return got

    def compose(self, f, e) -> dict:
        """f o e as {basis arrow: integer coefficient}; e: x->y, f: y->z."""
        if e.dst != f.src:
            raise CategoryError(f"cannot compose {f} o {e}: object mismatch")
        key = (f, e)
        got = self._comp_cache.get(key)
        if got is None:
            got = self._compose(f, e)
            self._comp_cache[key] = got
        return got

    def identity(self, x: Subgroup):
        raise NotImplementedError

    def _hom_basis(self, x, y):
        raise NotImplementedError

    def _compose(self, f, e):
        raise NotImplementedError

    def arrow_index(self, arrow) -> int:
        basis = self.hom_basis(arrow.src, arrow.dst)
        return basis.index(arrow)

    def all_arrows(self, include_terminal: bool = False):
        objs = list(self.objects())
        dsts = objs + ([self.terminal()] if include_terminal
                       and not self.family.has_terminal_object() else [])
        for x in objs:
            for y in dsts:
                yield from self.hom_basis(x, y)


@dataclass(frozen=True)
class CatMorphism:
    """A ring-linear combination of basis arrows with common endpoints."""

    cat: SkeletalCategory = field(compare=False)
    ring: RingSpec
    src: Subgroup
    dst: Subgroup
    coeffs: tuple  # sorted tuple of (arrow, scalar), no zeros

    @staticmethod
    def from_dict(cat, ring, src, dst, d: dict) -> "CatMorphism":
        items = [(a, ring.of(c)) for a, c in d.items() if c != 0]
        items.sort(key=lambda ac: ac[0].sort_key())
        return CatMorphism(cat, ring, src, dst, tuple(items))

    @staticmethod
    def basis(cat, ring, arrow, coeff: Scalar = 1) -> "CatMorphism":
        return CatMorphism.from_dict(cat, ring, arrow.src, arrow.dst,
                                     {arrow: ring.of(coeff)})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def add(self, other: "CatMorphism") -> "CatMorphism":
        if (self.src, self.dst) != (other.src, other.dst):
            raise CategoryError("cannot add morphisms with different endpoints")
        d = self.as_dict()
        for a, c in other.coeffs:
            d[a] = self.ring.add(d.get(a, self.ring.zero()), c)
        return CatMorphism.from_dict(self.cat, self.ring, self.src, self.dst, d)

    def scale(self, c: Scalar) -> "CatMorphism":
        c = self.ring.of(c)
        d = {a: self.ring.mul(c, v) for a, v in self.coeffs}
        return CatMorphism.from_dict(self.cat, self.ring, self.src, self.dst, d)

    def then(self, other: "CatMorphism") -> "CatMorphism":
        """other o self (apply self first)."""
        return compose_morphisms(other, self)

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*{a}" for a, c in self.coeffs) or "0"
        return f"<{terms}>"


def compose_morphisms(f: CatMorphism, e: CatMorphism) -> CatMorphism:
    """f o e, by bilinear extension of the basis composition."""
    if e.cat is not f.cat or e.ring != f.ring:
        raise CategoryError("morphisms from different categories/rings")
    if e.dst != f.src:
        raise CategoryError("endpoint mismatch in composition")
    cat, ring = f.cat, f.ring
    out: dict = {}
    for ae, ce in e.coeffs:
        for af, cf in f.coeffs:
            c = ring.mul(ce, cf)
            for arrow, n in cat.compose(af, ae).items():
                out[arrow] = ring.add(out.get(arrow, ring.zero()),
                                      ring.mul(c, ring.of(n)))
    return CatMorphism.from_dict(cat, ring, e.src, f.dst, out)


def identity_morphism(cat: SkeletalCategory, ring: RingSpec,
                      x: Subgroup) -> CatMorphism:
    return CatMorphism.basis(cat, ring, cat.identity(x))


# -- group algebra as a one-object category ----------------------------------


@dataclass(frozen=True)
class GroupArrow:
    src: Subgroup
    dst: Subgroup
    g: int

    def sort_key(self):
        return (self.g,)

    def __repr__(self):
        return f"g{self.g}"


class GroupAlgebraCategory(SkeletalCategory):
    """A finite group W as a one-object category whose composition rule is
    ``compose(f, e) = e * f`` in W.

    This matches the automorphism calculus of all three G-set categories,
    where a_g o a_h = a_{hg}; modules over this category are left R[W]-modules
    presented through their right R[W^op]-action.
    """

    name = "group-algebra"

    def __init__(self, W: FiniteGroup):
        fam = Family(W, (W.full_subgroup(),), "group-algebra")
        super().__init__(fam)
        self.W = W
        self.obj = W.full_subgroup()

    def objects(self):
        return (self.obj,)

    def _hom_basis(self, x, y):
        if x != self.obj or y != self.obj:
            raise CategoryError("group algebra category has a single object")
        return tuple(GroupArrow(self.obj, self.obj, g)
                     for g in self.W.elements())

    def _compose(self, f, e):
        return {GroupArrow(self.obj, self.obj, self.W.mul(e.g, f.g)): 1}

    def identity(self, x):
        return GroupArrow(self.obj, self.obj, 0)
