"""The skeletal Mackey category: morphisms are spans of G-maps
G/K <- G/L -> G/S kept in standard form (identity left leg), composed via
G-set pullbacks.

A basis arrow from G/K to G/S is a pair (g, L): g the minimal representative
of a double coset in K\\G/S and L <= gSg^-1 n K minimal in its orbit under
conjugation by gSg^-1 n K.  Spans with arbitrary legs are normalized by
``standardize`` on ingestion.  Two independent composition routes are
provided: the double-coset formula (``_compose``) and the literal pullback
with orbit decomposition (``compose_oracle``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .catbase import (CatMorphism, CategoryError, SkeletalCategory,
                      compose_morphisms)
from .groups import (Family, FiniteGroup, Subgroup, conjugator, coset_rep,
                     double_cosets, double_cosets_in, minimal_conjugate_under,
                     subgroup_classes_under, subgroups_of)
from .linalg import RingSpec
from .orbit import OrbitArrow, OrbitCategory


@dataclass(frozen=True)
class MackeyArrow:
    """Standard-form span (G/src <-id- G/mid -a_g-> G/dst), canonical key."""

    src: Subgroup
    dst: Subgroup
    g: int
    mid: Subgroup

    def sort_key(self):
        return (self.g, self.mid.elements)

    def __repr__(self):
        return f"span(g={self.g},L={list(self.mid.elements)})"


@dataclass(frozen=True)
class SpanDiagram:
    """A raw span G/src <-a_left- G/mid -a_right-> G/dst (legs are G-maps)."""

    src: Subgroup
    dst: Subgroup
    mid: Subgroup
    left: int
    right: int

    def validate(self) -> None:
        if not self.mid.conjugate(self.left) <= self.src:
            raise CategoryError("invalid left leg of span")
        if not self.mid.conjugate(self.right) <= self.dst:
            raise CategoryError("invalid right leg of span")


class MackeyCategory(SkeletalCategory):
    name = "mackey"

    def __init__(self, family: Family):
        super().__init__(family)
        self._std_cache: dict = {}

    # -- basis ---------------------------------------------------------------

    def _hom_basis(self, K: Subgroup, S: Subgroup):
        G = self.group
        out = []
        for g in double_cosets(G, K, S).reps:
            N = _intersection(G, S.conjugate(G.inverse(g)), K)  # gSg^-1 n K
            for L in subgroup_classes_under(G, N):
                if self.family.contains(L):
                    out.append(MackeyArrow(K, S, g, L))
        out.sort(key=lambda a: a.sort_key())
        return tuple(out)

    def identity(self, x: Subgroup):
        return MackeyArrow(x, x, 0, x)

    # -- standard form -------------------------------------------------------

    def standardize(self, span: SpanDiagram) -> tuple[MackeyArrow, int]:
        """The canonical basis arrow equivalent to the span; the unit is
        always +1 (bijective middle maps cannot introduce signs)."""
        key = (span.src.elements, span.dst.elements, span.mid.elements,
               span.left, span.right)
        got = self._std_cache.get(key)
        if got is None:
            got = self._standardize(span)
            self._std_cache[key] = got
        return got, 1

    def _standardize(self, span: SpanDiagram) -> MackeyArrow:
        span.validate()
        G = self.group
        src, dst = span.src, span.dst
        a, b, mid = span.left, span.right, span.mid
        # conjugate non-representative endpoints onto class representatives
        if dst != self.terminal():
            c2 = conjugator(G, dst)
            if c2 != 0 or G.conj_classes().rep_of(dst) != dst:
                b = G.mul(b, c2)
                dst = dst.conjugate(c2)
        c1 = conjugator(G, src)
        if c1 != 0 or G.conj_classes().rep_of(src) != src:
            a = G.mul(a, c1)
            src = src.conjugate(c1)
        # kill the left leg: (src <-a_a- mid -a_b-> dst)
        #   = (src <-id- mid^a -a_{a^-1 b}-> dst)
        L = mid.conjugate(a)
        g = G.mul(G.inverse(a), b)
        # move g to the canonical double coset representative:
        # (L, g) ~ (L^k, g0) whenever g in k g0 dst with k in src
        g0 = double_cosets(G, src, dst).rep_of[g]
        k = next(kk for kk in src.elements
                 if coset_rep(G, G.mul(kk, g0), dst) == coset_rep(G, g, dst))
        L = L.conjugate(k)
        N = _intersection(G, dst.conjugate(G.inverse(g0)), src)
        L = minimal_conjugate_under(G, L, N)
        if not self.family.contains(L):
            raise CategoryError(f"span middle {L} lies outside the family")
        return MackeyArrow(span.src if False else src, dst, g0, L)

    # -- composition: double-coset formula ------------------------------------

    def _compose(self, f: MackeyArrow, e: MackeyArrow):
        G = self.group
        S = e.dst                       # = f.src
        Lg = e.mid.conjugate(e.g)       # e.g^-1 L e.g <= S
        M = f.mid                       # <= S
        out: dict[MackeyArrow, int] = {}
        for x in double_cosets_in(S, Lg, M):
            X = _intersection(G, Lg, M.conjugate(G.inverse(x)))
            span = SpanDiagram(e.src, f.dst, X,
                               left=G.inverse(e.g), right=G.mul(x, f.g))
            arrow, _ = self.standardize(span)
            out[arrow] = out.get(arrow, 0) + 1
        return out

    # -- composition: literal pullback oracle ----------------------------------

    def compose_oracle_basis(self, f: MackeyArrow, e: MackeyArrow) -> dict:
        """f o e via the pullback G-set {(a L', b M) : legs agree in G/S},
        decomposed into orbits.  Independent of the double-coset formula."""
        if e.dst != f.src:
            raise CategoryError("endpoint mismatch")
        G = self.group
        S = e.dst
        # right leg of e: G/e.mid -> G/S, u*e.mid |-> u*e.g*S
        # left leg of f: G/f.mid -> G/S, v*f.mid |-> v*S
        le = _coset_space(G, e.mid)
        lf = _coset_space(G, f.mid)
        to_S = lambda u: coset_rep(G, u, S)
        pairs = [(u, v) for u in le for v in lf
                 if to_S(G.mul(u, e.g)) == to_S(v)]
        seen = set()
        out: dict[MackeyArrow, int] = {}
        for (u, v) in pairs:
            if (u, v) in seen:
                continue
            orbit = set()
            stack = [(u, v)]
            while stack:
                (a, b) = stack.pop()
                if (a, b) in orbit:
                    continue
                orbit.add((a, b))
                for g in G.elements():
                    na = coset_rep(G, G.mul(g, a), e.mid)
                    nb = coset_rep(G, G.mul(g, b), f.mid)
                    if (na, nb) not in orbit:
                        stack.append((na, nb))
            seen |= orbit
            a0, b0 = min(orbit)
            stab = [g for g in G.elements()
                    if coset_rep(G, G.mul(g, a0), e.mid) == a0
                    and coset_rep(G, G.mul(g, b0), f.mid) == b0]
            X = Subgroup(G, tuple(sorted(stab)))
            span = SpanDiagram(e.src, f.dst, X,
                               left=a0, right=G.mul(b0, f.g))
            arrow, _ = self.standardize(span)
            out[arrow] = out.get(arrow, 0) + 1
        return out

    def compose_oracle(self, f: CatMorphism, e: CatMorphism) -> CatMorphism:
        ring = f.ring
        out: dict = {}
        for ae, ce in e.coeffs:
            for af, cf in f.coeffs:
                c = ring.mul(ce, cf)
                for arrow, n in self.compose_oracle_basis(af, ae).items():
                    out[arrow] = ring.add(out.get(arrow, ring.zero()),
                                          ring.mul(c, ring.of(n)))
        return CatMorphism.from_dict(self, ring, e.src, f.dst, out)

    # -- Green generators -------------------------------------------------------

    def induction_gen(self, ring: RingSpec, K: Subgroup, H: Subgroup) -> CatMorphism:
        """I^H_K for K <= H: the span (G/H <-id- G/K -id-> G/K), conjugated
        into the skeleton; a morphism rep(H) -> rep(K)."""
        arrow, _ = self.standardize(SpanDiagram(H, K, K, 0, 0))
        return CatMorphism.basis(self, ring, arrow)

    def restriction_gen(self, ring: RingSpec, K: Subgroup, H: Subgroup) -> CatMorphism:
        """R^H_K for K <= H: the span (G/K <-id- G/K -id-> G/H)."""
        arrow, _ = self.standardize(SpanDiagram(K, H, K, 0, 0))
        return CatMorphism.basis(self, ring, arrow)

    def conjugation_gen(self, ring: RingSpec, H: Subgroup, x: int) -> CatMorphism:
        """c_x: G/H^{x^-1} -> G/H, the span with right leg a_x."""
        Hx = H.conjugate(self.group.inverse(x))
        arrow, _ = self.standardize(SpanDiagram(Hx, H, Hx, 0, x))
        return CatMorphism.basis(self, ring, arrow)


def _intersection(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup(G, tuple(sorted(set(A.elements) & set(B.elements))))


def _coset_space(G: FiniteGroup, K: Subgroup) -> tuple[int, ...]:
    from .groups import left_coset_reps
    return left_coset_reps(G, K)


# -- the functor sigma -------------------------------------------------------


def sigma_arrow(mcat: MackeyCategory, arrow: OrbitArrow) -> MackeyArrow:
    """sigma(alpha_g: G/H -> G/K) = (G/H <-id- G/H -a_g-> G/K)."""
    std, _ = mcat.standardize(SpanDiagram(arrow.src, arrow.dst,
                                          arrow.src, 0, arrow.g))
    return std


def sigma_apply(mcat: MackeyCategory, m: CatMorphism) -> CatMorphism:
    out: dict = {}
    ring = m.ring
    for a, c in m.coeffs:
        arrow = sigma_arrow(mcat, a)
        out[arrow] = ring.add(out.get(arrow, ring.zero()), c)
    return CatMorphism.from_dict(mcat, ring, m.src, m.dst, out)


# -- Green axiom checking -----------------------------------------------------


@dataclass
class AxiomReport:
    passed: dict[str, bool]
    witnesses: dict[str, tuple]

    def ok(self) -> bool:
        return all(self.passed.values())


def _family_subgroups(cat: SkeletalCategory) -> list[Subgroup]:
    G = cat.group
    return [s for s in G.all_subgroups() if cat.family.contains(s)]


def green_axiom_check(M, exhaustive: bool = True) -> AxiomReport:
    """Check Green's axioms (0)-(6) for a Mackey module M, reporting the
    first counterexample per axiom."""
    from .modules import act_on_morphism, value_identity_matrix
    cat: MackeyCategory = M.category
    ring = M.ring
    G = cat.group
    subs = _family_subgroups(cat)
    passed = {str(i): True for i in range(7)}
    witnesses: dict[str, tuple] = {}

    def act(m: CatMorphism):
        return act_on_morphism(M, m)

    def fail(ax, witness):
        if passed[ax]:
            passed[ax] = False
            witnesses[ax] = witness

    I, R, c = cat.induction_gen, cat.restriction_gen, cat.conjugation_gen
    import itertools
    from .linalg import mat_eq, mat_mul, mat_scale, rows_equal_mod

    def eqmod(A, B, obj):
        return rows_equal_mod(ring, A, B, M.values[obj].relations)

    # (0) identities
    for H in subs:
        rep = G.conj_classes().rep_of(H)
        ident = value_identity_matrix(M, rep)
        for m in (I(ring, H, H), R(ring, H, H)):
            if not eqmod(act(m), ident, rep):
                fail("0", (H,))
        for h in H.elements:
            if not eqmod(act(c(ring, H, h)), ident, rep):
                fail("0", (H, h))
    # chains J <= K <= H
    for J in subs:
        for K in subs:
            if not J <= K:
                continue
            for H in subs:
                if not K <= H:
                    continue
                lhs = compose_morphisms(R(ring, J, K), R(ring, K, H))
                if act(lhs) is None:
                    continue
                # (1) M(R^K_J) o M(R^H_K) = M(R^H_J):
                # matrices: act(R^H_K) @ act(R^K_J)
                got = mat_mul(ring, act(R(ring, K, H)), act(R(ring, J, K)))
                if not eqmod(got, act(R(ring, J, H)), G.conj_classes().rep_of(J)):
                    fail("1", (J, K, H))
                # (2) inductions
                got = mat_mul(ring, act(I(ring, J, K)), act(I(ring, K, H)))
                if not eqmod(got, act(I(ring, J, H)), G.conj_classes().rep_of(H)):
                    fail("2", (J, K, H))
    # (3) conjugations compose
    for H in subs:
        for g in G.elements():
            for h in G.elements():
                Hg = H.conjugate(G.inverse(g))   # H^{g^-1}
                left = mat_mul(ring, act(c(ring, H, g)),
                               act(c(ring, Hg, h)))
                rep = G.conj_classes().rep_of(Hg.conjugate(G.inverse(h)))
                right = act(c(ring, H, G.mul(g, h)))
                if not eqmod(left, right, rep):
                    fail("3", (H, g, h))
        if not exhaustive:
            break
    # (4),(5) conjugation vs restriction/induction
    for K in subs:
        for H in subs:
            if not K <= H:
                continue
            for g in G.elements():
                Hg, Kg = H.conjugate(G.inverse(g)), K.conjugate(G.inverse(g))
                # (4): M(R^{H^{g^-1}}_{K^{g^-1}}) o M(c_g) = M(c_g) o M(R^H_K)
                lhs = mat_mul(ring, act(c(ring, H, g)), act(R(ring, Kg, Hg)))
                rhs = mat_mul(ring, act(R(ring, K, H)),
                              act(c(ring, K, g)))
                if not eqmod(lhs, rhs, G.conj_classes().rep_of(Kg)):
                    fail("4", (K, H, g))
                # (5): inductions
                lhs = mat_mul(ring, act(I(ring, K, H)), act(c(ring, H, g)))
                rhs = mat_mul(ring, act(c(ring, K, g)), act(I(ring, Kg, Hg)))
                if not eqmod(lhs, rhs, G.conj_classes().rep_of(Hg)):
                    fail("5", (K, H, g))
    # (6) Mackey axiom
    for H in subs:
        inner = [s for s in subs if s <= H]
        for J in inner:
            for K in inner:
                lhs_m = compose_morphisms(I(ring, K, H), R(ring, J, H))
                # note: morphism composite I^H_K o R^H_J: G/J -> G/K;
                # M of it is M(R^H_J) o M(I^H_K) pointwise
                lhs = act(lhs_m)
                rhs = None
                for x in double_cosets_in(H, J, K):
                    A = _intersection(M.category.group, J,
                                      K.conjugate(G.inverse(x)))  # J n K^{x^-1}
                    Jx = J.conjugate(x)
                    B = _intersection(M.category.group, Jx, K)     # J^x n K
                    term_m = compose_morphisms(
                        R(ring, B, K),
                        compose_morphisms(c(ring, B, x), I(ring, A, J)))
                    term = act(term_m)
                    rhs = term if rhs is None else _mat_add(ring, rhs, term)
                if not eqmod(lhs, rhs, G.conj_classes().rep_of(J)):
                    fail("6", (J, K, H))
    return AxiomReport(passed, witnesses)


def _mat_add(ring, A, B):
    from .linalg import mat_add
    return mat_add(ring, A, B)
