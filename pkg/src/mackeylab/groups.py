"""Finite groups as Cayley tables, with subgroup lattices, conjugacy data,
double cosets, and families of subgroups.

Conventions used throughout the package (fixed here, once):

* Elements are integers ``0 .. order-1`` and element ``0`` is the identity.
* ``mul(a, b)`` is read left to right: "first a, then b".
* Conjugation is ``x^g = g^-1 x g`` and ``H^g = g^-1 H g``.
* A left coset ``gK`` is represented by its minimal element; a double coset
  ``HgK`` likewise.  Canonical class representatives are the subgroups whose
  sorted element tuple is lexicographically minimal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

DEFAULT_SUBGROUP_BOUND = 48


class GroupError(ValueError):
    """Invalid group data (bad Cayley table, unknown catalog name, ...)."""


class BoundExceeded(GroupError):
    """Group too large for exhaustive subgroup enumeration."""


class FiniteGroup:
    """A finite group given by its Cayley table.

    The table is validated on construction: associativity, identity at
    index 0, and existence of inverses.
    """

    def __init__(self, table: Sequence[Sequence[int]], label: str = "G"):
        n = len(table)
        if n == 0:
            raise GroupError("empty Cayley table")
        tbl = tuple(tuple(int(x) for x in row) for row in table)
        for row in tbl:
            if len(row) != n or any(x < 0 or x >= n for x in row):
                raise GroupError("Cayley table is not a square over 0..n-1")
        for a in range(n):
            if tbl[0][a] != a or tbl[a][0] != a:
                raise GroupError("element 0 is not a two-sided identity")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if tbl[a][b] == 0:
                    inv[a] = b
        if any(v is None for v in inv):
            raise GroupError("missing inverses")
        for a in range(n):
            for b in range(n):
                tab = tbl[a][b]
                for c in range(n):
                    if tbl[tab][c] != tbl[a][tbl[b][c]]:
                        raise GroupError(
                            f"associativity fails at ({a},{b},{c})")
        self.order = n
        self.table = tbl
        self.inv = tuple(inv)
        self.label = label
        self._subgroups: Optional[tuple[Subgroup, ...]] = None
        self._classes: Optional[ConjClassTable] = None
        self._closure_cache: dict[frozenset[int], tuple[int, ...]] = {}

    # -- element arithmetic -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conj_elt(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        return self.table[self.table[self.inv[g]][x]][g]

    def elt_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"

    # -- subgroups -----------------------------------------------------------

    def closure(self, gens: Iterable[int]) -> tuple[int, ...]:
        key = frozenset(gens) | {0}
        cached = self._closure_cache.get(key)
        if cached is not None:
            return cached
        elems = set(key)
        frontier = list(elems)
        while frontier:
            new = []
            for a in frontier:
                for b in list(elems):
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in elems:
                            elems.add(c)
                            new.append(c)
            frontier = new
        result = tuple(sorted(elems))
        self._closure_cache[key] = result
        return result

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        elems = tuple(sorted(set(elements)))
        if not elems or elems[0] != 0:
            raise GroupError("subgroup must contain the identity")
        eset = set(elems)
        for a in elems:
            if self.inv[a] not in eset:
                raise GroupError("subgroup not closed under inverse")
            for b in elems:
                if self.table[a][b] not in eset:
                    raise GroupError("subgroup not closed under product")
        return Subgroup(self, elems)

    def generated(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.closure(gens))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def all_subgroups(self, bound: int = DEFAULT_SUBGROUP_BOUND) -> tuple["Subgroup", ...]:
        """All subgroups, by breadth-first closure over added generators."""
        if self.order > bound:
            raise BoundExceeded(
                f"|G|={self.order} exceeds subgroup enumeration bound {bound}")
        if self._subgroups is not None:
            return self._subgroups
        seen = {(0,): None}
        frontier = [(0,)]
        while frontier:
            new = []
            for elems in frontier:
                for g in range(1, self.order):
                    if g in elems:
                        continue
                    clo = self.closure(set(elems) | {g})
                    if clo not in seen:
                        seen[clo] = None
                        new.append(clo)
            frontier = new
        subs = tuple(Subgroup(self, e) for e in sorted(seen, key=_sub_key))
        self._subgroups = subs
        return subs

    def conj_classes(self, bound: int = DEFAULT_SUBGROUP_BOUND) -> "ConjClassTable":
        if self._classes is None:
            self._classes = ConjClassTable.build(self, bound)
        return self._classes


def _sub_key(elems: tuple[int, ...]) -> tuple:
    return (len(elems), elems)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, stored as the sorted tuple of its element indices."""

    group: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set()

    def _set(self) -> frozenset[int]:
        s = self.__dict__.get("_eset")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_eset", s)
        return s

    def __le__(self, other: "Subgroup") -> bool:
        return self._set() <= other._set()

    def __lt__(self, other: "Subgroup") -> bool:
        return self._set() < other._set()

    def conjugate(self, g: int) -> "Subgroup":
        """H^g = g^-1 H g."""
        G = self.group
        return Subgroup(G, tuple(sorted(G.conj_elt(x, g) for x in self.elements)))

    def is_normal(self) -> bool:
        return all(self.conjugate(g) == self for g in self.group.elements())

    def sort_key(self) -> tuple:
        return (self.order, self.elements)

    def __repr__(self) -> str:
        return f"Sub{list(self.elements)}"

    # hash/eq: dataclass equality on (group, elements); FiniteGroup compares
    # by identity, which is what we want.
    def __hash__(self) -> int:
        return hash((id(self.group), self.elements))


# -- cosets and double cosets ---------------------------------------------


def left_coset_reps(G: FiniteGroup, K: Subgroup) -> tuple[int, ...]:
    """Minimal representatives of the cosets gK, in increasing order."""
    seen = set()
    reps = []
    for g in G.elements():
        r = min(G.mul(g, k) for k in K.elements)
        if r not in seen:
            seen.add(r)
            reps.append(r)
    return tuple(sorted(reps))


def coset_rep(G: FiniteGroup, g: int, K: Subgroup) -> int:
    """Minimal element of gK."""
    return min(G.mul(g, k) for k in K.elements)


@dataclass(frozen=True)
class DoubleCosets:
    """The partition of G into double cosets H g K."""

    group: FiniteGroup
    left: Subgroup
    right: Subgroup
    reps: tuple[int, ...]
    rep_of: tuple[int, ...]  # element index -> canonical rep of its coset

    @staticmethod
    def build(G: FiniteGroup, H: Subgroup, K: Subgroup) -> "DoubleCosets":
        rep_of = [-1] * G.order
        reps = []
        for g in G.elements():
            if rep_of[g] >= 0:
                continue
            coset = sorted(
                {G.mul(G.mul(h, g), k) for h in H.elements for k in K.elements})
            r = coset[0]
            reps.append(r)
            for x in coset:
                rep_of[x] = r
        return DoubleCosets(G, H, K, tuple(sorted(reps)), tuple(rep_of))

    def coset_elements(self, rep: int) -> tuple[int, ...]:
        return tuple(g for g in self.group.elements() if self.rep_of[g] == rep)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(self.coset_elements(r)) for r in self.reps)


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> DoubleCosets:
    cache = G.__dict__.setdefault("_dcoset_cache", {})
    key = (H.elements, K.elements)
    dc = cache.get(key)
    if dc is None:
        dc = DoubleCosets.build(G, H, K)
        cache[key] = dc
    return dc


def double_cosets_in(N: Subgroup, A: Subgroup, B: Subgroup) -> tuple[int, ...]:
    """Representatives (minimal) of A\\N/B for A, B <= N, inside the ambient group."""
    G = N.group
    seen = set()
    reps = []
    for g in N.elements:
        if g in seen:
            continue
        coset = {G.mul(G.mul(a, g), b) for a in A.elements for b in B.elements}
        reps.append(min(coset))
        seen |= coset
    return tuple(sorted(reps))


# -- normalizers, Weyl groups ----------------------------------------------


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    elems = [g for g in G.elements() if H.conjugate(g) == H]
    return Subgroup(G, tuple(sorted(elems)))


@dataclass(frozen=True)
class WeylGroup:
    """N_G(H)/H as a FiniteGroup, with the projection from N_G(H)."""

    group: FiniteGroup          # the quotient N/H
    normalizer: Subgroup
    subgroup: Subgroup
    coset_reps: tuple[int, ...]          # minimal rep per coset, identity first
    projection: dict[int, int]           # element of N -> index in quotient


def weyl_group(G: FiniteGroup, H: Subgroup) -> WeylGroup:
    cache = G.__dict__.setdefault("_weyl_cache", {})
    got = cache.get(H.elements)
    if got is not None:
        return got
    N = normalizer(G, H)
    reps = []
    proj = {}
    for n in N.elements:
        if n in proj:
            continue
        coset = sorted(G.mul(n, h) for h in H.elements)
        idx = len(reps)
        reps.append(coset[0])
        for x in coset:
            proj[x] = idx
    # sort cosets by minimal representative; identity coset contains 0
    order = sorted(range(len(reps)), key=lambda i: reps[i])
    relabel = {old: new for new, old in enumerate(order)}
    reps = tuple(reps[i] for i in order)
    proj = {x: relabel[i] for x, i in proj.items()}
    table = [[0] * len(reps) for _ in reps]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            table[i][j] = proj[G.mul(a, b)]
    W = FiniteGroup(table, label=f"W({H.elements})")
    result = WeylGroup(W, N, H, reps, proj)
    cache[H.elements] = result
    return result


# -- conjugacy classes of subgroups -----------------------------------------


@dataclass(frozen=True)
class SubgroupClass:
    rep: Subgroup
    members: tuple[Subgroup, ...]


@dataclass(frozen=True)
class ConjClassTable:
    """Conjugacy classes of all subgroups, with the subconjugacy order."""

    group: FiniteGroup
    classes: tuple[SubgroupClass, ...]
    rep_index: dict[tuple[int, ...], int] = field(hash=False, compare=False,
                                                  default_factory=dict)

    @staticmethod
    def build(G: FiniteGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> "ConjClassTable":
        subs = G.all_subgroups(bound)
        remaining = {s.elements: s for s in subs}
        classes = []
        for s in subs:
            if s.elements not in remaining:
                continue
            orbit = {}
            for g in G.elements():
                c = s.conjugate(g)
                orbit[c.elements] = c
            members = tuple(sorted(orbit.values(), key=lambda t: t.sort_key()))
            rep = members[0]
            for m in members:
                remaining.pop(m.elements, None)
            classes.append(SubgroupClass(rep, members))
        classes.sort(key=lambda c: c.rep.sort_key())
        table = ConjClassTable(G, tuple(classes))
        for i, c in enumerate(classes):
            for m in c.members:
                table.rep_index[m.elements] = i
        return table

    def class_of(self, H: Subgroup) -> int:
        return self.rep_index[H.elements]

    def rep_of(self, H: Subgroup) -> Subgroup:
        return self.classes[self.class_of(H)].rep

    def reps(self) -> tuple[Subgroup, ...]:
        return tuple(c.rep for c in self.classes)

    def subconjugate(self, H: Subgroup, K: Subgroup) -> bool:
        """H is subconjugate to K: some conjugate of H lies in K."""
        G = self.group
        if H.order > K.order:
            return False
        return any(H.conjugate(g) <= K for g in G.elements())


def conjugator(G: FiniteGroup, H: Subgroup) -> int:
    """Minimal g with H^g equal to the canonical class representative."""
    cache = G.__dict__.setdefault("_conjugator_cache", {})
    got = cache.get(H.elements)
    if got is not None:
        return got
    table = G.conj_classes()
    rep = table.rep_of(H)
    for g in G.elements():
        if H.conjugate(g) == rep:
            cache[H.elements] = g
            return g
    raise GroupError("no conjugator found")  # unreachable


def subgroups_of(G: FiniteGroup, N: Subgroup) -> tuple[Subgroup, ...]:
    """All subgroups of G contained in N."""
    cache = G.__dict__.setdefault("_subsof_cache", {})
    got = cache.get(N.elements)
    if got is None:
        nset = set(N.elements)
        got = tuple(s for s in G.all_subgroups()
                    if set(s.elements) <= nset)
        cache[N.elements] = got
    return got


def subgroup_classes_under(G: FiniteGroup, N: Subgroup) -> tuple[Subgroup, ...]:
    """Representatives of the N-conjugacy classes of subgroups of N.

    Each representative is minimal (by sorted element tuple) in its orbit.
    """
    cache = G.__dict__.setdefault("_subclass_cache", {})
    got = cache.get(N.elements)
    if got is not None:
        return got
    remaining = {s.elements: s for s in subgroups_of(G, N)}
    reps = []
    for elems in sorted(remaining, key=_sub_key):
        if elems not in remaining:
            continue
        s = remaining[elems]
        orbit = {s.conjugate(n).elements for n in N.elements}
        rep = min(orbit, key=_sub_key)
        reps.append(Subgroup(G, rep))
        for o in orbit:
            remaining.pop(o, None)
    result = tuple(sorted(reps, key=lambda s: s.sort_key()))
    cache[N.elements] = result
    return result


def minimal_conjugate_under(G: FiniteGroup, L: Subgroup, N: Subgroup) -> Subgroup:
    """The minimal member of the orbit {L^n : n in N}."""
    best = min((L.conjugate(n).elements for n in N.elements), key=_sub_key)
    return Subgroup(G, best)


# -- Sylow subgroups, chain length ------------------------------------------


def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def is_prime_power(n: int) -> bool:
    return n > 1 and len(prime_factors(n)) == 1


def sylow(G: FiniteGroup, H: Subgroup, p: int) -> Subgroup:
    """A Sylow p-subgroup of H; the minimal canonical one among candidates."""
    target = 1
    n = H.order
    while n % p == 0:
        target *= p
        n //= p
    candidates = [s for s in subgroups_of(G, H) if s.order == target]
    return min(candidates, key=lambda s: s.sort_key())


def chain_length(G: FiniteGroup, H: Subgroup) -> int:
    """Length of the longest strictly ascending subgroup chain 1 < ... < H."""
    subs = subgroups_of(G, H)
    best = {s.elements: 0 for s in subs}
    for s in sorted(subs, key=lambda t: t.sort_key()):
        for t in subs:
            if s.order < t.order and s < t:
                best[t.elements] = max(best[t.elements], best[s.elements] + 1)
    return best[H.elements]


# -- families ----------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """A conjugation- and subgroup-closed family, as canonical class reps."""

    group: FiniteGroup
    class_reps: tuple[Subgroup, ...]
    kind: str

    def objects(self) -> tuple[Subgroup, ...]:
        return self.class_reps

    def contains(self, H: Subgroup) -> bool:
        rep = self.group.conj_classes().rep_of(H)
        return rep in set(self.class_reps)

    def terminal(self) -> Subgroup:
        return self.group.full_subgroup()

    def has_terminal_object(self) -> bool:
        return self.contains(self.group.full_subgroup())

    def __repr__(self) -> str:
        return f"Family({self.kind}, {len(self.class_reps)} classes)"


def make_family(G: FiniteGroup, kind: str,
                generated_by: Sequence[Subgroup] = ()) -> Family:
    """Build a family: 'all', 'trivial', 'p-subgroups(p)', 'prime-power',
    or 'generated-by' (downward closure of the given subgroups)."""
    table = G.conj_classes()
    reps = table.reps()
    if kind == "all":
        chosen = list(reps)
    elif kind == "trivial":
        chosen = [G.trivial_subgroup()]
    elif kind.startswith("p-subgroups(") and kind.endswith(")"):
        p = int(kind[len("p-subgroups("):-1])
        chosen = [r for r in reps if r.order == 1 or
                  (is_prime_power(r.order) and r.order % p == 0)]
    elif kind == "prime-power":
        chosen = [r for r in reps if r.order == 1 or is_prime_power(r.order)]
    elif kind == "generated-by":
        want = set()
        for H in generated_by:
            if not H <= G.full_subgroup():
                raise GroupError("generated-by member is not a subgroup of G")
            for s in subgroups_of(G, H):
                want.add(table.rep_of(s))
        want.add(G.trivial_subgroup())
        chosen = [r for r in reps if r in want]
    else:
        raise GroupError(f"unknown family kind: {kind!r}")
    # downward closure under subconjugacy
    chosen_set = {c.elements for c in chosen}
    changed = True
    while changed:
        changed = False
        for r in reps:
            if r.elements in chosen_set:
                continue
            if any(c.elements in chosen_set and table.subconjugate(r, c)
                   for c in reps):
                for c in chosen:
                    if table.subconjugate(r, c):
                        chosen_set.add(r.elements)
                        changed = True
                        break
    chosen = [r for r in reps if r.elements in chosen_set]
    chosen.sort(key=lambda s: s.sort_key())
    return Family(G, tuple(chosen), kind)


def p_power_subfamily(F: Family, ring_kind: str, p: Optional[int]) -> Family:
    """The reduction target family: q-subgroups for F_q / Z_(q), all
    prime-power subgroups for Z, the trivial family in characteristic 0."""
    G = F.group
    if ring_kind in ("Fp", "Zloc"):
        reps = [r for r in F.class_reps if r.order == 1 or
                (is_prime_power(r.order) and r.order % p == 0)]
    elif ring_kind == "Z":
        reps = [r for r in F.class_reps if r.order == 1 or is_prime_power(r.order)]
    elif ring_kind == "Q":
        reps = [G.trivial_subgroup()]
    else:
        raise GroupError(f"no reduction family for ring kind {ring_kind!r}")
    return Family(G, tuple(reps), f"reduction({ring_kind})")


# -- catalog -----------------------------------------------------------------


def _cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _perm_group_table(perms: list[tuple[int, ...]]) -> list[list[int]]:
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            # left-to-right: (p then q)(i) = q[p[i]]
            row.append(index[tuple(q[p[i]] for i in range(len(p)))])
        table.append(row)
    return table


def _symmetric(n: int) -> list[list[int]]:
    perms = sorted(itertools.permutations(range(n)))
    return _perm_group_table(perms)


def _parity(p: tuple[int, ...]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p))
              if p[i] > p[j])
    return inv % 2


def _alternating(n: int) -> list[list[int]]:
    perms = sorted(q for q in itertools.permutations(range(n)) if _parity(q) == 0)
    return _perm_group_table(perms)


def _dihedral(n: int) -> list[list[int]]:
    # elements r^i f^s, index i + n*s; r^i f^s * r^j f^t = r^(i+(-1)^s j) f^(s+t)
    def idx(i, s):
        return i % n + n * (s % 2)
    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for s in range(2):
            for j in range(n):
                for t in range(2):
                    k = (i + j) % n if s == 0 else (i - j) % n
                    table[idx(i, s)][idx(j, t)] = idx(k, (s + t) % 2)
    return table


def _quaternion8() -> list[list[int]]:
    # 0:1, 1:i, 2:j, 3:k, 4:-1, 5:-i, 6:-j, 7:-k
    base = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    def mul(a, b):
        sa, sb = a >= 4, b >= 4
        ua, ub = a % 4, b % 4
        u, s = base[(ua, ub)]
        sign = (sa + sb + s) % 2
        return u + 4 * sign
    return [[mul(a, b) for b in range(8)] for a in range(8)]


def _product(ta: list[list[int]], tb: list[list[int]]) -> list[list[int]]:
    na, nb = len(ta), len(tb)
    def idx(a, b):
        return a * nb + b
    table = [[0] * (na * nb) for _ in range(na * nb)]
    for a in range(na):
        for b in range(nb):
            for c in range(na):
                for d in range(nb):
                    table[idx(a, b)][idx(c, d)] = idx(ta[a][c], tb[b][d])
    return table


def _catalog_table(name: str) -> list[list[int]]:
    name = name.strip()
    if "x" in name:
        parts = name.split("x")
        table = _catalog_table(parts[0])
        for part in parts[1:]:
            table = _product(table, _catalog_table(part))
        return table
    if name.startswith("C") and name[1:].isdigit():
        n = int(name[1:])
        if n < 1:
            raise GroupError("Cn requires n >= 1")
        return _cyclic_table(n)
    if name.startswith("D") and name[1:].isdigit():
        n = int(name[1:])
        if n < 1:
            raise GroupError("Dn requires n >= 1")
        return _dihedral(n)
    if name.startswith("S") and name[1:].isdigit():
        n = int(name[1:])
        if not 1 <= n <= 4:
            raise GroupError("Sn catalog covers n <= 4")
        return _symmetric(n)
    if name.startswith("A") and name[1:].isdigit():
        n = int(name[1:])
        if not 1 <= n <= 4:
            raise GroupError("An catalog covers n <= 4")
        return _alternating(n)
    if name == "Q8":
        return _quaternion8()
    raise GroupError(f"unknown catalog group: {name!r}")


CATALOG_NAMES = ("C1", "C2", "C3", "C4", "C5", "C6", "C8", "C12",
                 "D2", "D3", "D4", "D6",
                 "S2", "S3", "S4", "A3", "A4", "Q8")


def parse_cayley_file(text: str) -> list[list[int]]:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise GroupError("empty Cayley file")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise GroupError(f"expected {n} table rows, found {len(lines) - 1}")
    return [[int(x) for x in ln.split()] for ln in lines[1:]]


def build_group(spec: str) -> FiniteGroup:
    """Build a group from a catalog name (Cn, Dn, Sn, An, Q8, AxB products)
    or from '@path' pointing to a Cayley-table file."""
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            return FiniteGroup(parse_cayley_file(fh.read()), label=spec[1:])
    return FiniteGroup(_catalog_table(spec), label=spec)


@lru_cache(maxsize=None)
def catalog_group(name: str) -> FiniteGroup:
    """Cached build_group for catalog names (groups are immutable)."""
    return build_group(name)
