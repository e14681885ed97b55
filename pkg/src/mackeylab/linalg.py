"""Exact linear algebra over Z, F_p, Z_(p), and Q, plus finitely presented
modules over these rings.

Matrices are immutable tuples of row tuples with an explicit column count
(so zero-row matrices keep their shape).  Elements act as row vectors and
maps compose left to right: the matrix of ``g o f`` is ``mat(f) @ mat(g)``.

Scalars: Python ints for Z and F_p (residues in 0..p-1), ``fractions.Fraction``
for Q and Z_(p) (denominators coprime to p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[int, Fraction]


class LinAlgError(ValueError):
    pass


# -- rings --------------------------------------------------------------------


@dataclass(frozen=True)
class RingSpec:
    """One of Z, F_p, Z_(p), Q."""

    kind: str                 # "Z" | "Fp" | "Zloc" | "Q"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind in ("Fp", "Zloc"):
            if self.p is None or self.p < 2 or not _is_prime(self.p):
                raise LinAlgError(f"{self.kind} requires a prime p")
        elif self.kind not in ("Z", "Q"):
            raise LinAlgError(f"unknown ring kind {self.kind!r}")

    @property
    def is_field(self) -> bool:
        return self.kind in ("Fp", "Q")

    def of(self, x: Scalar) -> Scalar:
        """Coerce an int or Fraction into a normalized scalar of this ring."""
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise LinAlgError(f"{x} is not an integer")
                return int(x)
            return int(x)
        if self.kind == "Fp":
            if isinstance(x, Fraction):
                den = x.denominator % self.p
                if den == 0:
                    raise LinAlgError(f"{x} has denominator divisible by {self.p}")
                return (x.numerator * pow(den, -1, self.p)) % self.p
            return int(x) % self.p
        # Q and Z_(p): fractions
        f = Fraction(x)
        if self.kind == "Zloc" and f.denominator % self.p == 0:
            raise LinAlgError(f"{f} is not in Z_({self.p})")
        return f

    def zero(self) -> Scalar:
        return 0 if self.kind in ("Z", "Fp") else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.kind in ("Z", "Fp") else Fraction(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        s = a + b
        return s % self.p if self.kind == "Fp" else s

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        s = a - b
        return s % self.p if self.kind == "Fp" else s

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        s = a * b
        return s % self.p if self.kind == "Fp" else s

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.kind == "Fp" else -a

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def is_unit(self, a: Scalar) -> bool:
        if a == 0:
            return False
        if self.kind == "Z":
            return a in (1, -1)
        if self.kind == "Zloc":
            return Fraction(a).numerator % self.p != 0
        return True

    def inv(self, a: Scalar) -> Scalar:
        if not self.is_unit(a):
            raise LinAlgError(f"{a} is not a unit in {self}")
        if self.kind == "Fp":
            return pow(int(a), -1, self.p)
        if self.kind == "Z":
            return a
        return Fraction(1) / Fraction(a)

    def to_str(self, a: Scalar) -> str:
        return str(a)

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "Q":
            return "Q"
        if self.kind == "Fp":
            return f"F{self.p}"
        return f"Z({self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


ZZ = RingSpec("Z")
QQ = RingSpec("Q")


def GF(p: int) -> RingSpec:
    return RingSpec("Fp", p)


def Zloc(p: int) -> RingSpec:
    return RingSpec("Zloc", p)


def parse_ring(text: str) -> RingSpec:
    t = text.strip().replace("_", "")
    if t in ("Z", "ZZ"):
        return ZZ
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("F") and t[1:].isdigit():
        return GF(int(t[1:]))
    if t.startswith("Z(") and t.endswith(")"):
        return Zloc(int(t[2:-1]))
    if t.startswith("Zloc") and t[4:].isdigit():
        return Zloc(int(t[4:]))
    raise LinAlgError(f"cannot parse ring {text!r}")


# -- matrices ------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    rows: tuple[tuple[Scalar, ...], ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.rows[i]

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"


def mat(rows: Iterable[Iterable[Scalar]], ncols: Optional[int] = None,
        ring: Optional[RingSpec] = None) -> Matrix:
    rs = tuple(tuple(r) for r in rows)
    if ring is not None:
        rs = tuple(tuple(ring.of(x) for x in r) for r in rs)
    if ncols is None:
        if not rs:
            raise LinAlgError("ncols required for empty matrix")
        ncols = len(rs[0])
    for r in rs:
        if len(r) != ncols:
            raise LinAlgError("ragged rows")
    return Matrix(rs, ncols)


def zeros(ring: RingSpec, nrows: int, ncols: int) -> Matrix:
    z = ring.zero()
    return Matrix(tuple((z,) * ncols for _ in range(nrows)), ncols)


def identity(ring: RingSpec, n: int) -> Matrix:
    z, o = ring.zero(), ring.one()
    return Matrix(tuple(tuple(o if i == j else z for j in range(n))
                        for i in range(n)), n)


def mat_mul(ring: RingSpec, A: Matrix, B: Matrix) -> Matrix:
    if A.ncols != B.nrows:
        raise LinAlgError(f"shape mismatch {A.nrows}x{A.ncols} @ {B.nrows}x{B.ncols}")
    Bc = B.rows
    out = []
    for arow in A.rows:
        acc = [ring.zero()] * B.ncols
        for k, a in enumerate(arow):
            if a == 0:
                continue
            brow = Bc[k]
            for j, b in enumerate(brow):
                if b != 0:
                    acc[j] = acc[j] + a * b
        if ring.kind == "Fp":
            acc = [x % ring.p for x in acc]
        out.append(tuple(acc))
    return Matrix(tuple(out), B.ncols)


def mat_add(ring: RingSpec, A: Matrix, B: Matrix) -> Matrix:
    if (A.nrows, A.ncols) != (B.nrows, B.ncols):
        raise LinAlgError("shape mismatch in add")
    return Matrix(tuple(tuple(ring.add(a, b) for a, b in zip(ra, rb))
                        for ra, rb in zip(A.rows, B.rows)), A.ncols)


def mat_scale(ring: RingSpec, c: Scalar, A: Matrix) -> Matrix:
    return Matrix(tuple(tuple(ring.mul(c, x) for x in r) for r in A.rows), A.ncols)


def mat_sub(ring: RingSpec, A: Matrix, B: Matrix) -> Matrix:
    return mat_add(ring, A, mat_scale(ring, ring.neg(ring.one()), B))


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return A.ncols == B.ncols and A.rows == B.rows


def stack(ring: RingSpec, mats: Sequence[Matrix], ncols: Optional[int] = None) -> Matrix:
    mats = [m for m in mats]
    if ncols is None:
        ncols = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise LinAlgError("stack: column mismatch")
        rows.extend(m.rows)
    return Matrix(tuple(rows), ncols)


def hstack(ring: RingSpec, A: Matrix, B: Matrix) -> Matrix:
    if A.nrows != B.nrows:
        raise LinAlgError("hstack: row mismatch")
    return Matrix(tuple(ra + rb for ra, rb in zip(A.rows, B.rows)),
                  A.ncols + B.ncols)


def transpose(A: Matrix) -> Matrix:
    return Matrix(tuple(tuple(A.rows[i][j] for i in range(A.nrows))
                        for j in range(A.ncols)), A.nrows)


def block_diag(ring: RingSpec, mats: Sequence[Matrix]) -> Matrix:
    total_cols = sum(m.ncols for m in mats)
    rows = []
    offset = 0
    z = ring.zero()
    for m in mats:
        for r in m.rows:
            rows.append((z,) * offset + r + (z,) * (total_cols - offset - m.ncols))
        offset += m.ncols
    return Matrix(tuple(rows), total_cols)


def is_zero_matrix(A: Matrix) -> bool:
    return all(x == 0 for r in A.rows for x in r)


# -- integer echelon (Hermite-style) with transform ----------------------------


def _int_row_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Integer row echelon via extended-gcd row ops.

    Returns (H, U, pivots) with U unimodular, U*A = H, H in echelon form with
    positive pivots and reduced entries above each pivot.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    H = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        # gcd-out column c below row r
        nz = [i for i in range(r, m) if H[i][c] != 0]
        if not nz:
            continue
        # move a nonzero row (smallest |pivot|, ties by position) to r
        i0 = min(nz, key=lambda i: (abs(H[i][c]), i))
        if i0 != r:
            H[r], H[i0] = H[i0], H[r]
            U[r], U[i0] = U[i0], U[r]
        while True:
            nz = [i for i in range(r + 1, m) if H[i][c] != 0]
            if not nz:
                break
            for i in nz:
                q = H[i][c] // H[r][c]
                if q:
                    for j in range(n):
                        H[i][j] -= q * H[r][j]
                    for j in range(m):
                        U[i][j] -= q * U[r][j]
                if H[i][c] != 0 and abs(H[i][c]) < abs(H[r][c]):
                    H[r], H[i] = H[i], H[r]
                    U[r], U[i] = U[i], U[r]
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        # reduce entries above the pivot
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                for j in range(n):
                    H[i][j] -= q * H[r][j]
                for j in range(m):
                    U[i][j] -= q * U[r][j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return H, U, pivots


def _field_row_echelon(ring: RingSpec, rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[list[Scalar]], list[int]]:
    """Reduced row echelon with transform over a field: U*A = H."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    H = [[ring.of(x) for x in r] for r in rows]
    U = [[ring.one() if i == j else ring.zero() for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if H[i][c] != 0), None)
        if piv is None:
            continue
        H[r], H[piv] = H[piv], H[r]
        U[r], U[piv] = U[piv], U[r]
        inv = ring.inv(H[r][c])
        H[r] = [ring.mul(inv, x) for x in H[r]]
        U[r] = [ring.mul(inv, x) for x in U[r]]
        for i in range(m):
            if i != r and H[i][c] != 0:
                f = H[i][c]
                H[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(H[i], H[r])]
                U[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return H, U, pivots


def _scale_to_int(A: Matrix) -> tuple[list[list[int]], int]:
    """Multiply a Fraction matrix by the lcm of denominators; returns (B, c)
    with B = c*A integer."""
    c = 1
    for r in A.rows:
        for x in r:
            d = Fraction(x).denominator
            c = c * d // _gcd(c, d)
    B = [[int(Fraction(x) * c) for x in r] for r in A.rows]
    return B, c


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def bezout_coefficients(values: Sequence[int]) -> list[int]:
    """Integers z_i with sum(z_i * values[i]) = gcd(values)."""
    if not values:
        raise LinAlgError("empty Bezout input")
    zs = [1]
    g = values[0]
    for v in values[1:]:
        g2, x, y = xgcd(g, v)
        zs = [z * x for z in zs] + [y]
        g = g2
    return zs


# -- kernel / solve / span ------------------------------------------------------


def kernel_basis(ring: RingSpec, A: Matrix) -> Matrix:
    """Basis rows of {x : x A = 0}."""
    if A.nrows == 0:
        return Matrix((), 0)
    if ring.is_field:
        H, U, pivots = _field_row_echelon(ring, A.tolist())
        rank = len(pivots)
        rows = tuple(tuple(U[i]) for i in range(rank, A.nrows))
        return Matrix(rows, A.nrows)
    B, _ = _scale_to_int(A)
    H, U, pivots = _int_row_echelon(B)
    rank = len(pivots)
    rows = tuple(tuple(ring.of(x) for x in U[i]) for i in range(rank, A.nrows))
    return Matrix(rows, A.nrows)


def rank(ring: RingSpec, A: Matrix) -> int:
    if A.nrows == 0:
        return 0
    if ring.is_field:
        return len(_field_row_echelon(ring, A.tolist())[2])
    B, _ = _scale_to_int(A)
    return len(_int_row_echelon(B)[2])


def _solve_row_echelon(ring: RingSpec, H, U, pivots, b: Sequence[Scalar],
                       ncols: int) -> Optional[list[Scalar]]:
    """Solve z*H = b given echelon H with transform U*A = H; returns z*U."""
    m = len(H)
    z = [ring.zero()] * m
    cur = list(b)
    for i, c in enumerate(pivots):
        if cur[c] == 0:
            continue
        q = Fraction(cur[c]) / Fraction(H[i][c])
        if ring.kind == "Z":
            if q.denominator != 1:
                return None
            q = int(q)
        elif ring.kind == "Zloc":
            if q.denominator % ring.p == 0:
                return None
        elif ring.kind == "Fp":
            q = ring.of(q)
        z[i] = q
        for j in range(ncols):
            cur[j] = ring.sub(ring.of(cur[j]), ring.mul(q, ring.of(H[i][j])))
    if any(x != 0 for x in cur):
        return None
    # x = z * U
    x = [ring.zero()] * len(U[0])
    for i, zi in enumerate(z):
        if zi == 0:
            continue
        for j in range(len(U[0])):
            x[j] = ring.add(x[j], ring.mul(zi, ring.of(U[i][j])))
    return x


class _EchelonCache:
    """Echelon data of a matrix, reusable across many solves."""

    def __init__(self, ring: RingSpec, A: Matrix):
        self.ring = ring
        self.ncols = A.ncols
        self.nrows = A.nrows
        if A.nrows == 0:
            self.H, self.U, self.pivots = [], [], []
            self.scale = 1
        elif ring.is_field:
            self.H, self.U, self.pivots = _field_row_echelon(ring, A.tolist())
            self.scale = 1
        else:
            B, c = _scale_to_int(A)
            self.H, self.U, self.pivots = _int_row_echelon(B)
            self.scale = c   # H = U * (c*A)

    def solve_row(self, b: Sequence[Scalar]) -> Optional[list[Scalar]]:
        ring = self.ring
        if self.nrows == 0:
            return None if any(x != 0 for x in b) else []
        if ring.is_field:
            return _solve_row_echelon(ring, self.H, self.U, self.pivots, b, self.ncols)
        # integer echelon solves z*(cA) = c*b
        c = self.scale
        b2 = [Fraction(x) * c for x in b]
        if ring.kind == "Z":
            if any(x.denominator != 1 for x in b2):
                return None
            b2 = [int(x) for x in b2]
        x = _solve_row_echelon(ring, self.H, self.U, self.pivots, b2, self.ncols)
        if x is None:
            return None
        return [ring.of(v) for v in x]


def solve(ring: RingSpec, A: Matrix, B: Matrix) -> Optional[Matrix]:
    """X with X A = B, or None if no exact solution over the ring exists."""
    if A.ncols != B.ncols:
        raise LinAlgError("solve: column mismatch")
    ech = _EchelonCache(ring, A)
    rows = []
    for b in B.rows:
        x = ech.solve_row(b)
        if x is None:
            return None
        rows.append(tuple(x))
    return Matrix(tuple(rows), A.nrows)


def in_row_span(ring: RingSpec, A: Matrix, v: Sequence[Scalar]) -> bool:
    ech = _EchelonCache(ring, A if A.nrows else Matrix((), len(v)))
    if A.nrows == 0:
        return all(x == 0 for x in v)
    return ech.solve_row(v) is not None


def row_basis(ring: RingSpec, rows: Sequence[Sequence[Scalar]], ncols: int) -> Matrix:
    """Independent rows spanning the same row module (deterministic)."""
    rows = [tuple(r) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return Matrix((), ncols)
    A = mat(rows, ncols)
    if ring.is_field:
        H, _, pivots = _field_row_echelon(ring, A.tolist())
        return Matrix(tuple(tuple(H[i]) for i in range(len(pivots))), ncols)
    B, c = _scale_to_int(A)
    H, _, pivots = _int_row_echelon(B)
    out = tuple(tuple(ring.of(Fraction(x, c)) for x in H[i])
                for i in range(len(pivots)))
    return Matrix(out, ncols)


# -- Smith normal form -----------------------------------------------------------


def smith_normal_form(A: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """(S, U, V) with U A V = S diagonal, d_i | d_{i+1}, U, V unimodular.

    Integer matrices only.  Pivot choice: minimal absolute value, ties by
    position.
    """
    for r in A.rows:
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                raise LinAlgError("smith_normal_form requires integer entries")
    m, n = A.nrows, A.ncols
    S = [[int(x) for x in r] for r in A.rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        for j in range(n):
            S[dst][j] += q * S[src][j]
        for j in range(m):
            U[dst][j] += q * U[src][j]

    def addmul_col(dst, src, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # find pivot: minimal nonzero |entry| in S[t:, t:], ties by position
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0:
                    k = (abs(S[i][j]), i, j)
                    if best is None or k < best:
                        best = k
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    addmul_row(i, t, -q)
                    if S[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    addmul_col(j, t, -q)
                    if S[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        # enforce divisibility d_t | all later entries
        viol = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % S[t][t] != 0:
                    viol = i
                    break
            if viol is not None:
                break
        if viol is not None:
            addmul_row(t, viol, 1)
            continue
        t += 1
    Sm = Matrix(tuple(tuple(r) for r in S), n)
    Um = Matrix(tuple(tuple(r) for r in U), m)
    Vm = Matrix(tuple(tuple(r) for r in V), n)
    return Sm, Um, Vm


def snf_diagonal(A: Matrix) -> list[int]:
    """Just the nonzero diagonal invariant factors of an integer matrix."""
    S, _, _ = smith_normal_form(A)
    out = []
    for i in range(min(S.nrows, S.ncols)):
        if S[i, i] != 0:
            out.append(int(S[i, i]))
    return out


def det(ring: RingSpec, A: Matrix) -> Scalar:
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    if A.nrows != A.ncols:
        raise LinAlgError("det of non-square matrix")
    n = A.nrows
    M = [[Fraction(x) for x in r] for r in A.rows]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return ring.of(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        d *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] * inv
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return ring.of(d * sign)


def is_invertible(ring: RingSpec, A: Matrix) -> bool:
    if A.nrows != A.ncols:
        return False
    if A.nrows == 0:
        return True
    return ring.is_unit(det(ring, A))


def inverse_matrix(ring: RingSpec, A: Matrix) -> Matrix:
    X = solve(ring, A, identity(ring, A.nrows))
    if X is None or not mat_eq(mat_mul(ring, A, X), identity(ring, A.nrows)):
        raise LinAlgError("matrix is not invertible over the ring")
    return X


# -- presented modules ------------------------------------------------------------


@dataclass(frozen=True)
class PresentedModule:
    """Cokernel of the relation rows inside R^ngens."""

    ring: RingSpec
    ngens: int
    relations: Matrix

    @staticmethod
    def free(ring: RingSpec, n: int) -> "PresentedModule":
        return PresentedModule(ring, n, Matrix((), n))

    @staticmethod
    def zero(ring: RingSpec) -> "PresentedModule":
        return PresentedModule(ring, 0, Matrix((), 0))

    def invariant_factors(self) -> tuple[int, ...]:
        """Canonical form: torsion invariant factors (>1, divisibility chain)
        followed by one 0 per free summand.  Over a field every summand is
        free, so the result is (0,) * dim."""
        ring = self.ring
        if self.ngens == 0:
            return ()
        if self.relations.nrows == 0:
            return (0,) * self.ngens
        if ring.is_field:
            r = rank(ring, self.relations)
            return (0,) * (self.ngens - r)
        B, c = _scale_to_int(self.relations)
        ds = snf_diagonal(mat(B, self.relations.ncols))
        if ring.kind == "Zloc":
            p = ring.p
            out = []
            for d in ds:
                q = 1
                while d % p == 0:
                    q *= p
                    d //= p
                if q > 1:
                    out.append(q)
        else:
            out = [d for d in ds if d not in (1, -1)]
        free_rank = self.ngens - len(ds)
        return tuple(sorted(out)) + (0,) * free_rank

    def is_zero_module(self) -> bool:
        return len(self.invariant_factors()) == 0

    def reduce_row(self, v: Sequence[Scalar]) -> bool:
        """True if v is zero in the module (lies in the relation span)."""
        return in_row_span(self.ring, self.relations, list(v))

    def contains_in_relations(self, M: Matrix) -> bool:
        ech = _EchelonCache(self.ring, self.relations if self.relations.nrows
                            else Matrix((), self.ngens))
        for r in M.rows:
            if self.relations.nrows == 0:
                if any(x != 0 for x in r):
                    return False
            elif ech.solve_row(r) is None:
                return False
        return True


def rows_equal_mod(ring: RingSpec, A: Matrix, B: Matrix,
                   relations: Matrix) -> bool:
    """A == B rowwise modulo the row span of `relations`."""
    if (A.nrows, A.ncols) != (B.nrows, B.ncols):
        return False
    D = mat_sub(ring, A, B)
    if is_zero_matrix(D):
        return True
    if relations.nrows == 0:
        return False
    ech = _EchelonCache(ring, relations)
    return all(ech.solve_row(r) is not None for r in D.rows)


def subquotient(ring: RingSpec, span_rows: Matrix, sub_rows: Matrix) -> tuple[PresentedModule, Matrix]:
    """Present span(span_rows)/span(sub_rows); sub must lie inside span.

    Returns (module, basis) where `basis` rows in the ambient R^n represent
    the module generators.
    """
    n = span_rows.ncols
    G = row_basis(ring, span_rows.rows, n)
    if G.nrows == 0:
        return PresentedModule(ring, 0, Matrix((), 0)), G
    # relations: x with x*G in span(sub_rows):
    # kernel of [G ; sub] stacked, projected to the G block
    if sub_rows.nrows == 0:
        return PresentedModule(ring, G.nrows, Matrix((), G.nrows)), G
    stacked = stack(ring, [G, sub_rows], n)
    K = kernel_basis(ring, stacked)
    rel_rows = [r[:G.nrows] for r in K.rows]
    rel = row_basis(ring, rel_rows, G.nrows)
    return PresentedModule(ring, G.nrows, rel), G


def hom_presented(M: PresentedModule, N: PresentedModule) -> tuple[PresentedModule, list[Matrix]]:
    """The R-module Hom(M, N), with representative matrices for its generators.

    A hom is a (M.ngens x N.ngens) matrix X with relM @ X inside span(relN),
    modulo matrices whose rows all lie in span(relN).
    """
    ring = M.ring
    if ring != N.ring:
        raise LinAlgError("hom_presented: ring mismatch")
    gm, gn = M.ngens, N.ngens
    dim = gm * gn
    if dim == 0:
        return PresentedModule.zero(ring), []
    # solution space W: vec(X) with each relation row r: r @ X in span(relN)
    # unknowns: vec(X) (row-major), slack y per (relation, relN row)
    relM, relN = M.relations, N.relations
    rows_constraints = []   # build kernel system: [vecX | y] * C = 0 form
    # Instead solve directly: for each rel row r (k of them), constraint
    # r@X - y_r@relN = 0 in R^gn. Total unknowns dim + k*relN.nrows.
    k = relM.nrows
    s = relN.nrows
    nunk = dim + k * s
    # matrix A: nunk x (k * gn); kernel rows = solutions
    Arows = []
    for u in range(nunk):
        row = [ring.zero()] * (k * gn)
        if u < dim:
            i, j = divmod(u, gn)   # X[i][j]
            for t in range(k):
                c = relM[t, i]
                if c != 0:
                    row[t * gn + j] = ring.of(c)
        else:
            t, w = divmod(u - dim, s)   # y_t[w]
            for j in range(gn):
                c = relN[w, j]
                if c != 0:
                    row[t * gn + j] = ring.neg(ring.of(c))
        Arows.append(tuple(row))
    A = Matrix(tuple(Arows), k * gn)
    W = kernel_basis(ring, A)
    W_proj = Matrix(tuple(r[:dim] for r in W.rows), dim)
    # trivial homs: each row of X in span(relN): generated by e_i (x) relN rows
    triv_rows = []
    for i in range(gm):
        for w in range(s):
            row = [ring.zero()] * dim
            for j in range(gn):
                row[i * gn + j] = ring.of(relN[w, j])
            triv_rows.append(tuple(row))
    V = Matrix(tuple(triv_rows), dim)
    module, basis = subquotient(ring, W_proj, V)
    reps = [Matrix(tuple(tuple(b[i * gn + j] for j in range(gn))
                         for i in range(gm)), gn) for b in basis.rows]
    return module, reps


def homology_at(ring: RingSpec,
                d_out: Matrix, rel_out: Matrix,
                d_in: Matrix,
                rel_here: Matrix, ngens_here: int) -> PresentedModule:
    """Homology ker(d_out)/im(d_in) at a presented module R^g/rel_here.

    d_out: g x (next ngens), maps into a module with relations rel_out.
    d_in: rows are images of the previous module's generators (plus nothing).
    """
    # W = {x : x @ d_out in span(rel_out)}
    if d_out.ncols == 0:
        W = identity(ring, ngens_here)
    else:
        stacked = stack(ring, [d_out, rel_out], d_out.ncols) if rel_out.nrows \
            else d_out
        K = kernel_basis(ring, stacked)
        W = Matrix(tuple(r[:ngens_here] for r in K.rows), ngens_here)
    V = stack(ring, [m for m in (d_in, rel_here) if m.nrows],
              ngens_here) if (d_in.nrows or rel_here.nrows) else Matrix((), ngens_here)
    module, _ = subquotient(ring, W, V)
    return module
