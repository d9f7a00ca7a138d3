"""Exact integer and rational linear algebra.

Everything here works over Python ``int`` and :class:`fractions.Fraction`;
no floating point is ever used.  Matrices are immutable :class:`IntMat`
values, vectors are plain tuples of ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Rat = Fraction
IntVec = tuple  # tuple[int, ...]


class NotCompletable(ValueError):
    """The given vectors do not span a direct summand of the lattice."""


class NoSolution(ValueError):
    """Target vector is not in the rational span of the matrix columns."""


class Infeasible(ValueError):
    """No strictly positive combination exists.

    ``certificate`` is an integer vector ``y`` with ``y @ cols <= 0``
    componentwise, ``y @ target >= 0``, and at least one of those
    inequalities strict (see :func:`verify_farkas`).
    """

    def __init__(self, certificate: tuple, message: str = "no positive combination"):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class IntMat:
    """Dense integer matrix stored row-major as a tuple of row tuples."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        if not rows or not rows[0]:
            raise ValueError("IntMat must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "IntMat":
        return cls(tuple(zip(*cols)))

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "IntMat":
        return IntMat(tuple(zip(*self.entries)))

    def __matmul__(self, other):
        if isinstance(other, IntMat):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return IntMat(tuple(tuple(_dot(r, c) for c in cols) for r in self.entries))
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(vec)}")
        return tuple(_dot(r, vec) for r in self.entries)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.entries])

    def tolist(self) -> list:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SnfResult:
    s: IntMat
    u: IntMat
    v: IntMat
    diag: tuple

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


@dataclass(frozen=True)
class HnfResult:
    """Column-style Hermite form ``a @ u == h``.

    ``pivots`` lists ``(row, col)`` of the positive pivot entries; the
    columns of ``h`` past the last pivot are zero.
    """

    h: IntMat
    u: IntMat
    pivots: tuple

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _bareiss_det(m: list) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g


def xgcd(a: int, b: int) -> tuple:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def is_primitive(v: Sequence[int]) -> bool:
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitivity")
    return vec_gcd(v) == 1


def primitive_part(v: Sequence[int]) -> tuple:
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector")
    return tuple(x // g for x in v)


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------


def snf(a: IntMat) -> SnfResult:
    """Smith normal form with transforms: ``u @ a @ v == s``.

    Pivot: nonzero entry of least absolute value in the trailing block,
    first in row-major order on ties.
    """
    m, n = a.shape
    s = a.tolist()
    u = IntMat.identity(m).tolist()
    v = IntMat.identity(n).tolist()

    def row_sub(dst, src, q):
        if q:
            s[dst] = [x - q * y for x, y in zip(s[dst], s[src])]
            u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_sub(dst, src, q):
        if q:
            for r in s:
                r[dst] -= q * r[src]
            for r in v:
                r[dst] -= q * r[src]

    def swap_rows(i, j):
        if i != j:
            s[i], s[j] = s[j], s[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for r in s:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = s[t][t]
            for i in range(t + 1, m):
                row_sub(i, t, s[i][t] // p)
            for j in range(t + 1, n):
                col_sub(j, t, s[t][j] // p)
            if any(s[i][t] for i in range(t + 1, m)) or any(s[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_sub(t, bad, -1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        if s[t][t] == 0:
            break

    diag = tuple(s[i][i] for i in range(min(m, n)))
    return SnfResult(IntMat(s), IntMat(u), IntMat(v), diag)


def hnf(a: IntMat) -> HnfResult:
    """Column Hermite normal form: ``a @ u == h`` with ``u`` unimodular.

    ``h`` is in column echelon form; each pivot is positive and the entries
    to its left in the pivot row lie in ``[0, pivot)``.
    """
    m, n = a.shape
    h = a.tolist()
    u = IntMat.identity(n).tolist()

    def col_sub(dst, src, q):
        if q:
            for r in h:
                r[dst] -= q * r[src]
            for r in u:
                r[dst] -= q * r[src]

    def swap_cols(i, j):
        if i != j:
            for r in h:
                r[i], r[j] = r[j], r[i]
            for r in u:
                r[i], r[j] = r[j], r[i]

    pivots = []
    p = 0
    for i in range(m):
        if p == n:
            break
        found = False
        while True:
            nz = [j for j in range(p, n) if h[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(h[i][j]), j))
            swap_cols(p, j0)
            for j in range(p + 1, n):
                col_sub(j, p, h[i][j] // h[i][p])
            if all(h[i][j] == 0 for j in range(p + 1, n)):
                found = True
                break
        if not found:
            continue
        if h[i][p] < 0:
            for r in h:
                r[p] = -r[p]
            for r in u:
                r[p] = -r[p]
        for j in range(p):
            col_sub(j, p, h[i][j] // h[i][p])
        pivots.append((i, p))
        p += 1
    return HnfResult(IntMat(h), IntMat(u), tuple(pivots))


def reduce_mod_lattice(x: Sequence[int], basis: HnfResult) -> tuple:
    """Canonical representative of ``x`` modulo the column lattice of ``basis.h``.

    Each pivot coordinate of the result lies in ``[0, pivot)``.
    """
    x = list(x)
    h = basis.h
    for r, c in basis.pivots:
        q = x[r] // h[r, c]
        if q:
            x = [xi - q * hi for xi, hi in zip(x, h.col(c))]
    return tuple(x)


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


def kernel_lattice_basis(a: IntMat) -> list:
    """Basis of the saturated lattice ``{x in Z^cols : a @ x == 0}``.

    The basis is returned in canonical (column Hermite) form, so it depends
    only on the kernel lattice, not on the route used to find it.
    """
    res = hnf(a)
    n = a.ncols
    raw = [res.u.col(j) for j in range(res.rank, n)]
    if not raw:
        return []
    canon = hnf(IntMat.from_columns(raw))
    return [canon.h.col(j) for j in range(canon.rank)]


def _maximal_minors(cols: Sequence[Sequence[int]]) -> list:
    """Cofactors ``c`` with ``det[cols | w] == sum(c[i] * w[i])``."""
    size = len(cols[0])
    rows = list(zip(*cols))
    out = []
    for i in range(size):
        sub = [rows[r] for r in range(size) if r != i]
        minor = IntMat(sub).det() if sub else 1
        out.append((-1) ** (i + size - 1) * minor)
    return out


def complete_to_unimodular(vs: Sequence[Sequence[int]]) -> tuple:
    """Return ``eta`` with ``det[vs | eta] == +1``, canonically reduced.

    ``eta`` is unique up to adding vectors of the lattice spanned by ``vs``;
    the representative returned has its pivot coordinates (with respect to
    the Hermite form of that lattice) in ``[0, pivot)``.
    """
    vs = [tuple(v) for v in vs]
    if not vs:
        raise ValueError("need at least one vector")
    dim = len(vs[0])
    if len(vs) != dim - 1 or any(len(v) != dim for v in vs):
        raise ValueError(f"expected {dim - 1} vectors in Z^{dim}")
    m = IntMat.from_columns(vs)
    if any(d != 1 for d in snf(m).diag):
        raise NotCompletable(f"vectors {vs} do not extend to a basis of Z^{dim}")
    cof = _maximal_minors(vs)
    # extended gcd across the cofactors: sum(cof[i] * w[i]) == 1
    g, w = 0, [0] * dim
    for i, c in enumerate(cof):
        g2, x, y = xgcd(g, c)
        w = [wi * x for wi in w]
        w[i] += y
        g = g2
    if g != 1:
        raise NotCompletable("maximal minors are not coprime")
    eta = reduce_mod_lattice(w, hnf(m))
    assert IntMat.from_columns(vs + [eta]).det() == 1
    return eta


def solve_dilated(a: IntMat, y: Sequence[int]) -> tuple:
    """Least ``N >= 1`` with ``a @ x == N*y`` solvable over Z, plus such an ``x``.

    ``x`` is reduced modulo the kernel lattice of ``a``.
    """
    y = tuple(y)
    if len(y) != a.nrows:
        raise ValueError("dimension mismatch")
    res = snf(a)
    w = res.u @ y
    r = res.rank
    if any(w[i] for i in range(r, a.nrows)):
        raise NoSolution(f"{y} is not in the rational column span")
    big_n = 1
    for i in range(r):
        d = res.diag[i]
        big_n = math.lcm(big_n, d // math.gcd(d, w[i]))
    z = [big_n * w[i] // res.diag[i] for i in range(r)] + [0] * (a.ncols - r)
    x = res.v @ z
    ker = kernel_lattice_basis(a)
    if ker:
        x = reduce_mod_lattice(x, hnf(IntMat.from_columns(ker)))
    assert a @ x == tuple(big_n * c for c in y)
    return big_n, tuple(x)


def in_column_lattice(a: IntMat, x: Sequence[int]) -> bool:
    """Whether ``x`` is an integer combination of the columns of ``a``."""
    try:
        return solve_dilated(a, x)[0] == 1
    except NoSolution:
        return False


# ---------------------------------------------------------------------------
# exact rational linear algebra
# ---------------------------------------------------------------------------


def solve_rational(cols: Sequence[Sequence], target: Sequence) -> tuple:
    """Solve a square system ``[cols] @ x == target`` over Q."""
    n = len(cols)
    m = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return tuple(m[i][n] for i in range(n))


def rational_rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def _left_kernel_witness(cols: IntMat, target: Sequence) -> tuple | None:
    """A rational ``y`` with ``y @ cols == 0`` and ``y @ target != 0``, if any."""
    m, n = cols.shape
    aug = [
        [Fraction(x) for x in cols.row(i)] + [Fraction(target[i])] + [Fraction(int(i == k)) for k in range(m)]
        for i in range(m)
    ]
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        for i in range(m):
            if i != rank and aug[i][c] != 0:
                f = aug[i][c] / aug[rank][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        rank += 1
    for i in range(rank, m):
        if aug[i][n] != 0:
            y = aug[i][n + 1:]
            return y if aug[i][n] > 0 else [-x for x in y]
    return None


def _simplex_max(a_eq: list, b_eq: list, c: list):
    """Maximise ``c @ x`` subject to ``a_eq @ x == b_eq``, ``x >= 0``.

    Two-phase tableau simplex over Q with Bland's rule.  Returns
    ``(status, x, value)`` with status ``"optimal"``, ``"infeasible"`` or
    ``"unbounded"``.
    """
    m = len(a_eq)
    n = len(c)
    rows = []
    for i in range(m):
        r = [Fraction(x) for x in a_eq[i]]
        rhs = Fraction(b_eq[i])
        if rhs < 0:
            r = [-x for x in r]
            rhs = -rhs
        rows.append(r + [Fraction(int(i == k)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(pr, pc, obj):
        inv = 1 / rows[pr][pc]
        rows[pr] = [x * inv for x in rows[pr]]
        for i in range(len(rows)):
            if i != pr and rows[i][pc] != 0:
                f = rows[i][pc]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
        if obj[pc] != 0:
            f = obj[pc]
            obj[:] = [x - f * y for x, y in zip(obj, rows[pr])]
        basis[pr] = pc

    def run(obj, allowed):
        # obj holds reduced costs (maximisation) with obj[-1] == -value
        while True:
            enter = next((j for j in range(width) if allowed[j] and obj[j] > 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, r in enumerate(rows):
                if r[enter] > 0:
                    ratio = r[-1] / r[enter]
                    key = (ratio, basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            pivot(best[1], enter, obj)

    # phase 1: maximise -(sum of artificials)
    obj = [Fraction(0)] * n + [Fraction(-1)] * m + [Fraction(0)]
    for r in rows:
        obj = [x + y for x, y in zip(obj, r)]
    for k in range(m):
        obj[n + k] = Fraction(0)
    run(obj, [True] * width)
    if any(rows[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return "infeasible", None, None

    # drive zero-level artificials out of the basis; drop redundant rows
    dummy = [Fraction(0)] * (width + 1)
    i = 0
    while i < len(rows):
        if basis[i] >= n:
            j = next((j for j in range(n) if rows[i][j] != 0), None)
            if j is None:
                del rows[i]
                del basis[i]
                continue
            pivot(i, j, dummy)
        i += 1

    obj = [Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            obj = [x - f * y for x, y in zip(obj, rows[i])]
    status = run(obj, [j < n for j in range(width)])
    if status == "unbounded":
        return status, None, None
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        x[b] = rows[i][-1]
    return "optimal", x, sum(ci * xi for ci, xi in zip(c, x))


def _integral(v: Sequence[Fraction]) -> tuple:
    den = 1
    for x in v:
        den = math.lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = vec_gcd(ints) or 1
    return tuple(x // g for x in ints)


def verify_farkas(cols: IntMat, target: Sequence, y: Sequence) -> bool:
    """Check that ``y`` certifies that no ``a > 0`` solves ``cols @ a == target``."""
    yc = [sum(Fraction(y[i]) * cols[i, j] for i in range(cols.nrows)) for j in range(cols.ncols)]
    yt = sum(Fraction(yi) * Fraction(ti) for yi, ti in zip(y, target))
    if any(x > 0 for x in yc) or yt < 0:
        return False
    return yt > 0 or any(x != 0 for x in yc)


def positive_combination(cols: IntMat, target: Sequence) -> tuple:
    """Exact ``a`` with ``cols @ a == target`` and every ``a_j > 0``.

    Solves ``max t`` subject to ``cols @ a == target``, ``a_j >= t``,
    ``t <= 1``; a positive optimum yields the witness.  Raises
    :class:`Infeasible` with a verified Farkas certificate otherwise.
    """
    rows, d = cols.shape
    target = tuple(Fraction(x) for x in target)
    if len(target) != rows:
        raise ValueError(f"target has length {len(target)}, expected {rows}")

    y = _left_kernel_witness(cols, target)
    if y is not None:
        cert = _integral(y)
        assert verify_farkas(cols, target, cert)
        raise Infeasible(cert, "target is not in the column span")

    # variables: s_1..s_d, t_plus, t_minus, slack  with a = s + (t_plus - t_minus)
    colsum = [sum(cols.row(i)) for i in range(rows)]
    a_eq = [list(cols.row(i)) + [colsum[i], -colsum[i], 0] for i in range(rows)]
    a_eq.append([0] * d + [1, 0, 1])
    b_eq = list(target) + [1]
    c = [0] * d + [1, -1, 0]
    status, x, value = _simplex_max(a_eq, b_eq, c)
    assert status == "optimal"
    if value > 0:
        t = x[d] - x[d + 1]
        witness = tuple(x[j] + t for j in range(d))
        assert cols @ witness == target and min(witness) > 0
        return witness

    # dual: min target@y + sigma  s.t.  cols^T y = w >= 0, sum(w) + sigma = 1
    # variables: y_plus (rows), y_minus (rows), w (d), sigma
    a_dual = []
    for j in range(d):
        col = cols.col(j)
        a_dual.append(list(col) + [-v for v in col] + [-int(k == j) for k in range(d)] + [0])
    a_dual.append([0] * (2 * rows) + [1] * d + [1])
    b_dual = [0] * d + [1]
    c_dual = [-v for v in target] + list(target) + [0] * d + [-1]
    status, z, _ = _simplex_max(a_dual, b_dual, c_dual)
    assert status == "optimal"
    yv = [-(z[i] - z[rows + i]) for i in range(rows)]
    cert = _integral(yv)
    assert verify_farkas(cols, target, cert)
    raise Infeasible(cert)


def subsets(n: int, k: int):
    return combinations(range(n), k)
