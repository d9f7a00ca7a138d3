"""Moment cones: data model, goodness validation, edges and faces."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .exact import (
    Infeasible,
    IntMat,
    is_primitive,
    kernel_lattice_basis,
    positive_combination,
    rational_rank,
    snf,
    vec_gcd,
)


class InvalidCone(ValueError):
    """Malformed cone input (wrong shapes, zero or duplicate normals)."""


class GoodnessError(ValueError):
    """A condition of goodness fails; ``clause`` names which one."""

    clause = "goodness"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class NotPrimitive(GoodnessError):
    clause = "primitive normals"

    def __init__(self, j: int, normal):
        super().__init__(f"normal {j} = {list(normal)} is not primitive", facet=j)
        self.j = j


class NotStronglyConvex(GoodnessError):
    clause = "strong convexity (apex is the only codimension n+1 face)"

    def __init__(self, rank: int, dim: int):
        super().__init__(f"normals span a rank {rank} sublattice of Z^{dim}; the cone contains a line")


class RedundantNormal(GoodnessError):
    clause = "minimal normal set (condition (i))"

    def __init__(self, j: int):
        super().__init__(f"normal {j} does not cut out a facet", facet=j)
        self.j = j


class BadFaceCount(GoodnessError):
    clause = "face is cut by exactly k facets (condition (ii))"

    def __init__(self, face: "Face"):
        super().__init__(
            f"codimension {face.codim} face lies on {len(face.active)} facets {sorted(face.active)}",
            active=sorted(face.active),
        )
        self.face = face


class NotBasisExtendable(GoodnessError):
    clause = "face normals extend to a Z-basis (condition (ii))"

    def __init__(self, face: "Face", diag):
        super().__init__(
            f"normals of face {sorted(face.active)} have Smith diagonal {list(diag)}",
            active=sorted(face.active),
        )
        self.face = face


@dataclass(frozen=True)
class ConeSpec:
    """Cone ``{x : <x, nu_j> >= 0}`` given by inward integer normals."""

    ambient_dim: int
    normals: tuple
    name: str | None = None

    def __post_init__(self):
        normals = tuple(tuple(v) for v in self.normals)
        if self.ambient_dim < 2:
            raise InvalidCone("ambient dimension must be at least 2")
        for j, v in enumerate(normals):
            if len(v) != self.ambient_dim:
                raise InvalidCone(f"normal {j} has length {len(v)}, expected {self.ambient_dim}")
            if any(type(x) is not int for x in v):
                raise InvalidCone(f"normal {j} has non-integer entries")
            if not any(v):
                raise InvalidCone(f"normal {j} is zero")
        seen = {}
        for j, v in enumerate(normals):
            g = vec_gcd(v)
            key = tuple(x // g for x in v)
            if key in seen:
                raise InvalidCone(f"normals {seen[key]} and {j} are parallel")
            seen[key] = j
        object.__setattr__(self, "normals", normals)

    @property
    def d(self) -> int:
        return len(self.normals)

    @property
    def n(self) -> int:
        return self.ambient_dim - 1

    def beta(self) -> IntMat:
        return IntMat.from_columns(self.normals)

    def transformed(self, m: IntMat) -> "ConeSpec":
        """Apply ``m`` to every normal (the cone moves by ``m^{-T}``)."""
        return ConeSpec(self.ambient_dim, tuple(m @ v for v in self.normals), self.name)

    def to_json(self) -> dict:
        out = {"dimension": self.ambient_dim, "normals": [list(v) for v in self.normals]}
        if self.name is not None:
            out["name"] = self.name
        return out


@dataclass(frozen=True)
class Edge:
    id: int
    active: tuple
    generator: tuple


@dataclass(frozen=True)
class Face:
    active: frozenset
    codim: int
    generators: tuple


@dataclass(frozen=True)
class GoodCone:
    spec: ConeSpec
    beta: IntMat
    edges: tuple
    faces: tuple
    validation_report: tuple = field(default=())

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def d(self) -> int:
        return self.spec.d

    def normal(self, j: int) -> tuple:
        return self.spec.normals[j]


def _pairing(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _rays(spec: ConeSpec) -> list:
    """All extreme rays as ``(active set, primitive generator)``.

    Scans every n-subset of facets whose normals have rank n; the active
    set recorded is the full set of facets vanishing on the ray, which may
    exceed n for non-simple cones.
    """
    found = {}
    for sub in combinations(range(spec.d), spec.n):
        rows = IntMat([spec.normals[j] for j in sub])
        ker = kernel_lattice_basis(rows)
        if len(ker) != 1:
            continue
        u = ker[0]
        vals = [_pairing(u, nu) for nu in spec.normals]
        if all(x <= 0 for x in vals):
            u = tuple(-x for x in u)
            vals = [-x for x in vals]
        elif any(x < 0 for x in vals):
            continue
        active = tuple(j for j, x in enumerate(vals) if x == 0)
        found.setdefault(active, u)
    return sorted(found.items())


def enumerate_edges(spec: ConeSpec) -> list:
    """Edges cut out by exactly n facets, sorted by active set."""
    edges = []
    for active, u in _rays(spec):
        if len(active) == spec.n:
            edges.append(Edge(len(edges), active, u))
    return edges


def enumerate_faces(spec: ConeSpec) -> list:
    """Faces of codimension 1..n, built up from the extreme rays.

    The active set of a face is the intersection of the active sets of its
    rays; faces are listed by codimension, then by sorted active set.
    """
    rays = _rays(spec)
    closed = {frozenset(a) for a, _ in rays}
    frontier = set(closed)
    while frontier:
        new = set()
        for a in frontier:
            for b in closed:
                c = a & b
                if c and c not in closed:
                    new.add(c)
        closed |= new
        frontier = new
    faces = []
    for active in closed:
        gens = tuple(u for a, u in rays if active <= set(a))
        codim = spec.ambient_dim - rational_rank(gens)
        if 1 <= codim <= spec.n:
            faces.append(Face(active, codim, gens))
    faces.sort(key=lambda f: (f.codim, sorted(f.active)))
    return faces


def facet_is_exposed(spec: ConeSpec, j: int) -> bool:
    """Whether some x has ``<x, nu_j> == 0`` and ``<x, nu_i> > 0`` for i != j.

    Written as a strictly positive solution of a homogeneous system in
    ``(p, q, s)`` with ``x = p - q`` and slacks ``s_i = <x, nu_i>``.
    """
    others = [i for i in range(spec.d) if i != j]
    rows = []
    for i in others:
        nu = spec.normals[i]
        rows.append(list(nu) + [-x for x in nu] + [-int(k == i) for k in others])
    nu = spec.normals[j]
    rows.append(list(nu) + [-x for x in nu] + [0] * len(others))
    try:
        positive_combination(IntMat(rows), [0] * len(rows))
    except Infeasible:
        return False
    return True


def validate_good(spec: ConeSpec) -> GoodCone:
    """Check every goodness condition and return the validated cone."""
    report = []
    for j, nu in enumerate(spec.normals):
        if not is_primitive(nu):
            raise NotPrimitive(j, nu)
    report.append("primitive normals")

    rank = rational_rank(spec.normals)
    if rank < spec.ambient_dim:
        raise NotStronglyConvex(rank, spec.ambient_dim)
    report.append("strongly convex")

    for j in range(spec.d):
        if not facet_is_exposed(spec, j):
            raise RedundantNormal(j)
    report.append("minimal normal set")

    faces = enumerate_faces(spec)
    for face in faces:
        if len(face.active) != face.codim:
            raise BadFaceCount(face)
        m = IntMat.from_columns([spec.normals[j] for j in sorted(face.active)])
        diag = snf(m).diag
        if any(x != 1 for x in diag):
            raise NotBasisExtendable(face, diag)
    report.append("faces cut by k facets")
    report.append("face normals extend to Z-bases")

    edges = enumerate_edges(spec)
    if not edges:
        raise NotStronglyConvex(rank, spec.ambient_dim)
    return GoodCone(spec, spec.beta(), tuple(edges), tuple(faces), tuple(report))


# ---------------------------------------------------------------------------
# builtin families
# ---------------------------------------------------------------------------


def make_ck(k: int) -> ConeSpec:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return ConeSpec(3, ((1, 0, 1), (0, -1, 1), (0, k, 1), (-1, 2 * k - 1, 1)), f"C({k})")


def make_simplex_cone(n: int) -> ConeSpec:
    """Standard cone over the simplex with vertices 0, e_1, ..., e_n.

    Facets ``x_i >= 0`` lift to ``e_i``; the facet ``sum(x) <= 1`` lifts
    to ``-(e_1 + ... + e_n) + e_{n+1}``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    normals = [tuple(int(i == j) for i in range(n + 1)) for j in range(n)]
    normals.append(tuple([-1] * n + [1]))
    return ConeSpec(n + 1, tuple(normals), f"sphere S^{2 * n + 1}")


def make_square_cone() -> ConeSpec:
    return ConeSpec(3, ((1, 0, 0), (0, -1, 1), (0, 1, 0), (-1, 0, 1)), "C' (square)")


def make_orthant(dim: int) -> ConeSpec:
    return ConeSpec(dim, tuple(tuple(int(i == j) for i in range(dim)) for j in range(dim)), f"orthant R^{dim}")


def standard_cone(facets: Sequence) -> ConeSpec:
    """Standard cone over the polytope ``{x : <u, x> + c >= 0}``.

    ``facets`` is a list of ``(u, c)`` pairs with integer ``u`` and ``c``.
    """
    normals = tuple(tuple(u) + (c,) for u, c in facets)
    return ConeSpec(len(normals[0]), normals)
