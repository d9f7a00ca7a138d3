"""Independent cross-checks: slice-vertex edges, choice-invariance probes,
closed-form answers and random good cones."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cone import ConeSpec, GoodCone, GoodnessError, InvalidCone, make_ck, make_simplex_cone, make_square_cone, validate_good
from .cz import DegenerateOrbit, build_frame, degree
from .exact import IntMat, kernel_lattice_basis, rational_rank
from .homology import RankTable
from .reeb import ReebVector


class NoPositiveFunctional(ValueError):
    pass


@dataclass(frozen=True)
class SliceVertex:
    coords: tuple
    active: frozenset


def _gauss(rows: list, rhs: list):
    """Unique rational solution of a square system, or None if singular."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(rows, rhs)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return None
        m[k], m[piv] = m[piv], m[k]
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / m[k][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    x = [Fraction(0)] * n
    for k in reversed(range(n)):
        s = m[k][n] - sum(m[k][j] * x[j] for j in range(k + 1, n))
        x[k] = s / m[k][k]
    return tuple(x)


def slice_vertices(spec: ConeSpec) -> list:
    """Vertices of the cross-section ``{<x, nu_j> >= 0, <x, w> = 1}``, ``w = sum nu_j``.

    ``w`` is positive on the cone minus the apex as soon as the normals
    span; every vertex is a basic solution with ``n`` tight facets.
    """
    if rational_rank(spec.normals) < spec.ambient_dim:
        raise NoPositiveFunctional("normals do not span; the cone is not pointed")
    w = [sum(col) for col in zip(*spec.normals)]
    found = {}
    for sub in combinations(range(spec.d), spec.n):
        rows = [spec.normals[j] for j in sub] + [w]
        x = _gauss(rows, [0] * spec.n + [1])
        if x is None:
            continue
        vals = [sum(a * b for a, b in zip(x, nu)) for nu in spec.normals]
        if any(v < 0 for v in vals):
            continue
        active = frozenset(j for j, v in enumerate(vals) if v == 0)
        found.setdefault(x, SliceVertex(x, active))
    return sorted(found.values(), key=lambda v: sorted(v.active))


def edges_via_slice(spec: ConeSpec) -> list:
    return sorted(tuple(sorted(v.active)) for v in slice_vertices(spec))


def _degrees(frame, n_range):
    out = []
    for m in n_range:
        try:
            out.append(degree(frame, m))
        except DegenerateOrbit:
            out.append(None)
    return out


def degree_invariance_probe(
    cone: GoodCone, reeb: ReebVector, edge, trials: int, seed: int, n_top: int = 20
) -> bool:
    """Recompute degrees with random alternative completions and lifts.

    Each trial replaces ``eta`` by ``+-(eta + sum m_i nu_{l_i})`` with
    ``|m_i| <= 10`` and shifts the lift by the matching vector plus a
    random kernel element.  Degrees (residues when ``c != 0``) for
    ``N = 1..n_top`` must not move.
    """
    rng = random.Random(f"probe:{seed}:{edge.id}")
    base = build_frame(cone, reeb, edge)
    ref = _degrees(base, range(1, n_top + 1))
    kernel = kernel_lattice_basis(cone.beta)
    for _ in range(trials):
        ms = [rng.randint(-10, 10) for _ in edge.active]
        eta = list(base.eta)
        lift = list(base.eta_lift)
        for m, j in zip(ms, edge.active):
            nu = cone.normal(j)
            for r in range(len(eta)):
                eta[r] += m * nu[r]
            lift[j] += base.n_mult * m
        for kvec in kernel:
            t = rng.randint(-5, 5)
            for r in range(len(lift)):
                lift[r] += t * kvec[r]
        if rng.random() < 0.5:
            eta = [-x for x in eta]
            lift = [-x for x in lift]
        alt = build_frame(cone, reeb, edge, eta=eta, eta_lift=lift)
        if _degrees(alt, range(1, n_top + 1)) != ref:
            return False
    return True


def sphere_closed_form(n: int, cutoff: int) -> RankTable:
    """Rank one in each even degree from ``2n`` on."""
    if n < 1:
        raise ValueError("n must be positive")
    return RankTable(0, cutoff, {d: 1 for d in range(2 * n, cutoff + 1, 2)}, {}, cutoff)


# ---------------------------------------------------------------------------
# random good cones
# ---------------------------------------------------------------------------


def random_unimodular(dim: int, rng: random.Random, steps: int = 8) -> IntMat:
    m = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for _ in range(steps):
        i, j = rng.sample(range(dim), 2)
        t = rng.choice((-2, -1, 1, 2))
        m[i] = [a + t * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0] = [-x for x in m[0]]
    return IntMat(m)


def _seed_cones(dim: int, rng: random.Random) -> ConeSpec:
    if dim == 2:
        while True:
            p = rng.randint(1, 7)
            q = rng.randint(-7, 7)
            try:
                return ConeSpec(2, ((0, 1), (p, q)))
            except InvalidCone:
                continue
    if dim == 3:
        choice = rng.randrange(3)
        if choice == 0:
            return make_ck(rng.randint(0, 4))
        if choice == 1:
            return make_square_cone()
        return make_simplex_cone(2)
    return make_simplex_cone(dim - 1) if rng.random() < 0.5 else _product_cone(dim)


def _product_cone(dim: int) -> ConeSpec:
    """Standard cone over a product of a segment with a simplex."""
    n = dim - 1
    normals = [tuple(int(i == j) for i in range(dim)) for j in range(n)]
    normals.append(tuple([-1] + [0] * (n - 1) + [1]))
    normals.append(tuple([0] + [-1] * (n - 1) + [1]))
    return ConeSpec(dim, tuple(normals))


def random_good_cone(dim: int, rng: random.Random, tries: int = 40) -> GoodCone:
    """A validated good cone in ``Z^dim`` (``2 <= dim <= 4``).

    Random normals are tried first, with rejection on any goodness
    failure; otherwise a random unimodular image of a standard family is
    returned.
    """
    if not 2 <= dim <= 4:
        raise ValueError("dimension must be 2, 3 or 4")
    for _ in range(tries):
        d = rng.randint(dim, dim + 2)
        normals = tuple(tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(d))
        try:
            return validate_good(ConeSpec(dim, normals))
        except (InvalidCone, GoodnessError):
            continue
    while True:
        spec = _seed_cones(dim, rng).transformed(random_unimodular(dim, rng))
        try:
            return validate_good(spec)
        except GoodnessError:
            continue
