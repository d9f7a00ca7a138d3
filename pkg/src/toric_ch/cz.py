"""Per-edge Conley-Zehnder data and orbit degrees.

For an edge with active normals ``nu_{l_1}, ..., nu_{l_n}`` the Reeb
vector is decomposed as ``sum b_i nu_{l_i} + b * N * eta`` in a lattice
basis completed by ``eta``; ``N * eta`` is lifted to ``eta_lift`` in
``Z^d``.  The index of the ``N``-th iterate of the edge orbit is

    2 * (sum_i floor(N * b_i / b) + N * sum(eta_lift)) + n
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .cone import Edge, GoodCone
from .exact import IntMat, complete_to_unimodular, solve_dilated, solve_rational
from .invariants import chern_data
from .reeb import ReebVector


class DegenerateReeb(ValueError):
    """The Reeb vector lies in the span of an edge's normals (b == 0)."""


class DegenerateOrbit(ValueError):
    def __init__(self, edge: int, i: int, mult: int):
        super().__init__(f"orbit multiple N={mult} on edge {edge} is degenerate in coefficient {i}")
        self.edge, self.i, self.mult = edge, i, mult


class NonPositiveGrowth(ValueError):
    pass


class Residue(NamedTuple):
    value: int
    modulus: int

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


@dataclass(frozen=True)
class EdgeFrame:
    edge: Edge
    eta: tuple
    n_mult: int
    eta_lift: tuple
    b_coeffs: tuple
    b: Fraction
    lift_colsum: int
    n: int
    grading_modulus: int = 0

    @property
    def ratios(self) -> tuple:
        return tuple(bi / self.b for bi in self.b_coeffs)

    @property
    def slope(self) -> Fraction:
        """Asymptotic growth of ``cz_index(frame, N) / (2N)``."""
        return sum(self.ratios, Fraction(0)) + self.lift_colsum


@dataclass(frozen=True)
class OrbitIndex:
    edge_id: int
    multiple: int
    cz: int
    degree: object  # int, or Residue when c_1 does not vanish
    action: Fraction
    good: bool


def build_frame(
    cone: GoodCone,
    reeb: ReebVector,
    edge: Edge,
    eta: Sequence[int] | None = None,
    eta_lift: Sequence[int] | None = None,
) -> EdgeFrame:
    """Edge frame with ``b > 0``.

    ``eta`` defaults to the canonical basis completion; ``eta_lift`` to the
    reduced solution of ``beta @ x == N * eta``.  Both may be overridden to
    probe choice independence.
    """
    normals = [cone.normal(j) for j in edge.active]
    if eta is None:
        eta = complete_to_unimodular(normals)
    eta = tuple(eta)
    if abs(IntMat.from_columns(normals + [eta]).det()) != 1:
        raise ValueError(f"{eta} does not complete the normals of edge {edge.id} to a basis")
    n_mult, lift = solve_dilated(cone.beta, eta)
    if eta_lift is not None:
        lift = tuple(eta_lift)
        if cone.beta @ lift != tuple(n_mult * x for x in eta):
            raise ValueError("eta_lift does not map to N * eta")

    coeffs = solve_rational(normals + [tuple(n_mult * x for x in eta)], reeb.nu)
    b = coeffs[-1]
    if b == 0:
        raise DegenerateReeb(f"Reeb vector lies in the span of the normals of edge {edge.id}")
    if b < 0:
        eta = tuple(-x for x in eta)
        lift = tuple(-x for x in lift)
        b = -b
    return EdgeFrame(
        edge=edge,
        eta=eta,
        n_mult=n_mult,
        eta_lift=lift,
        b_coeffs=tuple(coeffs[:-1]),
        b=b,
        lift_colsum=sum(lift),
        n=cone.n,
        grading_modulus=chern_data(cone).grading_modulus,
    )


def build_frames(cone: GoodCone, reeb: ReebVector) -> list:
    return [build_frame(cone, reeb, e) for e in cone.edges]


def multiples_needed(frame: EdgeFrame, cutoff: int) -> int:
    """Largest ``N`` whose degree can still be ``<= cutoff``.

    Each floor loses less than one, so ``degree(N) > 2 * N * slope - 2``;
    iterates with ``2 * N * slope - 2 >= cutoff`` are all above the cutoff.
    """
    s = frame.slope
    if s <= 0:
        raise NonPositiveGrowth(f"edge {frame.edge.id} has non-positive index growth {s}")
    bound = Fraction(cutoff + 2, 2) / s
    return math.ceil(bound) - 1


def cz_index(frame: EdgeFrame, mult: int) -> int:
    if mult < 1:
        raise ValueError("multiple must be positive")
    total = 0
    for i, r in enumerate(frame.ratios):
        x = mult * r
        if r == 0 or x.denominator == 1:
            raise DegenerateOrbit(frame.edge.id, i, mult)
        total += math.floor(x)
    return 2 * (total + mult * frame.lift_colsum) + frame.n


def degree(frame: EdgeFrame, mult: int):
    """Contact homology degree; a :class:`Residue` mod ``2c`` when ``c != 0``."""
    value = cz_index(frame, mult) + frame.n - 2
    if frame.grading_modulus:
        return Residue(value % frame.grading_modulus, frame.grading_modulus)
    return value


def is_good(frame: EdgeFrame, mult: int) -> bool:
    """Bad orbits are even iterates of orbits whose odd and even iterates differ in parity."""
    if mult % 2:
        return True
    return (cz_index(frame, 1) - cz_index(frame, 2)) % 2 == 0


def orbit_table(cone: GoodCone, reeb: ReebVector, edge: Edge, n_max: int) -> list:
    frame = build_frame(cone, reeb, edge)
    return [
        OrbitIndex(
            edge_id=edge.id,
            multiple=m,
            cz=cz_index(frame, m),
            degree=degree(frame, m),
            action=Fraction(m) / frame.b,
            good=is_good(frame, m),
        )
        for m in range(1, n_max + 1)
    ]
