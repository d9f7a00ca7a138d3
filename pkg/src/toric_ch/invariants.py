"""Fundamental group and first Chern class data of a good cone."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cone import GoodCone
from .exact import kernel_lattice_basis, snf


class RankDeficient(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    invariant_factors: tuple
    free_rank: int = 0

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        return math.prod(self.invariant_factors)

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.invariant_factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"


@dataclass(frozen=True)
class KernelData:
    basis: tuple
    column_sums: tuple
    chern_divisibility: int

    @property
    def c1_vanishes(self) -> bool:
        return self.chern_divisibility == 0

    @property
    def grading_modulus(self) -> int:
        return 2 * self.chern_divisibility


def fundamental_group(cone: GoodCone) -> AbelianGroup:
    """``Z^{n+1}`` modulo the sublattice generated by the facet normals."""
    res = snf(cone.beta)
    free = cone.beta.nrows - res.rank
    if free:
        raise RankDeficient(f"normals span a sublattice of corank {free}")
    return AbelianGroup(tuple(x for x in res.diag if x > 1), free)


def chern_data(cone: GoodCone) -> KernelData:
    """Kernel lattice of beta with column sums; c = 0 iff c_1 vanishes."""
    basis = kernel_lattice_basis(cone.beta)
    sums = tuple(sum(k) for k in basis)
    c = 0
    for s in sums:
        c = math.gcd(c, s)
    return KernelData(tuple(basis), sums, c)
