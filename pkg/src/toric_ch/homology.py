"""Graded rank tables of cylindrical contact homology.

Every orbit of an even toric contact form has even degree, so the
differential vanishes and each rank is the number of orbits in that
degree.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .cone import GoodCone
from .cz import build_frame, degree, multiples_needed
from .invariants import chern_data
from .reeb import ReebVector


class ModulusError(ValueError):
    """Integer-graded tables need ``c_1 = 0``."""


@dataclass(frozen=True)
class RankTable:
    grading_modulus: int
    cutoff: int
    ranks: dict  # degree -> rank, nonzero entries only
    contributions: dict = field(default_factory=dict)  # (edge id, degree) -> count
    complete_up_to: int | None = None

    def __post_init__(self):
        if self.complete_up_to is None:
            object.__setattr__(self, "complete_up_to", self.cutoff)

    def rank(self, deg: int) -> int:
        return self.ranks.get(deg, 0)

    @property
    def negative_degrees(self) -> bool:
        return any(d < 0 for d in self.ranks)

    @property
    def edge_ids(self) -> list:
        return sorted({e for e, _ in self.contributions})

    def row(self, edge_id: int) -> dict:
        return {d: c for (e, d), c in self.contributions.items() if e == edge_id}

    def truncated(self, bound: int) -> "RankTable":
        """The part of the table in degrees ``<= bound``."""
        bound = min(bound, self.cutoff)
        return RankTable(
            self.grading_modulus,
            bound,
            {d: r for d, r in self.ranks.items() if d <= bound},
            {k: c for k, c in self.contributions.items() if k[1] <= bound},
            min(bound, self.complete_up_to),
        )

    def to_json(self) -> dict:
        lo = min([0] + list(self.ranks))
        return {
            "grading_modulus": self.grading_modulus,
            "cutoff": self.cutoff,
            "ranks": {str(d): self.rank(d) for d in range(lo, self.cutoff + 1)},
            "contributions": [
                {"edge": e, "degree": d, "count": c} for (e, d), c in sorted(self.contributions.items())
            ],
            "complete_up_to": self.complete_up_to,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RankTable":
        ranks = {int(d): r for d, r in data["ranks"].items() if r}
        contrib = {(c["edge"], c["degree"]): c["count"] for c in data.get("contributions", [])}
        return cls(data["grading_modulus"], data["cutoff"], ranks, contrib, data.get("complete_up_to"))

    def render(self, labels: dict | None = None) -> str:
        """Rows are edges, columns even degrees, with a final rank row."""
        lo = min([0] + list(self.ranks))
        lo -= lo % 2
        degs = list(range(lo, self.cutoff + 1, 2))
        labels = labels or {}
        head = ["deg"] + [str(d) for d in degs]
        rows = [head]
        for e in sorted(set(self.edge_ids) | set(labels)):
            r = self.row(e)
            rows.append([labels.get(e, f"edge {e}")] + [str(r[d]) if r.get(d) else "--" for d in degs])
        rows.append(["rank"] + [str(self.rank(d)) for d in degs])
        widths = [max(len(r[i]) for r in rows) for i in range(len(head))]
        lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
        if self.complete_up_to < self.cutoff:
            lines.append(f"(complete up to degree {self.complete_up_to})")
        return "\n".join(lines)


def chain_ranks(cone: GoodCone, reeb: ReebVector, cutoff_degree: int, n_max: int | None = None) -> RankTable:
    """Count orbits by degree, for every degree ``<= cutoff_degree``.

    The ``N``-th iterate on an edge of slope ``s`` has degree above
    ``2 N s - 2``, so the scan over ``N`` stops exactly where no later
    iterate can reach the cutoff.  With ``n_max`` the scan is capped, and
    ``complete_up_to`` drops to what the capped scan still certifies.
    """
    if cutoff_degree < 0:
        raise ValueError("cutoff must be nonnegative")
    c = chern_data(cone).chern_divisibility
    if c:
        raise ModulusError(f"c_1 does not vanish (grading only mod {2 * c}); use residue output")
    ranks = Counter()
    contrib = Counter()
    complete = cutoff_degree
    for edge in cone.edges:
        frame = build_frame(cone, reeb, edge)
        top = multiples_needed(frame, cutoff_degree)
        if n_max is not None and top > n_max:
            top = n_max
            complete = min(complete, math.floor(2 * (n_max + 1) * frame.slope - 2))
        for m in range(1, top + 1):
            deg = degree(frame, m)
            if deg <= cutoff_degree:
                ranks[deg] += 1
                contrib[(edge.id, deg)] += 1
    return RankTable(0, cutoff_degree, dict(ranks), dict(contrib), complete)


@dataclass(frozen=True)
class TableDiff:
    bound: int
    rank_diff: dict  # degree -> rank2 - rank1, nonzero only
    contribution_diff: dict  # (edge id, degree) -> count2 - count1, nonzero only

    @property
    def empty(self) -> bool:
        return not self.rank_diff and not self.contribution_diff

    @property
    def same_ranks(self) -> bool:
        return not self.rank_diff

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "rank_diff": {str(d): v for d, v in sorted(self.rank_diff.items())},
            "contribution_diff": [
                {"edge": e, "degree": d, "diff": v} for (e, d), v in sorted(self.contribution_diff.items())
            ],
        }


def compare_tables(t1: RankTable, t2: RankTable) -> TableDiff:
    """Differences ``t2 - t1`` up to the smaller certified degree."""
    if t1.grading_modulus != t2.grading_modulus:
        raise ModulusError(f"grading moduli differ: {t1.grading_modulus} vs {t2.grading_modulus}")
    bound = min(t1.complete_up_to, t2.complete_up_to)

    def diff(a: dict, b: dict, key) -> dict:
        out = {}
        for k in set(a) | set(b):
            if key(k) <= bound:
                v = b.get(k, 0) - a.get(k, 0)
                if v:
                    out[k] = v
        return out

    return TableDiff(
        bound,
        diff(t1.ranks, t2.ranks, lambda d: d),
        diff(t1.contributions, t2.contributions, lambda k: k[1]),
    )
