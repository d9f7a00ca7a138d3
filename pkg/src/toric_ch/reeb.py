"""Reeb vectors: admissibility, generic generation, nondegeneracy screening."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cone import GoodCone
from .exact import Infeasible, positive_combination


class GenerationFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class Provenance:
    kind: str  # "user", "near" or "normal"
    target: tuple | None = None
    seed: int | None = None
    attempt: int | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.target is not None:
            out["target"] = [str(x) for x in self.target]
        if self.seed is not None:
            out["seed"] = self.seed
        if self.attempt is not None:
            out["attempt"] = self.attempt
        return out


USER = Provenance("user")


@dataclass(frozen=True)
class ReebVector:
    nu: tuple
    witness: tuple
    provenance: Provenance = USER

    def scaled(self, lam) -> "ReebVector":
        lam = Fraction(lam)
        if lam <= 0:
            raise ValueError("scale must be positive")
        return ReebVector(
            tuple(lam * x for x in self.nu), tuple(lam * x for x in self.witness), self.provenance
        )


@dataclass(frozen=True)
class GenericityReport:
    n_max: int
    degenerate_hits: tuple  # (edge id, coefficient index, multiple)
    zero_coeffs: tuple  # (edge id, coefficient index)

    @property
    def clean(self) -> bool:
        return not self.degenerate_hits and not self.zero_coeffs


def check_admissible(cone: GoodCone, nu: Sequence, provenance: Provenance = USER) -> ReebVector:
    """Wrap ``nu`` as a Reeb vector, or raise :class:`Infeasible`."""
    nu = tuple(Fraction(x) for x in nu)
    if len(nu) != cone.spec.ambient_dim:
        raise ValueError(f"Reeb vector must have {cone.spec.ambient_dim} entries")
    witness = positive_combination(cone.beta, nu)
    return ReebVector(nu, witness, provenance)


def nondegenerate_up_to(
    cone: GoodCone, reeb: ReebVector, n_max: int, cutoff_degree: int | None = None
) -> GenericityReport:
    """Flag every ``N <= n_max`` with ``N * b_i / b`` integral, and every ``b_i == 0``.

    With ``cutoff_degree`` each edge is only screened over the iterates
    whose degree can reach ``cutoff_degree`` (still capped by ``n_max``).
    """
    from .cz import build_frame, multiples_needed

    hits = []
    zeros = []
    for edge in cone.edges:
        frame = build_frame(cone, reeb, edge)
        top = n_max
        if cutoff_degree is not None:
            top = min(n_max, multiples_needed(frame, cutoff_degree))
        for i, bi in enumerate(frame.b_coeffs):
            if bi == 0:
                zeros.append((edge.id, i))
                continue
            q = (bi / frame.b).denominator
            hits.extend((edge.id, i, m) for m in range(q, top + 1, q))
    return GenericityReport(n_max, tuple(sorted(hits)), tuple(zeros))


def _primes(lo: int, count: int) -> list:
    out = []
    p = max(lo, 2)
    while len(out) < count:
        if all(p % q for q in range(2, int(p**0.5) + 1)):
            out.append(p)
        p += 1
    return out


def _parse_signs(signs, dim: int, rng: random.Random) -> list:
    pattern = list(signs or [])
    out = []
    for i in range(dim):
        s = pattern[i] if i < len(pattern) else "*"
        if s in ("+", 1, "+1"):
            out.append(1)
        elif s in ("-", -1, "-1"):
            out.append(-1)
        elif s in ("*", None, "?"):
            out.append(rng.choice((-1, 1)))
        else:
            raise ValueError(f"bad sign {s!r}")
    return out


MAX_ATTEMPTS = 64
MAX_HALVINGS = 12


def generate_generic(
    cone: GoodCone,
    target: Sequence,
    n_max: int,
    seed: int = 0,
    signs: Sequence | None = None,
    min_prime: int = 101,
    cutoff_degree: int | None = None,
) -> ReebVector:
    """Admissible, screened perturbation ``target + sum(s_i / p_i e_i)``.

    Signs not fixed by ``signs`` (``'*'`` or missing) and the distinct primes
    ``p_i >= min_prime`` are drawn from ``seed``.  Each draw is tried at
    scales ``1, 1/2, 1/4, ...`` before a fresh draw is made.  The screen
    is restricted as in :func:`nondegenerate_up_to` when ``cutoff_degree``
    is given.
    """
    dim = cone.spec.ambient_dim
    target = tuple(Fraction(x) for x in target)
    if len(target) != dim:
        raise ValueError(f"target must have {dim} entries")
    pool = _primes(min_prime, 8 * dim)
    for attempt in range(MAX_ATTEMPTS):
        rng = random.Random(f"{seed}:{attempt}")
        sg = _parse_signs(signs, dim, rng)
        ps = rng.sample(pool, dim)
        for h in range(MAX_HALVINGS):
            scale = Fraction(1, 2**h)
            nu = tuple(t + scale * Fraction(s, p) for t, s, p in zip(target, sg, ps))
            try:
                reeb = check_admissible(cone, nu, Provenance("near", target, seed, attempt))
            except Infeasible:
                continue
            if _is_clean(cone, reeb, n_max, cutoff_degree):
                return reeb
    raise GenerationFailed(f"no admissible generic perturbation of {[str(x) for x in target]} found")


def generate_near_normal(
    cone: GoodCone,
    j: int,
    n_max: int,
    seed: int = 0,
    min_prime: int = 101,
    cutoff_degree: int | None = None,
) -> ReebVector:
    """Reeb vector ``nu_j + sum_{i != j} nu_i / p_i`` close to the normal ``nu_j``.

    The primes are distinct and drawn from ``[min_prime, 2 * min_prime)``,
    so the small coefficients stay within a factor two of each other.
    """
    d = cone.d
    if not 0 <= j < d:
        raise ValueError(f"facet index {j} out of range")
    pool = [p for p in _primes(min_prime, 4 * d + 16) if p < 2 * min_prime]
    if len(pool) < d - 1:
        pool = _primes(min_prime, d - 1)
    for attempt in range(MAX_ATTEMPTS):
        rng = random.Random(f"normal:{seed}:{attempt}")
        ps = iter(rng.sample(pool, d - 1))
        a = tuple(Fraction(1) if i == j else Fraction(1, next(ps)) for i in range(d))
        nu = tuple(sum(a[i] * cone.beta[r, i] for i in range(d)) for r in range(cone.beta.nrows))
        reeb = ReebVector(nu, a, Provenance("normal", cone.normal(j), seed, attempt))
        if _is_clean(cone, reeb, n_max, cutoff_degree):
            return reeb
    raise GenerationFailed(f"no generic Reeb vector near normal {j} found")


def _is_clean(cone, reeb, n_max, cutoff_degree=None) -> bool:
    from .cz import DegenerateReeb, NonPositiveGrowth

    try:
        return nondegenerate_up_to(cone, reeb, n_max, cutoff_degree).clean
    except (DegenerateReeb, NonPositiveGrowth):
        return False
