"""B_r-sets of integers: verification and extraction from subspaces.

A set S of residues (or plain integers, modulus None) is a B_r-set when
all r-fold sums of its elements, with repetition, are pairwise distinct.
Subspaces with the r-fold product-injectivity property hand over such sets
through discrete logs of their projective points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError
from .field import DiscreteLogTable, FieldElement
from .sidon import DEFAULT_BUDGET, is_r_sidon
from .subspace import Subspace

_CHUNK = 1 << 15


@dataclass(frozen=True)
class BrSet:
    """A verified (or merely proposed) B_r-set."""

    elements: tuple[int, ...]
    modulus: int | None
    r: int
    verified: bool

    @property
    def size(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "modulus": self.modulus,
            "r": self.r,
            "verified": self.verified,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BrSet":
        return cls(
            elements=tuple(int(x) for x in d["elements"]),
            modulus=None if d.get("modulus") is None else int(d["modulus"]),
            r=int(d["r"]),
            verified=bool(d.get("verified", False)),
        )


def is_br_set(S, r: int, modulus: int | None = None, budget: int = DEFAULT_BUDGET):
    """Check the r-fold sum distinctness of S, by full enumeration.

    Returns (True, None) or (False, witness) with witness holding the two
    colliding multisets and their common sum. Raises BudgetError when the
    number of multisets C(|S|+r-1, r) exceeds the budget.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    elems = sorted({int(x) for x in S})
    if modulus is not None:
        if modulus < 1:
            raise ValueError("modulus must be positive")
        elems = sorted({x % modulus for x in elems})
    N = len(elems)
    if N == 0:
        return True, None
    total = math.comb(N + r - 1, r)
    if total > budget:
        raise BudgetError(
            f"{total} multisets exceed the budget of {budget}", required=total
        )
    if elems and elems[-1] * r >= 2**62:
        raise ValueError("elements too large for int64 sum enumeration")
    E = np.asarray(elems, dtype=np.int64)
    seen: dict[int, tuple[int, ...]] = {}
    it = itertools.combinations_with_replacement(range(N), r)
    while True:
        chunk = list(itertools.islice(it, _CHUNK))
        if not chunk:
            break
        idx = np.asarray(chunk, dtype=np.int64)
        sums = E[idx].sum(axis=1)
        if modulus is not None:
            sums %= modulus
        for row, s in zip(chunk, sums.tolist()):
            prev = seen.get(s)
            if prev is None:
                seen[s] = row
            elif prev != row:
                wa = tuple(elems[i] for i in prev)
                wb = tuple(elems[i] for i in row)
                return False, {"sum": int(s), "multiset_a": wa, "multiset_b": wb}
    return True, None


def discrete_log(x: FieldElement, gamma: FieldElement, table: DiscreteLogTable | None = None) -> int:
    """Discrete log of x to base gamma (building a one-off table if needed)."""
    if table is None:
        table = DiscreteLogTable(gamma)
    elif table.base != gamma:
        raise ValueError("table was built for a different base")
    return table.log(x)


def _check_primitive(gamma: FieldElement) -> None:
    ctx = gamma.ctx
    if gamma.is_zero():
        raise ValueError("gamma must be nonzero")
    N = ctx.order - 1
    for ell in ctx.group_factorization():
        if (ctx.pow_elem(gamma.vec, N // ell) == ctx.one_vec).all():
            raise ValueError(f"gamma is not primitive (order divides (q^n-1)/{ell})")


def extract_brset(
    V: Subspace,
    r: int,
    gamma: FieldElement,
    *,
    assume_r_sidon: bool = False,
    translate: bool = True,
    verify: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> BrSet:
    """Discrete-log image of V's projective points, a B_r-set mod (q^n-1)/(q-1).

    gamma must be primitive (checked via the factorization of q^n - 1). The
    r-fold product-injectivity of V is checked by enumeration unless
    assume_r_sidon marks it as already established by the caller. With
    translate, the set is shifted so its minimum is 0. With verify, the
    extracted set is re-checked as a B_r-set by sum enumeration.
    """
    ctx = V.ctx
    if gamma.ctx != ctx:
        raise ValueError("gamma lives in a different field")
    _check_primitive(gamma)
    if not assume_r_sidon:
        report = is_r_sidon(V, r, budget=budget)
        if not report.verdict:
            raise ValueError(f"V is not {r}-fold product-injective: {report.witness}")
    M = (ctx.order - 1) // (ctx.q - 1)
    table = DiscreteLogTable(gamma)
    pts = V.projective_points()
    logs = sorted(table.log(FieldElement(ctx, v)) % M for v in pts)
    if len(set(logs)) != len(logs):
        raise ValueError("projective points mapped to colliding residues")
    expected = (ctx.q**V.dim - 1) // (ctx.q - 1)
    if len(logs) != expected:
        raise ValueError(f"extracted {len(logs)} residues, expected {expected}")
    if translate:
        m0 = logs[0]
        logs = [(x - m0) % M for x in logs]
        logs.sort()
    verified = False
    if verify:
        ok, witness = is_br_set(logs, r, modulus=M, budget=budget)
        if not ok:
            raise ValueError(f"extracted set fails the B_{r} check: {witness}")
        verified = True
    return BrSet(elements=tuple(logs), modulus=M, r=r, verified=verified)
